"""Exit criteria.  Each test prints one PASS/FAIL line (visible with -s)."""

import numpy as np

from conftest import FINITE_CASES, NONCOMPACT_CASES
from deformed_cs import (
    AlgebraSpec, OperatorMatrix, aocs, build_lowest_weight_rep,
    casimir_lowest_weight, commutator_residual, conjugate_raising,
    dual_conjugate, expectation, map_to_lie, matrix_exponential,
    oscillator_realization, perelomov_cs, solve_alpha, structure_f,
    structure_g,
)
from deformed_cs.algebra import default_probe_grid
from deformed_cs.cli import main
from deformed_cs.coherent import make_state
from deformed_cs.tables import read_table
from deformed_cs.verify import f_identity_residual


def verdict(number, ok, detail):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    assert ok, detail


def test_1_paper_constants():
    su11 = AlgebraSpec.su11()
    c = casimir_lowest_weight(su11, 0.25)
    a_even, a_odd = solve_alpha(su11, 0.25), solve_alpha(su11, 0.75)
    rep = oscillator_realization("even", 32)
    vac_h = expectation(make_state(rep, "perelomov", 0.0), rep.H)
    ok = c == 3 / 16 and a_even == 3 / 4 and a_odd == 1 / 4 and vac_h == 0.25
    verdict(1, ok, f"C|0>={float(c)!r}, alpha={a_even!r}/{a_odd!r}, <H>_vac={vac_h.real!r}")


def test_2_oscillator_oracle():
    worst = 0.0
    for sector, h0 in (("even", 0.25), ("odd", 0.75)):
        osc = oscillator_realization(sector, 64)
        abstract = build_lowest_weight_rep(AlgebraSpec.su11(), h0, 32)
        assert osc.dim == abstract.dim == 32 and osc.h0 == h0
        k = abstract.Eplus.trust_rows
        for x, y in ((osc.H, abstract.H), (osc.Eplus, abstract.Eplus),
                     (osc.Eminus, abstract.Eminus)):
            worst = max(worst, np.abs(x.entries[:k, :k] - y.entries[:k, :k]).max())
    verdict(2, worst <= 1e-12, f"max entry deviation {worst:.2e} (tol 1e-12), dim 32")


def bracket_residuals(spec, h0, dim=64):
    rep = build_lowest_weight_rep(spec, h0, dim)
    k = rep.trust
    out = {
        "[H,E+]": commutator_residual(rep.H, rep.Eplus, rep.Eplus, k),
        "[H,E-]": commutator_residual(rep.H, rep.Eminus, -rep.Eminus, k),
        "[E+,E-]": commutator_residual(
            rep.Eplus, rep.Eminus,
            OperatorMatrix.diagonal(structure_f(spec, rep.weights)), k),
    }
    if not rep.is_finite:
        pair = conjugate_raising(rep)
        eye = rep.identity()
        out["[E-,Et+]"] = commutator_residual(rep.Eminus, pair.Etilde_plus, eye, k)
        out["[Et+^dag,E+]"] = commutator_residual(dual_conjugate(pair), rep.Eplus, eye, k)
    for b in (1, -1):
        lm = map_to_lie(rep, b)
        out[f"[E+,Eb-] b={b:+d}"] = commutator_residual(rep.Eplus, lm.Ebar_minus,
                                                         lm.target(), k)
    return rep, out


def test_3_bracket_suite():
    grid = NONCOMPACT_CASES + FINITE_CASES
    assert len(grid) >= 12
    worst, where, n_conj = 0.0, "", 0
    for spec, h0 in grid:
        rep, res = bracket_residuals(spec, h0)
        n_conj += "[E-,Et+]" in res
        for name, value in res.items():
            if value > worst:
                worst, where = value, f"{name} @ {rep.describe()}"
    verdict(3, worst <= 1e-10,
            f"{len(grid)} combos ({n_conj} noncompact), max residual {worst:.2e} "
            f"at {where} (tol 1e-10)")


def test_4_aocs_eigenproperty():
    cases = {
        "su11": (AlgebraSpec.su11(), 0.25),
        "quadratic": (AlgebraSpec.quadratic(-3.0), 1.0),
        "higgs": (AlgebraSpec.higgs(-1.0, -0.05), 1.0),
        # exact 81-dim unitary rep, truncated to 64: F has no pole in the window
        "qdeformed": (AlgebraSpec.qdeformed(1.05), -40.0),
    }
    worst_eig = worst_ser = 0.0
    for spec, h0 in cases.values():
        rep = build_lowest_weight_rep(spec, h0, 64)
        pair = conjugate_raising(rep)
        for beta in (0.5, 1.0 + 0.5j, -2.0j):
            st = aocs(pair, beta)
            assert st.tail_mass <= 1e-8
            v = st.coeffs
            nrm = np.linalg.norm(v)
            eig = np.linalg.norm((rep.Eminus.entries @ v - beta * v)[:-1]) / nrm
            oracle = matrix_exponential(beta * pair.Etilde_plus).entries[:, 0]
            worst_eig = max(worst_eig, eig)
            worst_ser = max(worst_ser, np.linalg.norm(v - oracle) / nrm)
    verdict(4, worst_eig <= 1e-7 and worst_ser <= 1e-10,
            f"4 algebras: eigen residual {worst_eig:.2e} (tol 1e-7), "
            f"series vs expm {worst_ser:.2e} (tol 1e-10)")


def test_5_perelomov_unitarity():
    norm_dev = 0.0
    for spec, h0 in FINITE_CASES:
        rep = build_lowest_weight_rep(spec, h0, 64)
        for xi in (0.5, 1.2 - 0.4j):
            norm_dev = max(norm_dev, abs(perelomov_cs(rep, xi).norm - 1.0))
    ratios, udev = [], 0.0
    for xi in (0.5, 0.3 + 0.3j):
        d = []
        for dim in (64, 128):
            rep = build_lowest_weight_rep(AlgebraSpec.su11(), 0.25, dim)
            d.append(perelomov_cs(rep, xi).defect)
            U = matrix_exponential(xi * rep.Eplus - np.conj(xi) * rep.Eminus).entries
            udev = max(udev, np.abs(U.conj().T @ U - np.eye(dim)).max())
        ratios.append(d[0] / max(d[1], np.finfo(float).tiny))
    ok = norm_dev <= 1e-12 and min(ratios) >= 10
    verdict(5, ok, f"finite |U|vac>| - 1 = {norm_dev:.1e} (tol 1e-12); defect ratio "
                   f"64->128 min {min(ratios):.2e} (need >= 10); ||U^dag U - I|| {udev:.1e}")


def _elements(spec, h0, dim):
    return np.diag(build_lowest_weight_rep(spec, h0, dim).Eplus.entries, -1).real


def test_6_limit_reductions():
    ref = _elements(AlgebraSpec.quadratic(0.0), -2.0, 5)
    seqs = {
        "quadratic a->0": [np.abs(_elements(AlgebraSpec.quadratic(a), -2.0, 5)[:3]
                                  - ref[:3]).max() for a in (-0.1, -0.01, -0.001)],
        "higgs h->0": [np.abs(_elements(AlgebraSpec.higgs(1.0, hp), -2.0, 5) - ref).max()
                       for hp in (0.1, 0.01, 0.001)],
        "qdeformed q->1+": [np.abs(_elements(AlgebraSpec.qdeformed(q), -2.0, 5)
                                   - ref / np.sqrt(2)).max() for q in (1.5, 1.25, 1.1)],
    }
    ok = all(s[0] > s[1] > s[2] for s in seqs.values())
    detail = "; ".join(f"{k}: " + " > ".join(f"{x:.1e}" for x in s) for k, s in seqs.items())
    verdict(6, ok, detail)


def test_7_scalar_identities():
    h = default_probe_grid()
    cases = [(AlgebraSpec.su11(), 0.25), (AlgebraSpec.quadratic(-3.0), 1.0),
             (AlgebraSpec.higgs(-1.0, -0.05), 1.0), (AlgebraSpec.qdeformed(1.5), -2.0),
             (AlgebraSpec.qdeformed(1.05), -40.0)]
    worst_fg = worst_F = 0.0
    for spec, h0 in cases:
        dev = np.abs(structure_f(spec, h) - (structure_g(spec, h) - structure_g(spec, h - 1)))
        worst_fg = max(worst_fg, dev.max())
        c = casimir_lowest_weight(spec, h0)
        worst_F = max(worst_F, f_identity_residual(spec, c, solve_alpha(spec, h0), h))
    verdict(7, worst_fg <= 1e-10 and worst_F <= 1e-10,
            f"f = g(h)-g(h-1): {worst_fg:.1e}; F telescoping: {worst_F:.1e} (tol 1e-10)")


def test_8_cli_contract(tmp_path):
    out = tmp_path / "report.csv"
    ok_check = main(["check", "--algebra", "su11", "--h0", "0.25", "--dim", "64",
                     "--out", str(out)]) == 0
    ok_q = main(["check", "--algebra", "qdeformed", "--q", "1"]) == 2
    trips = []
    for fmt in ("csv", "json"):
        state = tmp_path / f"state.{fmt}"
        main(["state", "--algebra", "su11", "--h0", "0.25", "--dim", "32", "--family",
              "aocs", "--param", "0.5+0.2i", "--format", fmt, "--out", str(state)])
        meta, cols, rows = read_table(state.read_text())
        rep = build_lowest_weight_rep(AlgebraSpec.su11(), 0.25, 32)
        v = aocs(conjugate_raising(rep), 0.5 + 0.2j).coeffs
        trips.append(all(r["coeff_re"] == v[n].real and r["coeff_im"] == v[n].imag
                         for n, r in enumerate(rows)))
    meta, cols, rows = read_table(out.read_text())
    trips.append(meta["overall_pass"] is True and len(rows) > 10)
    verdict(8, ok_check and ok_q and all(trips),
            f"check su11 exit 0: {ok_check}; q=1 exit 2: {ok_q}; round-trip: {trips}")
