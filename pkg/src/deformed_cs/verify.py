"""Residual checks over a representation and its derived operators.

All bracket residuals are max-entry norms restricted to the trusted leading
block.  Tolerances passed to :func:`run_suite` are absolute for operators of
unit scale and grow linearly with the magnitude of the products involved,
since double precision cannot resolve ``1e-10`` absolutely once entries pass
``~1e5``.
"""

from __future__ import annotations

import numpy as np

from .algebra import AlgebraSpec, check_fg_consistency, default_probe_grid, structure_f, structure_g
from .coherent import (
    TAIL_CEILING, aocs, dual_cs, matrix_exponential, perelomov_cs,
)
from .conjugate import (
    conjugate_raising, dual_conjugate, map_to_lie, solve_alpha,
)
from .errors import DeformedAlgebraError, DimensionMismatch
from .report import VerificationReport
from .representation import OperatorMatrix, build_lowest_weight_rep, casimir_matrix

EPSILON_PROBES = (0.0, 1.0, -2.5)


def _entries(op):
    return op.entries if isinstance(op, OperatorMatrix) else np.asarray(op)


def _default_trust(A, B):
    if isinstance(A, OperatorMatrix) and isinstance(B, OperatorMatrix):
        return max(0, A.dim - A.boundary - B.boundary)
    return _entries(A).shape[0]


def commutator_residual(A, B, target, trust=None, start=0):
    """Max-entry norm of ``AB - BA - target`` on the block ``[start:trust]``.

    ``trust`` defaults to the trust boundary of the product ``AB``.
    """
    a, b, t = _entries(A), _entries(B), _entries(target)
    if not a.shape == b.shape == t.shape:
        raise DimensionMismatch(f"shapes {a.shape}, {b.shape}, {t.shape}")
    k = _default_trust(A, B) if trust is None else int(trust)
    if k > a.shape[0]:
        raise ValueError(f"trust {k} exceeds dim {a.shape[0]}")
    blk = slice(start, k)
    diff = (a @ b - b @ a - t)[blk, blk]
    return float(np.max(np.abs(diff), initial=0.0))


def commutator_scale(A, B, trust=None, start=0):
    """Largest entry of ``AB`` or ``BA`` on the checked block."""
    a, b = _entries(A), _entries(B)
    k = _default_trust(A, B) if trust is None else int(trust)
    blk = slice(start, k)
    return float(max(np.max(np.abs((a @ b)[blk, blk]), initial=0.0),
                     np.max(np.abs((b @ a)[blk, blk]), initial=0.0)))


def _scaled(tol, scale):
    return tol * max(1.0, scale)


def _bracket(report, name, A, B, target, tol, ctx, trust=None, start=0):
    res = commutator_residual(A, B, target, trust, start)
    scale = commutator_scale(A, B, trust, start)
    return report.add(name, res, _scaled(tol, scale), ctx)


def f_identity_residual(spec: AlgebraSpec, c, alpha, h_values=None):
    """``F(c,h)(c - g(h)) - F(c,h-1)(c - g(h-1)) - 1`` over a weight grid.

    Weights where ``c - g`` vanishes (F has a pole) are skipped.
    """
    h = default_probe_grid() if h_values is None else np.asarray(h_values, float)
    d0 = c - structure_g(spec, h)
    d1 = c - structure_g(spec, h - 1.0)
    ok = (np.abs(d0) > 1e-12) & (np.abs(d1) > 1e-12)
    h, d0, d1 = h[ok], d0[ok], d1[ok]
    lhs = (h + alpha) / d0 * d0 - (h - 1.0 + alpha) / d1 * d1
    return float(np.max(np.abs(lhs - 1.0), initial=0.0))


def rep_checks(rep, tol=1e-10) -> VerificationReport:
    report = VerificationReport()
    ctx = rep.describe()
    H, Ep, Em = rep.H, rep.Eplus, rep.Eminus
    _bracket(report, "bracket.H_Eplus", H, Ep, Ep, tol, ctx)
    _bracket(report, "bracket.H_Eminus", H, Em, -Em, tol, ctx)
    fH = rep.diag_function(structure_f(rep.spec, rep.weights))
    _bracket(report, "bracket.Eplus_Eminus", Ep, Em, fH, tol, ctx)
    report.add("hermiticity", float(np.max(np.abs(Em.entries - Ep.entries.conj().T))),
               0.0, ctx)
    C = casimir_matrix(rep)
    k = rep.trust
    # C is a small difference of E-E+ and g(H); measure against their size
    scale = float(np.abs(structure_g(rep.spec, rep.weights[:k])).max())
    dev = np.abs(C.entries[:k, :k] - rep.c * np.eye(k))
    report.add("casimir.constant", float(dev.max()), _scaled(tol, scale), ctx)
    worst = 0.0
    for gen in (H, Ep, Em):
        trust = max(0, rep.dim - C.boundary - gen.boundary)
        gen_scale = float(np.abs(gen.entries[:trust, :trust]).max(initial=0.0))
        res = commutator_residual(C, gen, 0 * gen, trust)
        worst = max(worst, res / max(1.0, scale * gen_scale))
    report.add("casimir.commutes", worst, tol,
               ctx + "; relative to |g(H)| |generator|")
    return report


def conjugate_checks(rep, tol=1e-10) -> VerificationReport:
    report = VerificationReport()
    ctx = rep.describe()
    alpha = solve_alpha(rep.spec, rep.h0)
    report.add("conjugate.F_identity", f_identity_residual(rep.spec, rep.c, alpha),
               tol, ctx + f"; alpha={alpha:g}")
    if rep.is_finite:
        reason = "finite representation: F diverges on the highest state"
        report.skip("conjugate.bracket", reason, ctx)
        report.skip("dual.bracket", reason, ctx)
        return report
    pair = conjugate_raising(rep)
    eye = rep.identity()
    _bracket(report, "conjugate.bracket", rep.Eminus, pair.Etilde_plus, eye, tol,
             ctx + f"; alpha={alpha:g}")
    _bracket(report, "dual.bracket", dual_conjugate(pair), rep.Eplus, eye, tol, ctx)
    return report


def lie_map_checks(rep, tol=1e-10) -> VerificationReport:
    report = VerificationReport()
    for b in (1, -1):
        lm = map_to_lie(rep, b)
        ctx = f"{rep.describe()}; b={b:+d} epsilon={lm.epsilon:g}"
        _bracket(report, f"lie_map.b{b:+d}", rep.Eplus, lm.Ebar_minus, lm.target(),
                 tol, ctx, trust=rep.trust)
        # the top state of a finite rep pins epsilon just like the vacuum does
        stop = rep.dim - 1 if rep.is_finite else rep.trust
        worst = 0.0
        for eps in EPSILON_PROBES:
            other = map_to_lie(rep, b, eps)
            res = commutator_residual(rep.Eplus, other.Ebar_minus, other.target(),
                                      stop, start=1)
            scale = commutator_scale(rep.Eplus, other.Ebar_minus, stop, start=1)
            worst = max(worst, res / max(1.0, scale))
        report.add(f"lie_map.b{b:+d}.epsilon_independence", worst, tol,
                   f"{rep.describe()}; epsilon in {EPSILON_PROBES}, excited rows")
    return report


def state_checks(rep, param, tol=1e-10, eigen_tol=1e-7,
                 tail_ceiling=TAIL_CEILING) -> VerificationReport:
    report = VerificationReport()
    p = complex(param)
    tag = f"{p.real:g}{p.imag:+g}i"
    ctx = rep.describe()
    top = rep.dim - 1

    name = f"aocs[{tag}]"
    if rep.is_finite:
        report.skip(name + ".eigen", "finite representation", ctx)
        report.skip(name + ".series_vs_expm", "finite representation", ctx)
    else:
        try:
            pair = conjugate_raising(rep)
            st = aocs(pair, p, tail_ceiling=tail_ceiling)
            v = st.coeffs
            nrm = np.linalg.norm(v)
            resid = (rep.Eminus.entries @ v - p * v)[:top]
            report.add(name + ".eigen", np.linalg.norm(resid) / nrm, eigen_tol,
                       ctx + f"; tail_mass={st.tail_mass:.2e}")
            oracle = matrix_exponential(p * pair.Etilde_plus).entries[:, 0]
            report.add(name + ".series_vs_expm", np.linalg.norm(v - oracle) / nrm,
                       tol, ctx)
        except DeformedAlgebraError as err:
            report.fail(name, err, ctx)

    name = f"dual[{tag}]"
    try:
        st = dual_cs(rep, p, tail_ceiling=tail_ceiling)
        v = st.coeffs
        nrm = np.linalg.norm(v)
        oracle = matrix_exponential(p * rep.Eplus).entries[:, 0]
        report.add(name + ".series_vs_expm", np.linalg.norm(v - oracle) / nrm, tol, ctx)
        if rep.is_finite:
            report.skip(name + ".eigen", "finite representation: no conjugate", ctx)
        else:
            lower = dual_conjugate(conjugate_raising(rep)).entries
            resid = (lower @ v - p * v)[:top]
            report.add(name + ".eigen", np.linalg.norm(resid) / nrm, eigen_tol,
                       ctx + f"; tail_mass={st.tail_mass:.2e}")
    except DeformedAlgebraError as err:
        report.fail(name, err, ctx)

    name = f"perelomov[{tag}]"
    try:
        st = perelomov_cs(rep, p, tail_ceiling=tail_ceiling)
        report.add(name + ".norm", abs(st.norm - 1.0), 1e-12, ctx)
        report.add(name + ".unitarity_defect", st.defect, tail_ceiling, ctx)
    except (DeformedAlgebraError, OverflowError) as err:
        report.fail(name, err, ctx)
    return report


def run_suite(spec: AlgebraSpec, h0, dim, state_params=(), tol=1e-10,
              eigen_tol=1e-7, tail_ceiling=TAIL_CEILING) -> VerificationReport:
    """Run every check on one ``(spec, h0, dim)`` instance.

    Construction errors become failed entries; checks that depend on a
    failed construction are reported as skipped.  The returned report is
    sorted by entry name.
    """
    report = VerificationReport()
    report.extend(check_fg_consistency(spec, tol=tol))
    ctx = f"{spec.label()} h0={float(h0):g} dim={int(dim)}"
    try:
        rep = build_lowest_weight_rep(spec, h0, dim)
    except DeformedAlgebraError as err:
        report.fail("representation", err, ctx)
        for name in ("brackets", "conjugate", "lie_map", "states"):
            report.skip(name, "representation unavailable", ctx)
        return report.sorted()
    report.add("representation", 0.0, 0.0, rep.describe())
    stages = [
        ("brackets", lambda: rep_checks(rep, tol)),
        ("conjugate", lambda: conjugate_checks(rep, tol)),
        ("lie_map", lambda: lie_map_checks(rep, tol)),
    ]
    stages += [(f"states[{complex(p)}]",
                (lambda p=p: state_checks(rep, p, tol, eigen_tol, tail_ceiling)))
               for p in state_params]
    for name, stage in stages:
        try:
            report.extend(stage())
        except (DeformedAlgebraError, OverflowError) as err:
            report.fail(name, err, rep.describe())
    return report.sorted()
