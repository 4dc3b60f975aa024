"""Command line front end.

Exit status: 0 all checks pass, 1 numerical failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import __version__
from .algebra import AlgebraKind, AlgebraSpec
from .coherent import TAIL_CEILING, StateFamily, expectation, make_state
from .conjugate import conjugate_raising, dual_conjugate
from .errors import DeformedAlgebraError, InvalidSpecError
from .representation import ProbeVerdict, build_lowest_weight_rep, probe_dimension
from .tables import format_complex, parse_complex, write_table
from .verify import run_suite

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

SCAN_AXES = {
    "a": "a", "c": "c", "c_param": "c", "h": "h", "h_param": "h", "q": "q",
    "beta": "param", "gamma": "param", "xi": "param",
}
STATE_COLUMNS = ["n", "weight", "coeff_re", "coeff_im", "prob"]
SCAN_COLUMNS = ["value", "expect_H", "expect_EpEm", "norm", "tail_mass",
                "residual", "error"]
REPORT_COLUMNS = ["name", "status", "residual", "tolerance", "context"]


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str = ""
    algebra: str | None = None
    a: float = 0.0
    c: float = 0.0
    h: float = 0.0
    q: float = 0.0
    h0: float | None = None
    dim: int = 64
    tail_ceiling: float = TAIL_CEILING
    out: str | None = None
    format: str = "csv"
    family: str = "aocs"
    param: str = "0"
    mapped: bool = False
    state_params: list = field(default_factory=list)
    axis: str | None = None
    start: float | None = None
    stop: float | None = None
    step: float | None = None
    values: list | None = None
    max_n: int = 64

    def spec(self) -> AlgebraSpec:
        if self.algebra is None:
            raise ConfigError("--algebra is required")
        try:
            kind = AlgebraKind(self.algebra)
        except ValueError:
            raise ConfigError(f"unknown algebra {self.algebra!r}") from None
        try:
            return AlgebraSpec(kind, a=self.a, c_param=self.c, h_param=self.h,
                               q=self.q)
        except InvalidSpecError as err:
            raise ConfigError(str(err)) from None

    def validate(self):
        spec = self.spec()
        if self.h0 is None or not math.isfinite(self.h0):
            raise ConfigError("--h0 is required")
        if self.dim < 2:
            raise ConfigError("--dim must be at least 2")
        if not self.tail_ceiling > 0:
            raise ConfigError("--tail-ceiling must be positive")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        try:
            StateFamily(self.family)
        except ValueError:
            raise ConfigError(f"unknown family {self.family!r}") from None
        self.parameter()
        for p in self.state_params:
            _complex_or_config_error(p)
        if self.command == "scan":
            if self.axis not in SCAN_AXES:
                raise ConfigError(f"scan needs --axis in {sorted(SCAN_AXES)}")
            self.grid()
            owner = {"a": AlgebraKind.QUADRATIC, "c": AlgebraKind.HIGGS,
                     "h": AlgebraKind.HIGGS, "q": AlgebraKind.QDEFORMED}
            target = SCAN_AXES[self.axis]
            if target in owner and owner[target] is not spec.kind:
                raise ConfigError(f"axis {self.axis} does not belong to {spec.kind.value}")
        return spec

    def parameter(self) -> complex:
        return _complex_or_config_error(self.param)

    def grid(self):
        if self.values is not None:
            return [float(v) for v in self.values]
        if None in (self.start, self.stop, self.step):
            raise ConfigError("scan needs --values or --start/--stop/--step")
        if not self.step > 0:
            raise ConfigError("--step must be positive")
        if self.stop < self.start:
            return []
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(count)]

    def resolved(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _complex_or_config_error(text):
    try:
        return parse_complex(str(text))
    except ValueError as err:
        raise ConfigError(str(err)) from None


CONFIG_KEYS = {f.name for f in fields(RunConfig)} - {"command"}


def load_config_file(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError(f"cannot read config {path}: {err}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = sorted(set(data) - CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return data


def _common_parser():
    p = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    S = argparse.SUPPRESS
    p.add_argument("--config", default=S, help="JSON config file; flags override it")
    p.add_argument("--algebra", choices=[k.value for k in AlgebraKind], default=S)
    p.add_argument("--a", type=float, default=S, help="quadratic deformation")
    p.add_argument("--c", type=float, default=S, help="Higgs linear coefficient")
    p.add_argument("--h", type=float, default=S, help="Higgs cubic coefficient")
    p.add_argument("--q", type=float, default=S, help="q-deformation (real, >0)")
    p.add_argument("--h0", type=float, default=S, help="lowest weight")
    p.add_argument("--dim", type=int, default=S, help="truncation size")
    p.add_argument("--tail-ceiling", dest="tail_ceiling", type=float, default=S)
    p.add_argument("--out", default=S, help="output path (default stdout)")
    p.add_argument("--format", choices=["csv", "json"], default=S)
    return p


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="deformed-cs", allow_abbrev=False,
        description="Coherent states of deformed su(1,1)/su(2) algebras")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    S = argparse.SUPPRESS

    p = sub.add_parser("check", parents=[common], allow_abbrev=False,
                       help="run the verification suite")
    p.add_argument("--state-param", dest="state_params", action="append",
                   default=S, metavar="Z", help="state parameter re+imi (repeatable)")

    p = sub.add_parser("state", parents=[common], allow_abbrev=False,
                       help="export coherent-state coefficients")
    p.add_argument("--family", choices=[f.value for f in StateFamily], default=S)
    p.add_argument("--param", default=S, metavar="Z", help="beta, gamma or xi as re+imi")
    p.add_argument("--mapped", action="store_true", default=S,
                   help="Perelomov state with the mapped lowering operator")

    p = sub.add_parser("scan", parents=[common], allow_abbrev=False,
                       help="scan a parameter and tabulate observables")
    p.add_argument("--axis", choices=sorted(SCAN_AXES), default=S)
    p.add_argument("--start", type=float, default=S)
    p.add_argument("--stop", type=float, default=S)
    p.add_argument("--step", type=float, default=S)
    p.add_argument("--values", type=lambda s: [float(v) for v in s.split(",") if v],
                   default=S, help="comma-separated grid (overrides start/stop/step)")
    p.add_argument("--family", choices=[f.value for f in StateFamily], default=S)
    p.add_argument("--param", default=S, metavar="Z",
                   help="state parameter; for beta/xi axes only its phase is used")

    p = sub.add_parser("probe", parents=[common], allow_abbrev=False,
                       help="classify the lowest-weight ladder")
    p.add_argument("--max-n", dest="max_n", type=int, default=S)
    return parser


def resolve_config(args) -> RunConfig:
    values = vars(args).copy()
    command = values.pop("command")
    values.pop("verbose", None)
    merged = {}
    if "config" in values:
        merged.update(load_config_file(values.pop("config")))
    merged.update(values)
    cfg = RunConfig(command=command)
    for key, value in merged.items():
        setattr(cfg, key, value)
    try:
        for name in ("a", "c", "h", "q", "tail_ceiling"):
            setattr(cfg, name, float(getattr(cfg, name)))
        cfg.dim = int(cfg.dim)
        cfg.max_n = int(cfg.max_n)
        if cfg.h0 is not None:
            cfg.h0 = float(cfg.h0)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"bad numeric value: {err}") from None
    return cfg


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def cmd_check(cfg: RunConfig) -> int:
    spec = cfg.validate()
    params = [parse_complex(str(p)) for p in cfg.state_params]
    report = run_suite(spec, cfg.h0, cfg.dim, params, tail_ceiling=cfg.tail_ceiling)
    meta = {"command": "check", "config": cfg.resolved(),
            "overall_pass": report.overall_pass}
    rows = [[e.name, e.status, e.residual, e.tolerance, e.context]
            for e in report.entries]
    with _output(cfg.out) as fh:
        write_table(fh, meta, REPORT_COLUMNS, rows, cfg.format)
    for line in report.summary_lines():
        log.info(line)
    if not report.overall_pass:
        failed = [e.name for e in report.entries if not e.passed]
        print(f"check failed: {', '.join(failed)}", file=sys.stderr)
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def cmd_state(cfg: RunConfig) -> int:
    spec = cfg.validate()
    rep = build_lowest_weight_rep(spec, cfg.h0, cfg.dim)
    z = cfg.parameter()
    state = make_state(rep, cfg.family, z, normalize=False,
                       tail_ceiling=cfg.tail_ceiling, mapped=cfg.mapped)
    prob = state.probabilities()
    meta = {"command": "state", "config": cfg.resolved(), "family": state.family.value,
            "parameter": format_complex(z), "tail_mass": state.tail_mass,
            "dim": rep.dim, "kind": rep.kind.value}
    if state.defect is not None:
        meta["unitarity_defect"] = state.defect
    rows = [[n, float(w), float(v.real), float(v.imag), float(p)]
            for n, (w, v, p) in enumerate(zip(rep.weights, state.coeffs, prob))]
    with _output(cfg.out) as fh:
        write_table(fh, meta, STATE_COLUMNS, rows, cfg.format)
    return EXIT_OK


def scan_point(cfg: RunConfig, value: float):
    """Observables for one scan value; errors land in the ``error`` column."""
    target = SCAN_AXES[cfg.axis]
    base = cfg.parameter()
    z = base
    overrides = {}
    if target == "param":
        phase = base / abs(base) if base != 0 else 1.0
        z = value * phase
    else:
        overrides[target] = value
    try:
        spec = AlgebraSpec(cfg.spec().kind, a=overrides.get("a", cfg.a),
                           c_param=overrides.get("c", cfg.c),
                           h_param=overrides.get("h", cfg.h),
                           q=overrides.get("q", cfg.q))
        rep = build_lowest_weight_rep(spec, cfg.h0, cfg.dim)
        state = make_state(rep, cfg.family, z, normalize=False,
                           tail_ceiling=cfg.tail_ceiling)
        v = state.coeffs
        nrm = np.linalg.norm(v)
        family = StateFamily(cfg.family)
        if family is StateFamily.PERELOMOV:
            residual = state.defect
        else:
            lower = (rep.Eminus if family is StateFamily.AOCS
                     else dual_conjugate(conjugate_raising(rep))).entries
            residual = float(np.linalg.norm((lower @ v - z * v)[:-1]) / nrm)
        eh = expectation(state, rep.H).real
        epem = expectation(state, rep.Eplus @ rep.Eminus).real
        return [value, eh, epem, float(nrm), state.tail_mass, residual, ""]
    except (DeformedAlgebraError, OverflowError) as err:
        nan = float("nan")
        return [value, nan, nan, nan, nan, nan, f"{type(err).__name__}: {err}"]


def cmd_scan(cfg: RunConfig) -> int:
    cfg.validate()
    rows = [scan_point(cfg, v) for v in cfg.grid()]
    meta = {"command": "scan", "config": cfg.resolved()}
    with _output(cfg.out) as fh:
        write_table(fh, meta, SCAN_COLUMNS, rows, cfg.format)
    return EXIT_OK


def cmd_probe(cfg: RunConfig) -> int:
    spec = cfg.validate()
    if cfg.max_n < 1:
        raise ConfigError("--max-n must be at least 1")
    probe = probe_dimension(spec, cfg.h0, cfg.max_n)
    meta = {"command": "probe", "config": cfg.resolved(), "verdict": str(probe)}
    rows = [[probe.verdict.value, probe.size,
             "" if probe.first_nonpositive is None else probe.first_nonpositive]]
    with _output(cfg.out) as fh:
        write_table(fh, meta, ["verdict", "size", "first_nonpositive"], rows,
                    cfg.format)
    return EXIT_FAIL if probe.verdict is ProbeVerdict.INVALID_AT else EXIT_OK


COMMANDS = {"check": cmd_check, "state": cmd_state, "scan": cmd_scan,
            "probe": cmd_probe}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        cfg = resolve_config(args)
        return COMMANDS[cfg.command](cfg)
    except ConfigError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except DeformedAlgebraError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
