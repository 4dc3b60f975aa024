"""Catalog of deformed algebras and their scalar structure functions.

Every algebra is presented in the Cartan-Weyl form ``[H, E+-] = +-E+-``,
``[E+, E-] = f(H)``, with the Casimir ``C = E- E+ + g(H) = E+ E- + g(H - 1)``
so that ``f(h) = g(h) - g(h - 1)``.  The additive constant in ``g`` is fixed
to the conventional closed forms below; every Casimir value and sector
constant elsewhere in the package is relative to that choice.

All functions accept scalars or numpy arrays for ``h``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError
from .report import VerificationReport


class AlgebraKind(str, enum.Enum):
    SU11 = "su11"
    QUADRATIC = "quadratic"
    HIGGS = "higgs"
    QDEFORMED = "qdeformed"


@dataclass(frozen=True)
class AlgebraSpec:
    """A deformed algebra together with its deformation parameters.

    Parameters
    ----------
    kind : AlgebraKind
    a : float
        Quadratic deformation, ``[N+, N-] = 2 N0 + a N0**2``.
    c_param, h_param : float
        Higgs parameters, ``[M+, M-] = 2 c M0 + 4 h M0**3``.
    q : float
        Real deformation parameter of ``su_q(2)``; ``q > 0``, ``q != 1``.
    """

    kind: AlgebraKind
    a: float = 0.0
    c_param: float = 0.0
    h_param: float = 0.0
    q: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", AlgebraKind(self.kind))
        for name in ("a", "c_param", "h_param", "q"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidSpecError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.kind is AlgebraKind.QDEFORMED:
            if not self.q > 0:
                raise InvalidSpecError(f"q must be positive, got {self.q}")
            if abs(self.q - 1.0) <= 1e-12:
                raise InvalidSpecError("q = 1 is the undeformed limit, not a member")

    @classmethod
    def su11(cls):
        return cls(AlgebraKind.SU11)

    @classmethod
    def quadratic(cls, a):
        return cls(AlgebraKind.QUADRATIC, a=a)

    @classmethod
    def higgs(cls, c_param, h_param):
        return cls(AlgebraKind.HIGGS, c_param=c_param, h_param=h_param)

    @classmethod
    def qdeformed(cls, q):
        return cls(AlgebraKind.QDEFORMED, q=q)

    def params(self) -> dict:
        """Only the parameters meaningful for this kind."""
        return {
            AlgebraKind.SU11: {},
            AlgebraKind.QUADRATIC: {"a": self.a},
            AlgebraKind.HIGGS: {"c_param": self.c_param, "h_param": self.h_param},
            AlgebraKind.QDEFORMED: {"q": self.q},
        }[self.kind]

    def label(self) -> str:
        inner = ", ".join(f"{k}={v:g}" for k, v in self.params().items())
        return f"{self.kind.value}({inner})"

    def f(self, h):
        return structure_f(self, h)

    def g(self, h):
        return structure_g(self, h)


def structure_f(spec: AlgebraSpec, h):
    """Right-hand side of ``[E+, E-]`` evaluated at the weight ``h``."""
    h = np.asarray(h, dtype=float)
    kind = spec.kind
    if kind is AlgebraKind.SU11:
        out = -2.0 * h
    elif kind is AlgebraKind.QUADRATIC:
        out = 2.0 * h + spec.a * h**2
    elif kind is AlgebraKind.HIGGS:
        out = 2.0 * spec.c_param * h + 4.0 * spec.h_param * h**3
    else:
        s = math.log(spec.q)
        # (q^h - q^-h) / (q - q^-1)
        out = np.sinh(h * s) / math.sinh(s)
    return out[()] if out.ndim == 0 else out


def structure_g(spec: AlgebraSpec, h):
    """Casimir potential ``g`` with ``f(h) = g(h) - g(h - 1)``."""
    h = np.asarray(h, dtype=float)
    kind = spec.kind
    if kind is AlgebraKind.SU11:
        out = -h * (h + 1.0)
    elif kind is AlgebraKind.QUADRATIC:
        x = h * (h + 1.0)
        out = x + spec.a / 3.0 * x * (h + 0.5)
    elif kind is AlgebraKind.HIGGS:
        x = h * (h + 1.0)
        out = spec.c_param * x + spec.h_param * x**2
    else:
        s = math.log(spec.q)
        # (q^(h+1/2) + q^-(h+1/2)) / ((q^1/2 - q^-1/2)(q - q^-1))
        out = np.cosh((h + 0.5) * s) / (2.0 * math.sinh(0.5 * s) * math.sinh(s))
    return out[()] if out.ndim == 0 else out


def casimir_lowest_weight(spec: AlgebraSpec, h0):
    """Casimir value on a vacuum of weight ``h0`` annihilated by ``E-``."""
    return structure_g(spec, np.asarray(h0, dtype=float) - 1.0)


def default_probe_grid():
    """Integers and half-integers in ``[-8, 8]``."""
    return np.arange(-16, 17) / 2.0


def check_fg_consistency(spec: AlgebraSpec, h_values=None, tol=1e-10):
    """Check ``f(h) = g(h) - g(h - 1)`` pointwise over ``h_values``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    h = default_probe_grid() if h_values is None else np.asarray(h_values, float)
    dev = np.abs(structure_f(spec, h) - (structure_g(spec, h) - structure_g(spec, h - 1.0)))
    report = VerificationReport()
    report.add("fg_consistency", float(np.max(dev, initial=0.0)), tol,
               f"{spec.label()}; {h.size} probe weights")
    return report
