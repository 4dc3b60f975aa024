"""Coherent states: annihilation-operator eigenstates, their duals and
Perelomov (group-displacement) states.

* ``aocs``: ``exp(beta Et+)|vac>``, an eigenstate of ``E-``.
* ``dual_cs``: ``exp(gamma E+)|vac>``, an eigenstate of ``Et+^dagger``.
* ``perelomov_cs``: ``exp(xi E+ - conj(xi) E-)|vac>``.

The first two are evaluated from their closed ladder series; the matrix
exponential is used for the third and as an oracle for the first two.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .conjugate import ConjugatePair, conjugate_raising, map_to_lie
from .errors import DimensionMismatch, TruncationError
from .representation import OperatorMatrix, Representation

TAIL_CEILING = 1e-8
# exp overflows double precision just above 709
EXPM_NORM_LIMIT = 700.0


class StateFamily(str, enum.Enum):
    AOCS = "aocs"
    DUAL = "dual"
    PERELOMOV = "perelomov"


@dataclass(frozen=True)
class CoherentStateVector:
    """Coefficients in the weight basis plus construction metadata.

    ``tail_mass`` is the relative weight on the last two basis states.
    ``defect`` is only set for Perelomov states: the relative weight on the
    upper half of a truncated basis (zero for exact finite representations).
    """

    coeffs: np.ndarray
    family: StateFamily
    parameter: complex
    normalized: bool
    tail_mass: float
    defect: float | None = None

    @property
    def dim(self) -> int:
        return self.coeffs.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def probabilities(self):
        p = np.abs(self.coeffs) ** 2
        return p / p.sum()

    def normalize(self) -> CoherentStateVector:
        return CoherentStateVector(self.coeffs / self.norm, self.family,
                                   self.parameter, True, self.tail_mass,
                                   self.defect)


def tail_mass(coeffs, finite=False) -> float:
    if finite:
        return 0.0
    p = np.abs(coeffs) ** 2
    return float(p[-2:].sum() / p.sum())


def upper_half_mass(coeffs) -> float:
    p = np.abs(coeffs) ** 2
    return float(p[coeffs.size // 2:].sum() / p.sum())


def _finish(coeffs, family, parameter, normalize, finite, ceiling, defect=None):
    tail = tail_mass(coeffs, finite)
    if not np.all(np.isfinite(coeffs)):
        raise TruncationError(np.inf, ceiling)
    if tail > ceiling:
        raise TruncationError(tail, ceiling)
    state = CoherentStateVector(coeffs, family, complex(parameter), False,
                                tail, defect)
    return state.normalize() if normalize else state


def aocs_coefficients(ladder_sq, beta, dim):
    """``c_n = beta**n / prod_{k<n} sqrt(c - g(h0 + k))``."""
    e = np.sqrt(ladder_sq[:dim - 1])
    out = np.empty(dim, dtype=complex)
    out[0] = 1.0
    for n in range(dim - 1):
        out[n + 1] = out[n] * beta / e[n]
    return out


def dual_coefficients(ladder_sq, gamma, dim):
    """``c_n = gamma**n / n! * prod_{k<n} sqrt(c - g(h0 + k))``."""
    e = np.sqrt(ladder_sq[:dim - 1])
    out = np.empty(dim, dtype=complex)
    out[0] = 1.0
    for n in range(dim - 1):
        out[n + 1] = out[n] * gamma * e[n] / (n + 1)
    return out


def aocs(pair: ConjugatePair, beta, normalize=False, tail_ceiling=TAIL_CEILING):
    """Eigenstate of ``E-`` with eigenvalue ``beta``.

    Raises
    ------
    TruncationError
        If the tail mass exceeds ``tail_ceiling``.
    """
    rep = pair.rep
    coeffs = aocs_coefficients(rep.ladder_sq, complex(beta), rep.dim)
    return _finish(coeffs, StateFamily.AOCS, beta, normalize, False,
                   tail_ceiling)


def dual_cs(rep: Representation, gamma, normalize=False,
            tail_ceiling=TAIL_CEILING):
    """``exp(gamma E+)|vac>``; on an exact finite rep the tail gate is moot."""
    coeffs = dual_coefficients(rep.ladder_sq, complex(gamma), rep.dim)
    return _finish(coeffs, StateFamily.DUAL, gamma, normalize, rep.is_finite,
                   tail_ceiling)


def perelomov_generator(rep: Representation, xi, mapped=False, epsilon=None):
    xi = complex(xi)
    if mapped:
        b = -1 if rep.is_finite else 1
        lowering = map_to_lie(rep, b, epsilon).Ebar_minus
    else:
        lowering = rep.Eminus
    return xi * rep.Eplus - np.conj(xi) * lowering


def perelomov_cs(rep: Representation, xi, mapped=False, epsilon=None,
                 tail_ceiling=TAIL_CEILING):
    """``exp(xi E+ - conj(xi) E-)|vac>``.

    With ``mapped=True`` the lowering generator is replaced by the mapped
    ``Eb-`` (``b = -1`` on finite reps, ``+1`` otherwise); the exponential is
    then no longer unitary and the state is returned unnormalized.

    Raises
    ------
    TruncationError
        If the weight leaking into the upper half of a truncated basis
        exceeds ``tail_ceiling``.
    """
    U = matrix_exponential(perelomov_generator(rep, xi, mapped, epsilon))
    coeffs = U.entries[:, 0].copy()
    defect = 0.0 if rep.is_finite else upper_half_mass(coeffs)
    if defect > tail_ceiling:
        raise TruncationError(defect, tail_ceiling, "unitarity_defect")
    state = CoherentStateVector(coeffs, StateFamily.PERELOMOV, complex(xi),
                                not mapped, tail_mass(coeffs, rep.is_finite),
                                defect)
    return state


def make_state(rep: Representation, family, parameter, normalize=True,
               tail_ceiling=TAIL_CEILING, mapped=False):
    """Dispatch on ``family``; used by the command line and scans."""
    family = StateFamily(family)
    if family is StateFamily.AOCS:
        return aocs(conjugate_raising(rep), parameter, normalize, tail_ceiling)
    if family is StateFamily.DUAL:
        return dual_cs(rep, parameter, normalize, tail_ceiling)
    state = perelomov_cs(rep, parameter, mapped, tail_ceiling=tail_ceiling)
    return state.normalize() if normalize and not state.normalized else state


def matrix_exponential(A) -> OperatorMatrix:
    """Dense matrix exponential (Pade scaling and squaring).

    A strictly lower-triangular input (a pure raising operator) has an
    exactly truncated exponential, so the result is marked fully trusted;
    otherwise the result inherits no row-level guarantee beyond the leading
    half of the basis.

    Raises
    ------
    OverflowError
        If the 1-norm of ``A`` exceeds the range where ``exp`` is finite.
    """
    if not isinstance(A, OperatorMatrix):
        A = OperatorMatrix(A)
    M = A.entries
    norm = np.linalg.norm(M, 1)
    if norm > EXPM_NORM_LIMIT:
        raise OverflowError(f"||A||_1 = {norm:.3g} exceeds {EXPM_NORM_LIMIT}")
    out = scipy.linalg.expm(M)
    if not np.all(np.isfinite(out)):
        raise OverflowError("matrix exponential overflowed")
    if A.trust_rows == A.dim or not np.any(np.triu(M)):
        trust = A.dim
    else:
        trust = A.dim // 2
    return OperatorMatrix(out, trust)


def expectation(state: CoherentStateVector, op: OperatorMatrix) -> complex:
    """``<psi|op|psi> / <psi|psi>``."""
    entries = op.entries if isinstance(op, OperatorMatrix) else np.asarray(op)
    if entries.shape != (state.dim, state.dim):
        raise DimensionMismatch(
            f"state dim {state.dim} vs operator shape {entries.shape}")
    v = state.coeffs
    return complex(np.vdot(v, entries @ v) / np.vdot(v, v).real)

