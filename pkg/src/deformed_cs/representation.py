"""Truncated lowest-weight matrix representations.

The basis is the weight basis ``|n>``, ``H|n> = (h0 + n)|n>``, with the
ladder ``E+|n> = e_n |n+1>``, ``e_n = sqrt(c - g(h0 + n))`` taken real and
non-negative, and ``E- = E+^dagger``.  Column ``n`` of a matrix is the image
of ``|n>``.

Truncation bookkeeping: an operator that raises by one loses the image of
the top basis state, so it is exact on the leading ``dim - 1`` states.  A
product of ``k`` such operators is exact on the leading ``dim - k``.  This is
carried as ``OperatorMatrix.trust_rows`` and combined automatically by the
matrix arithmetic below.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraSpec, casimir_lowest_weight, structure_g
from .errors import DimensionMismatch, RepresentationError, UnitarityViolation

UNITARITY_TOL = 1e-10


class OperatorMatrix:
    """Dense complex square matrix with a truncation trust boundary.

    Parameters
    ----------
    entries : array_like
        ``dim x dim`` matrix; copied and made read-only.
    trust_rows : int, optional
        Number of leading basis states on which the matrix agrees with the
        untruncated operator.  Defaults to ``dim`` (exact).
    """

    __array_priority__ = 100

    def __init__(self, entries, trust_rows=None):
        arr = np.array(entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"square matrix required, got shape {arr.shape}")
        if arr.shape[0] < 2:
            raise ValueError("dim must be at least 2")
        if not np.all(np.isfinite(arr)):
            raise ValueError("non-finite matrix entries")
        arr.flags.writeable = False
        self.entries = arr
        dim = arr.shape[0]
        trust = dim if trust_rows is None else int(trust_rows)
        if not 0 <= trust <= dim:
            raise ValueError(f"trust_rows={trust} outside [0, {dim}]")
        self.trust_rows = trust

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def boundary(self) -> int:
        return self.dim - self.trust_rows

    def __repr__(self):
        return f"OperatorMatrix(dim={self.dim}, trust_rows={self.trust_rows})"

    def _check(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {other.dim}")
        return other

    def __matmul__(self, other):
        if isinstance(other, np.ndarray):
            return self.entries @ other
        if self._check(other) is NotImplemented:
            return NotImplemented
        trust = max(0, self.dim - self.boundary - other.boundary)
        return OperatorMatrix(self.entries @ other.entries, trust)

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries + other.entries,
                              min(self.trust_rows, other.trust_rows))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries - other.entries,
                              min(self.trust_rows, other.trust_rows))

    def __neg__(self):
        return OperatorMatrix(-self.entries, self.trust_rows)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return OperatorMatrix(scalar * self.entries, self.trust_rows)

    __rmul__ = __mul__

    def adjoint(self) -> OperatorMatrix:
        return OperatorMatrix(self.entries.conj().T, self.trust_rows)

    def commutator(self, other) -> OperatorMatrix:
        return self @ other - other @ self

    def trusted_block(self, trust=None):
        k = self.trust_rows if trust is None else trust
        return self.entries[:k, :k]

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))

    @classmethod
    def diagonal(cls, values):
        return cls(np.diag(np.asarray(values, dtype=complex)))


class RepKind(str, enum.Enum):
    INFINITE_TRUNCATED = "infinite_truncated"
    FINITE_EXACT = "finite_exact"


@dataclass(frozen=True)
class Representation:
    """Truncated (or exact finite) lowest-weight representation.

    ``ladder_sq[n] = c - g(h0 + n)`` is the squared norm of ``E+|n>`` for
    ``n < dim - 1``; it is kept because every closed-form state expansion is
    built from it.
    """

    spec: AlgebraSpec
    h0: float
    c: float
    dim: int
    H: OperatorMatrix
    Eplus: OperatorMatrix
    Eminus: OperatorMatrix
    kind: RepKind
    ladder_sq: np.ndarray

    @property
    def weights(self):
        return self.h0 + np.arange(self.dim)

    @property
    def is_finite(self) -> bool:
        return self.kind is RepKind.FINITE_EXACT

    @property
    def trust(self) -> int:
        """Trusted leading block for products of two generators."""
        return self.dim if self.is_finite else self.dim - 2

    def vacuum(self):
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    def identity(self) -> OperatorMatrix:
        return OperatorMatrix.identity(self.dim)

    def diag_function(self, values) -> OperatorMatrix:
        """Diagonal operator holding ``values[n]`` on ``|n>``; exact."""
        return OperatorMatrix.diagonal(values)

    def describe(self) -> str:
        return (f"{self.spec.label()} h0={self.h0:g} dim={self.dim} "
                f"{self.kind.value}")


def _zero_tol(tol, c):
    # polynomial and q-power magnitudes scale with |c|
    return tol * max(1.0, abs(c))


def _assemble(spec, h0, c, lam, kind) -> Representation:
    dim = lam.size + 1
    e = np.sqrt(np.clip(lam, 0.0, None))
    ep = np.zeros((dim, dim))
    ep[np.arange(1, dim), np.arange(dim - 1)] = e
    edge = 0 if kind is RepKind.FINITE_EXACT else 1
    Eplus = OperatorMatrix(ep, dim - edge)
    Eminus = Eplus.adjoint()
    H = OperatorMatrix.diagonal(h0 + np.arange(dim))
    return Representation(spec, float(h0), float(c), dim, H, Eplus, Eminus,
                          kind, lam.copy())


def build_lowest_weight_rep(spec: AlgebraSpec, h0, dim, tol=UNITARITY_TOL):
    """Build the lowest-weight representation of weight ``h0``.

    Parameters
    ----------
    spec : AlgebraSpec
    h0 : float
        Weight of the vacuum ``|0>``.
    dim : int
        Truncation size.  If the ladder closes (``c - g(h0 + d - 1) = 0``)
        for some ``d <= dim`` the exact ``d``-dimensional representation is
        returned instead.
    tol : float
        Zero / negativity threshold on ``c - g(h0 + n)``, scaled by
        ``max(1, |c|)``.

    Raises
    ------
    UnitarityViolation
        ``c - g(h0 + n)`` is negative for some ``n < dim - 1`` before the
        ladder closes.
    """
    dim = int(dim)
    if dim < 2:
        raise RepresentationError("dim must be at least 2")
    h0 = float(h0)
    c = float(casimir_lowest_weight(spec, h0))
    lam = c - structure_g(spec, h0 + np.arange(dim))
    ztol = _zero_tol(tol, c)
    for n, value in enumerate(lam):
        if abs(value) <= ztol:
            if n == 0:
                raise RepresentationError(
                    f"ladder closes at the vacuum for {spec.label()}, h0={h0:g}: "
                    "one-dimensional representation")
            return _assemble(spec, h0, c, lam[:n], RepKind.FINITE_EXACT)
        if value < 0 and n < dim - 1:
            raise UnitarityViolation(n, float(value))
    return _assemble(spec, h0, c, lam[:dim - 1], RepKind.INFINITE_TRUNCATED)


class ProbeVerdict(str, enum.Enum):
    INFINITE_UP_TO = "infinite_up_to"
    FINITE = "finite"
    INVALID_AT = "invalid_at"


@dataclass(frozen=True)
class RepProbe:
    """Outcome of scanning ``c - g(h0 + n)``.

    ``size`` is ``max_n`` for ``INFINITE_UP_TO``, the dimension for
    ``FINITE`` and the offending level for ``INVALID_AT``.
    """

    verdict: ProbeVerdict
    size: int
    first_nonpositive: int | None = None

    def __str__(self):
        names = {ProbeVerdict.INFINITE_UP_TO: "InfiniteUpTo",
                 ProbeVerdict.FINITE: "Finite",
                 ProbeVerdict.INVALID_AT: "InvalidAt"}
        return f"{names[self.verdict]}({self.size})"


def probe_dimension(spec: AlgebraSpec, h0, max_n, tol=UNITARITY_TOL) -> RepProbe:
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    c = float(casimir_lowest_weight(spec, h0))
    lam = c - structure_g(spec, float(h0) + np.arange(max_n + 1))
    ztol = _zero_tol(tol, c)
    for n, value in enumerate(lam):
        if abs(value) <= ztol:
            return RepProbe(ProbeVerdict.FINITE, n + 1, n)
        if value < 0:
            return RepProbe(ProbeVerdict.INVALID_AT, n, n)
    return RepProbe(ProbeVerdict.INFINITE_UP_TO, int(max_n), None)


class Sector(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"


def oscillator_realization(sector, fock_dim) -> Representation:
    """su(1,1) on one boson: ``K- = a^2/2``, ``K+ = (a^dag)^2/2``,
    ``K0 = (2 a^dag a + 1)/4``, restricted to the even or odd Fock sector.

    Built entirely from the Fock ladder matrices, independently of the
    structure functions, so it can serve as an oracle for
    :func:`build_lowest_weight_rep`.
    """
    sector = Sector(sector)
    fock_dim = int(fock_dim)
    if fock_dim < 4 or fock_dim % 2:
        raise RepresentationError("fock_dim must be even and at least 4")
    a = np.diag(np.sqrt(np.arange(1, fock_dim)), k=1)
    ad = a.T
    k_minus = a @ a / 2
    k_plus = ad @ ad / 2
    k0 = (2 * ad @ a + np.eye(fock_dim)) / 4
    idx = np.arange(0 if sector is Sector.EVEN else 1, fock_dim, 2)
    sub = np.ix_(idx, idx)
    dim = idx.size
    H = OperatorMatrix(k0[sub])
    Eplus = OperatorMatrix(k_plus[sub], dim - 1)
    Eminus = OperatorMatrix(k_minus[sub], dim - 1)
    h0 = float(k0[idx[0], idx[0]])
    casimir = k_minus @ k_plus - k0 @ (k0 + np.eye(fock_dim))
    c = float(casimir[idx[0], idx[0]])
    spec = AlgebraSpec.su11()
    lam = np.real(np.diag(Eminus.entries @ Eplus.entries))[:dim - 1]
    return Representation(spec, h0, c, dim, H, Eplus, Eminus,
                          RepKind.INFINITE_TRUNCATED, lam)


def casimir_matrix(rep: Representation) -> OperatorMatrix:
    """``E- E+ + g(H)``; proportional to the identity on trusted rows."""
    g_diag = rep.diag_function(structure_g(rep.spec, rep.weights))
    return rep.Eminus @ rep.Eplus + g_diag
