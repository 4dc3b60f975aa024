"""Canonical conjugate of the lowering operator and maps to su(1,1)/su(2).

``Et+ = E+ F(C, H)`` with ``F(c, h) = (h + alpha) / (c - g(h))`` satisfies
``[E-, Et+] = 1``.  ``Eb- = E- G(C, H)`` with
``G(c, h) = ((h**2 - h) b + eps) / (c - g(h - 1))`` satisfies
``[E+, Eb-] = -2 b H``: ``b = +1`` realizes su(1,1), ``b = -1`` su(2).
Both ``F`` and ``G`` act as diagonal matrices in the weight basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraSpec, structure_g
from .errors import CompactRepError, DegenerateDenominator
from .representation import OperatorMatrix, Representation

DENOMINATOR_TOL = 1e-12


@dataclass(frozen=True)
class ConjugatePair:
    rep: Representation
    alpha: float
    Etilde_plus: OperatorMatrix


@dataclass(frozen=True)
class LieMap:
    """Mapped lowering operator for the undeformed algebra selected by ``b``.

    The bracket ``[E+, Eb-] = -2 b H`` holds on every excited state for any
    ``epsilon``.  On the vacuum it additionally needs
    ``epsilon = b h0 (1 - h0)``; ``vacuum_consistent`` records whether the
    map was built with that value.
    """

    rep: Representation
    b: int
    epsilon: float
    Ebar_minus: OperatorMatrix

    @property
    def vacuum_consistent(self) -> bool:
        target = vacuum_epsilon(self.rep.h0, self.b)
        return abs(self.epsilon - target) <= 1e-12 * max(1.0, abs(target))

    @property
    def first_exact_row(self) -> int:
        return 0 if self.vacuum_consistent else 1

    def target(self) -> OperatorMatrix:
        return -2.0 * self.b * self.rep.H


def solve_alpha(spec: AlgebraSpec, h0) -> float:
    """Sector constant fixed by ``[E-, Et+]|vac> = |vac>``.

    ``E+ E-`` kills the vacuum, so the condition is
    ``F(c, h0) (c - g(h0)) = h0 + alpha = 1``; the algebra drops out.
    """
    return 1.0 - float(h0)


def conjugate_factor(spec: AlgebraSpec, c, h, alpha):
    """``F(c, h) = (h + alpha) / (c - g(h))``."""
    h = np.asarray(h, dtype=float)
    return (h + alpha) / (c - structure_g(spec, h))


def conjugate_raising(rep: Representation) -> ConjugatePair:
    """Build ``Et+ = E+ F(C, H)`` on a noncompact representation."""
    if rep.is_finite:
        raise CompactRepError(
            f"{rep.describe()}: F(C, H) diverges on the highest state, the "
            "canonical conjugate does not exist on a finite representation")
    alpha = solve_alpha(rep.spec, rep.h0)
    w = rep.weights
    denom = rep.c - structure_g(rep.spec, w)
    F = np.zeros(rep.dim)
    # the top column of E+ is truncated to zero; its F entry is never used
    F[:-1] = (w[:-1] + alpha) / denom[:-1]
    Etilde = rep.Eplus @ rep.diag_function(F)
    return ConjugatePair(rep, alpha, Etilde)


def dual_conjugate(pair: ConjugatePair) -> OperatorMatrix:
    """``Et+^dagger``, which satisfies ``[Et+^dagger, E+] = 1``."""
    return pair.Etilde_plus.adjoint()


def vacuum_epsilon(h0, b) -> float:
    """The ``epsilon`` for which the mapped bracket also holds on the vacuum."""
    h0 = float(h0)
    return b * h0 * (1.0 - h0)


def lie_map_factor(spec: AlgebraSpec, c, h, b, epsilon):
    """``G(c, h) = ((h**2 - h) b + epsilon) / (c - g(h - 1))``."""
    h = np.asarray(h, dtype=float)
    return ((h**2 - h) * b + epsilon) / (c - structure_g(spec, h - 1.0))


def map_to_lie(rep: Representation, b=1, epsilon=None) -> LieMap:
    """Build ``Eb- = E- G(C, H)``.

    Parameters
    ----------
    rep : Representation
    b : {+1, -1}
        Target algebra: su(1,1) for +1, su(2) for -1.
    epsilon : float, optional
        Free constant in ``G``.  ``None`` selects :func:`vacuum_epsilon`.

    Raises
    ------
    DegenerateDenominator
        ``c - g(h0 + n - 1)`` vanishes on an excited state.
    """
    if b not in (1, -1):
        raise ValueError(f"b must be +1 or -1, got {b}")
    if epsilon is None:
        epsilon = vacuum_epsilon(rep.h0, b)
    w = rep.weights
    denom = rep.c - structure_g(rep.spec, w - 1.0)
    for n in range(1, rep.dim):
        if abs(denom[n]) < DENOMINATOR_TOL:
            raise DegenerateDenominator(n, float(denom[n]))
    G = np.zeros(rep.dim)
    # the vacuum denominator is exactly zero and E- annihilates |0> anyway
    G[1:] = ((w[1:] ** 2 - w[1:]) * b + epsilon) / denom[1:]
    Ebar = rep.Eminus @ rep.diag_function(G)
    return LieMap(rep, int(b), float(epsilon), Ebar)
