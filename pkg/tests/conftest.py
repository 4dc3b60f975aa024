import math

import numpy as np
import pytest

from deformed_cs import AlgebraSpec


def taylor_expm_vacuum(A, tol=1e-18, max_terms=2000):
    """exp(A)|0> by direct power-series summation; independent of scipy."""
    A = np.asarray(A, dtype=complex)
    term = np.zeros(A.shape[0], dtype=complex)
    term[0] = 1.0
    total = term.copy()
    for k in range(1, max_terms):
        term = A @ term / k
        total += term
        if np.linalg.norm(term) <= tol * np.linalg.norm(total):
            break
    return total


def su11_perelomov_exact(k, xi, dim):
    """Closed-form su(1,1) displaced vacuum, Bargmann index k."""
    xi = complex(xi)
    if xi == 0:
        out = np.zeros(dim, complex)
        out[0] = 1
        return out
    zeta = xi / abs(xi) * math.tanh(abs(xi))
    n = np.arange(dim)
    logs = np.array([math.lgamma(2 * k + m) - math.lgamma(m + 1) - math.lgamma(2 * k)
                     for m in n])
    return (1 - abs(zeta) ** 2) ** k * np.sqrt(np.exp(logs)) * zeta ** n


def spin_coherent_exact(j2, xi):
    """exp(xi J+ - conj(xi) J-)|j,-j> for spin j = j2/2."""
    xi = complex(xi)
    n = np.arange(j2 + 1)
    binom = np.array([math.comb(j2, m) for m in n], float)
    if xi == 0:
        tau = 0
    else:
        tau = xi / abs(xi) * math.tan(abs(xi))
    return np.sqrt(binom) * tau ** n / (1 + abs(tau) ** 2) ** (j2 / 2)


# (spec, h0) pairs with unitary ladders on dim 64 windows
NONCOMPACT_CASES = [
    (AlgebraSpec.su11(), 0.25),
    (AlgebraSpec.su11(), 0.75),
    (AlgebraSpec.su11(), 1.0),
    (AlgebraSpec.quadratic(-3.0), 1.0),
    (AlgebraSpec.higgs(-1.0, -0.001), 1.0),
    (AlgebraSpec.higgs(-1.0, 0.0), 0.5),
    (AlgebraSpec.qdeformed(1.05), -40.0),
]

FINITE_CASES = [
    (AlgebraSpec.quadratic(0.0), -2.0),
    (AlgebraSpec.quadratic(0.0), -1.5),
    (AlgebraSpec.higgs(1.0, 0.1), -2.0),
    (AlgebraSpec.higgs(2.0, 0.3), -1.0),
    (AlgebraSpec.qdeformed(1.3), -2.0),
    (AlgebraSpec.qdeformed(0.7), -1.5),
]


def case_id(case):
    spec, h0 = case
    return f"{spec.label()}-h0={h0:g}"


@pytest.fixture(params=NONCOMPACT_CASES, ids=case_id)
def noncompact_case(request):
    return request.param


@pytest.fixture(params=FINITE_CASES, ids=case_id)
def finite_case(request):
    return request.param
