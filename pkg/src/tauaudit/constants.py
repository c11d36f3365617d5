"""Exact constants of the tau identities, self-checked at import time."""

from fractions import Fraction

from .arith import bernoulli
from .errors import ConsistencyError

# The only place the prime 691 is written down; everything else imports it.
P691 = 691
if abs(bernoulli(12).numerator) != P691:
    raise ConsistencyError(f"B_12 numerator {bernoulli(12).numerator} is not -{P691}")

# tau(n) = C11 sigma_11(n) + C5 sigma_5(n) - CONV sum sigma_5(j) sigma_5(n-j)
TAU_SIGMA11 = Fraction(65, 756)
TAU_SIGMA5 = Fraction(P691, 756)
TAU_CONV = Fraction(P691, 3)

# A(n) = A_SIGMA11 sigma_11(n) + A_SIGMA5 sigma_5(n); B(n) = P691 * conv(n)
A_SIGMA11 = Fraction(65, 252)
A_SIGMA5 = Fraction(P691, 252)
A_DENOM = 252

for _a, _t in ((A_SIGMA11, TAU_SIGMA11), (A_SIGMA5, TAU_SIGMA5), (P691, TAU_CONV)):
    if _a != 3 * _t:
        raise ConsistencyError(f"A/B coefficient {_a} is not 3 x {_t}")


def eisenstein_coefficient(k: int) -> Fraction:
    """Multiplier of sigma_{k-1}(n) q^n in the normalized weight-k series, -2k/B_k."""
    return Fraction(-2 * k) / bernoulli(k)


E4_COEFF = int(eisenstein_coefficient(4))
E6_COEFF = int(eisenstein_coefficient(6))
if (E4_COEFF, E6_COEFF) != (240, -504):
    raise ConsistencyError(f"Eisenstein coefficients {(E4_COEFF, E6_COEFF)} != (240, -504)")
DISCRIMINANT_DENOM = 1728
