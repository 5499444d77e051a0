"""Reference values computed independently of the library internals.

Everything here is built directly from factorials over Fraction, so
agreement with the library is a meaningful cross-check rather than the
same code evaluated twice.  Values are returned as (q, h) pairs meaning
q * pi^(h/2).
"""

from fractions import Fraction
from math import factorial


def gamma_half_pair(two_a: int) -> tuple[Fraction, int]:
    """Gamma(two_a / 2) as (q, h).

    Even argument: Gamma(n) = (n-1)!.
    Odd argument:  Gamma(t + 1/2) = (2t)! / (4^t t!) * sqrt(pi).
    """
    if two_a <= 0:
        raise ValueError("argument must be positive")
    if two_a % 2 == 0:
        return Fraction(factorial(two_a // 2 - 1)), 0
    t = (two_a - 1) // 2
    return Fraction(factorial(2 * t), 4**t * factorial(t)), 1


def sphere_monomial(alpha: tuple[int, ...], m: int) -> tuple[Fraction, int]:
    """Integral of x^alpha over the unit sphere in R^m.

    Zero unless every exponent is even; otherwise
        2 * prod_i Gamma((alpha_i + 1) / 2) / Gamma((|alpha| + m) / 2).
    """
    if len(alpha) != m:
        raise ValueError("exponent tuple must have length m")
    if any(a < 0 for a in alpha):
        raise ValueError("negative exponent")
    if any(a % 2 for a in alpha):
        return Fraction(0), 0
    num_q, num_h = Fraction(2), 0
    for a in alpha:
        q, h = gamma_half_pair(a + 1)
        num_q *= q
        num_h += h
    den_q, den_h = gamma_half_pair(sum(alpha) + m)
    # denominator pi power never exceeds the numerator's here
    return num_q / den_q, num_h - den_h


def sphere_area_pair(m: int) -> tuple[Fraction, int]:
    """Surface area of the unit sphere in R^m as (q, h)."""
    return sphere_monomial((0,) * m, m)


def stiefel_volume_pair(m: int, k: int) -> tuple[Fraction, int]:
    """prod_{j=1..k} A_{m-j+1} as (q, h)."""
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    q, h = Fraction(1), 0
    for j in range(1, k + 1):
        aq, ah = sphere_area_pair(m - j + 1)
        q *= aq
        h += ah
    return q, h


def pair_to_float(pair: tuple[Fraction, int]) -> float:
    from math import pi
    q, h = pair
    return float(q) * pi ** (h / 2)
