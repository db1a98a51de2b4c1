"""
Closed-form counts for the m-cluster category of type A_n.

Everything is computed with Python integers and :class:`fractions.Fraction`;
a value that must be a whole number is checked at the point it leaves a
formula and :class:`NonIntegralCountError` signals a bug when it is not.
"""
import logging
from fractions import Fraction
from math import comb, gcd

from sympy import divisors, factorint

logger = logging.getLogger(__name__)


class NonIntegralCountError(ArithmeticError):
    """A count that must be an integer evaluated to a proper fraction."""


def _exact(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegralCountError(f"{what} evaluated to {value}, not an integer")
    return value.numerator


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def binomial(a: int, b: int) -> int:
    """binom(a, b), zero when b < 0 or b > a."""
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def euler_phi(d: int) -> int:
    _require(d >= 1, f"euler_phi needs d >= 1, got {d}")
    result = 1
    for p, k in factorint(d).items():
        result *= p ** (k - 1) * (p - 1)
    return result


def catalan(i: int) -> int:
    _require(i >= 0, f"catalan needs i >= 0, got {i}")
    return comb(2 * i, i) // (i + 1)


def num_indecomposables(n: int, m: int) -> int:
    """Indecomposable objects of the m-cluster category of A_n: (m n (n+1) + 2n) / 2."""
    _require(n >= 1 and m >= 1, f"need n >= 1 and m >= 1, got n={n}, m={m}")
    return _exact(Fraction(m * n * (n + 1) + 2 * n, 2), f"num_indecomposables({n}, {m})")


def fuss_catalan_tilting(n: int, m: int) -> int:
    """m-cluster tilting objects of A_n, i.e. labelled (m+2)-angulations of P(n+1, m)."""
    _require(n >= 1 and m >= 1, f"need n >= 1 and m >= 1, got n={n}, m={m}")
    value = Fraction(binomial((n + 1) * (m + 1), n), n + 1)
    return _exact(value, f"fuss_catalan_tilting({n}, {m})")


def u_power_coeff(s: int, t: int, i: int) -> int:
    """Degree-i coefficient of U_s(x)^t, where U_s counts s-clusters by cells."""
    _require(s >= 3 and t >= 1 and i >= 1, f"need s >= 3, t >= 1, i >= 1, got {s}, {t}, {i}")
    if i < t:
        return 0
    value = Fraction(t, i) * binomial(i * (s - 1), i - t)
    return _exact(value, f"u_power_coeff({s}, {t}, {i})")


def f_coeff(s: int, k: int) -> int:
    """Number of s-clusters with k cells rooted at a cell, up to rotation about the root."""
    _require(s >= 3 and k >= 1, f"need s >= 3 and k >= 1, got s={s}, k={k}")
    if k == 1:
        return 1
    total = Fraction(0)
    for d in divisors(gcd(s, k - 1)):
        phi = euler_phi(d)
        for t in range(1, min(s // d, (k - 1) // d) + 1):
            total += (
                Fraction(phi * d * t, s * (k - 1))
                * binomial(s // d, t)
                * binomial((s - 1) * (k - 1) // d, (k - 1) // d - t)
            )
    return _exact(total, f"f_coeff({s}, {k})")


def h_correction_coeff(s: int, k: int) -> Fraction:
    """Degree-k coefficient of (U_s(x)^2 - U_s(x^2)) / 2: clusters rooted at an inner side."""
    _require(s >= 3 and k >= 1, f"need s >= 3 and k >= 1, got s={s}, k={k}")
    value = Fraction(binomial((s - 1) * k, k - 2), k)
    if k % 2 == 0:
        half = k // 2
        value -= Fraction(binomial((s - 1) * half, half - 1), k)
    return value


def count_coloured_quivers(n: int, m: int) -> int:
    """
    Non-isomorphic coloured quivers in the m-mutation class of A_n.

    Evaluated term by term from the closed form; it must agree with
    ``f_coeff(m+2, n+1) - h_correction_coeff(m+2, n+1)``.
    """
    _require(n >= 1 and m >= 1, f"need n >= 1 and m >= 1, got n={n}, m={m}")
    s = m + 2
    total = Fraction(0)
    for d in divisors(gcd(n, s)):
        phi = euler_phi(d)
        for t in range(1, min(s // d, n // d) + 1):
            total += (
                Fraction(phi * d * t, s * n)
                * binomial(s // d, t)
                * binomial((m + 1) * n // d, n // d - t)
            )
    total -= Fraction(binomial((m + 1) * (n + 1), n - 1), n + 1)
    if (n + 1) % 2 == 0:
        total += Fraction(binomial((m + 1) * (n + 1) // 2, (n + 1) // 2 - 1), n + 1)
    count = _exact(total, f"count_coloured_quivers({n}, {m})")
    logger.debug(f"count_coloured_quivers({n}, {m}) = {count}")
    return count


def count_m1_specialization(n: int) -> int:
    """C(n+1)/(n+3) + C((n+1)/2)/2 + (2/3)C(n/3), dropping terms with non-integer index."""
    _require(n >= 2, f"the m=1 specialization needs n >= 2, got {n}")
    total = Fraction(catalan(n + 1), n + 3)
    if (n + 1) % 2 == 0:
        total += Fraction(catalan((n + 1) // 2), 2)
    if n % 3 == 0:
        total += Fraction(2, 3) * catalan(n // 3)
    return _exact(total, f"count_m1_specialization({n})")
