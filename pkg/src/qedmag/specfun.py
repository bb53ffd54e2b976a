"""Real-argument special functions used by the Lagrangian and moment formulas.

Everything here is written against plain floats with the standard library
only: log-gamma, digamma and its first two derivatives, the Hurwitz zeta
function and its s-derivatives at s = 0 and s = -1, Riemann zeta at integers,
Bernoulli numbers, and the two real branches of the Lambert W function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .quadrature import QuadratureConfig, integrate_semi_infinite

__all__ = [
    "CONSTANTS",
    "Constants",
    "DEFAULT_PRECISION",
    "DomainError",
    "PrecisionConfig",
    "bernoulli_fraction",
    "bernoulli_number",
    "bernoulli_poly2",
    "digamma",
    "hurwitz_zeta",
    "hurwitz_zeta_deriv_minus1",
    "hurwitz_zeta_deriv_minus1_integral",
    "lambert_w",
    "ln_gamma",
    "polygamma",
    "riemann_zeta",
    "zeta_deriv_zero",
]

LN_2PI = math.log(2.0 * math.pi)
EULER_GAMMA = 0.57721566490153286060651209008240243
GLAISHER_A = 1.28242712910062263687534256886979172


class DomainError(ValueError):
    """Argument outside the domain where the function is defined (or implemented)."""


@dataclass(frozen=True)
class Constants:
    alpha: float = 7.2973525693e-3  # CODATA 2018
    euler_gamma: float = EULER_GAMMA
    glaisher_A: float = GLAISHER_A
    b_cr_gauss: float = 4.414e13  # display only

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 0.01:
            raise ValueError(f"alpha={self.alpha!r} outside (0, 0.01)")


CONSTANTS = Constants()


@dataclass(frozen=True)
class PrecisionConfig:
    rel_tol: float = 1e-15
    abs_tol: float = 1e-300
    series_terms_max: int = 30
    # below this argument, zeta'(-1, h) is shifted upward before the asymptotic series
    recurrence_shift_threshold: float = 8.0

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.series_terms_max < 8:
            raise ValueError("series_terms_max must be at least 8")
        if not self.recurrence_shift_threshold > 0:
            raise ValueError("recurrence_shift_threshold must be positive")


DEFAULT_PRECISION = PrecisionConfig()


# ---------------------------------------------------------------------------
# Bernoulli numbers


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0, B_0 = 1
    table = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        binom = 1
        for j in range(m):
            acc += binom * table[j]
            binom = binom * (m + 1 - j) // (j + 1)
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli_fraction(k: int) -> Fraction:
    """Exact Bernoulli number B_k (convention B_1 = -1/2)."""
    if k < 0:
        raise DomainError(f"Bernoulli index must be non-negative, got {k}")
    # grow in blocks so the cache holds a handful of tables at most
    size = max(64, 64 * ((k + 63) // 64))
    return _bernoulli_table(size)[k]


def bernoulli_number(k: int) -> float:
    """B_k for even k >= 2 as a float."""
    if k < 2 or k % 2:
        raise DomainError(f"bernoulli_number needs an even index >= 2, got {k}")
    return float(bernoulli_fraction(k))


def bernoulli_poly2(h: float) -> float:
    """Second Bernoulli polynomial h^2 - h + 1/6."""
    return h * h - h + 1.0 / 6.0


_B2K = tuple(float(bernoulli_fraction(2 * k)) for k in range(0, 40))


# ---------------------------------------------------------------------------
# Riemann zeta at integers


@lru_cache(maxsize=None)
def _borwein_d(n: int) -> tuple[int, ...]:
    d = []
    acc = 0
    for i in range(n + 1):
        acc += math.factorial(n + i - 1) * 4**i // (math.factorial(n - i) * math.factorial(2 * i))
        d.append(n * acc)
    return tuple(d)


def riemann_zeta(n: int) -> float:
    """zeta(n) for integer n >= 2.

    Uses Borwein's accelerated alternating series for the Dirichlet eta
    function, eta(n) = (1 - 2^(1-n)) zeta(n).
    """
    if int(n) != n or n < 2:
        raise DomainError(f"riemann_zeta needs an integer >= 2, got {n!r}")
    n = int(n)
    if n > 60:
        return 1.0 + 2.0**-n + 3.0**-n
    m = 28
    d = _borwein_d(m)
    dn = d[m]
    terms = [(-1) ** k * Fraction(d[k] - dn, (k + 1) ** n) for k in range(m)]
    eta = -float(sum(terms, Fraction(0)) / dn)
    return eta / (1.0 - 2.0 ** (1 - n))


def _zeta_minus_one(n: int) -> float:
    # zeta(n) - 1 without cancellation
    if n >= 12:
        return math.fsum(k**-float(n) for k in range(2, 40))
    return riemann_zeta(n) - 1.0


_ZETA = (math.nan, math.nan) + tuple(riemann_zeta(k) for k in range(2, 64))
_ZETA_M1 = (math.nan, math.nan) + tuple(_zeta_minus_one(k) for k in range(2, 64))


# ---------------------------------------------------------------------------
# Gamma family


def _lngamma_near_one(z: float) -> float:
    # ln Gamma(1+z) = -gamma z + sum_{k>=2} zeta(k) (-z)^k / k, |z| <= 1/2
    s = 0.0
    p = -z
    for k in range(2, 64):
        p *= -z
        term = _ZETA[k] * p / k
        s += term
        if abs(term) < 1e-18 * abs(s):
            break
    return -EULER_GAMMA * z + s


def _lngamma_near_two(z: float) -> float:
    # ln Gamma(2+z) = (1-gamma) z + sum_{k>=2} (zeta(k)-1) (-z)^k / k, |z| <= 1/2
    s = 0.0
    p = -z
    for k in range(2, 64):
        p *= -z
        term = _ZETA_M1[k] * p / k
        s += term
        if abs(term) < 1e-18 * abs(s):
            break
    return (1.0 - EULER_GAMMA) * z + s


def _lngamma_stirling(x: float) -> float:
    s = 0.0
    xinv2 = 1.0 / (x * x)
    p = 1.0 / x
    for k in range(1, 12):
        term = _B2K[k] / (2 * k * (2 * k - 1)) * p
        s += term
        if abs(term) < 1e-17 * abs(s):
            break
        p *= xinv2
    return (x - 0.5) * math.log(x) - x + 0.5 * LN_2PI + s


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not x > 0:
        raise DomainError(f"ln_gamma needs x > 0, got {x!r}")
    if x < 0.5:
        return _lngamma_near_one(x) - math.log(x)
    if x < 1.5:
        return _lngamma_near_one(x - 1.0)
    if x < 2.5:
        return _lngamma_near_two(x - 2.0)
    if x < 13.0:
        # walk down into [1.5, 2.5)
        prod = 1.0
        while x >= 2.5:
            x -= 1.0
            prod *= x
        return math.log(prod) + _lngamma_near_two(x - 2.0)
    return _lngamma_stirling(x)


_SHIFT = 15.0


def digamma(x: float) -> float:
    """psi(x) = d/dx ln Gamma(x), x > 0."""
    if not x > 0:
        raise DomainError(f"digamma needs x > 0, got {x!r}")
    acc = 0.0
    while x < _SHIFT:
        acc -= 1.0 / x
        x += 1.0
    xinv2 = 1.0 / (x * x)
    p = xinv2
    s = 0.0
    for k in range(1, 12):
        s += _B2K[k] / (2 * k) * p
        p *= xinv2
    return acc + math.log(x) - 0.5 / x - s


def polygamma(n: int, x: float) -> float:
    """n-th derivative of digamma for n in {1, 2}, x > 0."""
    if n not in (1, 2):
        raise DomainError(f"polygamma implemented for n in {{1, 2}}, got {n!r}")
    if not x > 0:
        raise DomainError(f"polygamma needs x > 0, got {x!r}")
    acc = 0.0
    if n == 1:
        while x < _SHIFT:
            acc += 1.0 / (x * x)
            x += 1.0
        xinv = 1.0 / x
        xinv2 = xinv * xinv
        p = xinv2 * xinv
        s = 0.0
        for k in range(1, 12):
            s += _B2K[k] * p
            p *= xinv2
        return acc + xinv + 0.5 * xinv2 + s
    while x < _SHIFT:
        acc -= 2.0 / (x * x * x)
        x += 1.0
    xinv = 1.0 / x
    xinv2 = xinv * xinv
    p = xinv2 * xinv2
    s = 0.0
    for k in range(1, 12):
        s += (2 * k + 1) * _B2K[k] * p
        p *= xinv2
    return acc - xinv2 - xinv2 * xinv - s


# ---------------------------------------------------------------------------
# Hurwitz zeta and its s-derivatives


def hurwitz_zeta(s: float, h: float, precision: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """zeta(s, h) = sum_{n>=0} (n+h)^-s for s > 1, h > 0 (Euler-Maclaurin)."""
    if not s > 1:
        raise DomainError(f"hurwitz_zeta needs s > 1, got {s!r}")
    if not h > 0:
        raise DomainError(f"hurwitz_zeta needs h > 0, got {h!r}")
    n_direct = max(0, math.ceil(16.0 - h))
    direct = math.fsum((h + k) ** -s for k in range(n_direct))
    a = h + n_direct
    tail = a ** (1.0 - s) / (s - 1.0) + 0.5 * a**-s
    # B_2k/(2k)! * s(s+1)...(s+2k-2) * a^(-s-2k+1)
    rising = s
    fact = 2.0
    p = a ** (-s - 1.0)
    ainv2 = 1.0 / (a * a)
    corr = 0.0
    for k in range(1, precision.series_terms_max):
        term = _B2K[k] / fact * rising * p
        corr += term
        if abs(term) <= precision.rel_tol * abs(tail + corr):
            break
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        fact *= (2 * k + 1) * (2 * k + 2)
        p *= ainv2
    return direct + tail + corr


def _zeta_m1_asymptotic(h: float, precision: PrecisionConfig) -> float:
    # 1/12 - h^2/4 + B_2(h) ln(h)/2 - sum_k B_{2k+2} / ((2k+2)(2k+1)(2k) h^{2k})
    hinv2 = 1.0 / (h * h)
    p = hinv2
    s = 0.0
    prev = math.inf
    for k in range(1, precision.series_terms_max):
        term = -_B2K[k + 1] / ((2 * k + 2) * (2 * k + 1) * (2 * k)) * p
        if abs(term) > prev:
            break
        s += term
        prev = abs(term)
        if prev < 1e-17 * h * h:
            break
        p *= hinv2
    return 1.0 / 12.0 - 0.25 * h * h + 0.5 * math.log(h) * bernoulli_poly2(h) + s


def hurwitz_zeta_deriv_minus1(h: float, precision: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """zeta'(-1, h) = d/ds zeta(s, h) at s = -1, for h > 0.

    Large h: asymptotic series in 1/h^2 whose first correction is 1/(720 h^2).
    Small h: shifted up with zeta'(-1, h+1) - zeta'(-1, h) = h ln h.
    """
    if not h > 0:
        raise DomainError(f"hurwitz_zeta_deriv_minus1 needs h > 0, got {h!r}")
    threshold = precision.recurrence_shift_threshold
    if h >= threshold:
        return _zeta_m1_asymptotic(h, precision)
    n = math.ceil(threshold - h)
    steps = math.fsum((h + j) * math.log(h + j) for j in range(n))
    return _zeta_m1_asymptotic(h + n, precision) - steps


def _bernoulli_remainder_over_x2(x: float) -> float:
    # (1/(1-e^-x) - 1/x - 1/2 - x/12) / x^2
    if x < 0.5:
        # sum_{k>=2} B_2k x^(2k-3) / (2k)!
        x2 = x * x
        p = x
        fact = 24.0
        s = 0.0
        for k in range(2, 14):
            s += _B2K[k] / fact * p
            p *= x2
            fact *= (2 * k + 1) * (2 * k + 2)
        return s
    return (-1.0 / math.expm1(-x) - 1.0 / x - 0.5 - x / 12.0) / (x * x)


def hurwitz_zeta_deriv_minus1_integral(
    h: float, config: QuadratureConfig | None = None
) -> float:
    """zeta'(-1, h) from its integral representation (independent of the series route).

    zeta'(-1, h) = 1/12 - h^2/4 + B_2(h) ln(h)/2
                   - int_0^inf e^{-hx} x^-2 (1/(1-e^-x) - 1/x - 1/2 - x/12) dx
    """
    if not h > 0:
        raise DomainError(f"hurwitz_zeta_deriv_minus1_integral needs h > 0, got {h!r}")
    config = config or QuadratureConfig(rel_tol=1e-13, abs_tol=1e-17)

    def integrand(x: float) -> float:
        return math.exp(-h * x) * _bernoulli_remainder_over_x2(x)

    value, _ = integrate_semi_infinite(integrand, 1.0 / h, config)
    return 1.0 / 12.0 - 0.25 * h * h + 0.5 * math.log(h) * bernoulli_poly2(h) - value


def zeta_deriv_zero(h: float) -> float:
    """zeta'(0, h) = ln Gamma(h) - ln(2 pi)/2 (Lerch)."""
    if not h > 0:
        raise DomainError(f"zeta_deriv_zero needs h > 0, got {h!r}")
    return ln_gamma(h) - 0.5 * LN_2PI


# ---------------------------------------------------------------------------
# Lambert W

_INV_E = math.exp(-1.0)


def _lambert_initial(branch: int, z: float) -> float:
    if z + _INV_E < 0.3:
        # expansion about the branch point -1/e
        p = math.sqrt(max(0.0, 2.0 * (math.e * z + 1.0)))
        if branch == -1:
            p = -p
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p**3
    if branch == 0:
        if z < 3.0:
            return z / (1.0 + z) if z > -0.3 else z
        lz = math.log(z)
        return lz - math.log(lz)
    l1 = math.log(-z)
    l2 = math.log(-l1)
    return l1 - l2 + l2 / l1


def lambert_w(branch: int, z: float) -> float:
    """Real branch W_0 (z >= -1/e) or W_-1 (-1/e <= z < 0) of w e^w = z."""
    if branch not in (0, -1):
        raise DomainError(f"lambert_w implements branches 0 and -1, got {branch!r}")
    if not math.isfinite(z):
        raise DomainError(f"lambert_w needs finite z, got {z!r}")
    # tolerate roundoff just below the branch point
    if z < -_INV_E:
        if z < -_INV_E * (1.0 + 4 * 2.2e-16):
            raise DomainError(f"lambert_w undefined for z < -1/e, got {z!r}")
        z = -_INV_E
    if branch == -1 and z >= 0.0:
        raise DomainError(f"W_-1 needs -1/e <= z < 0, got {z!r}")
    if z == 0.0:
        return 0.0
    if z == -_INV_E:
        return -1.0
    w = _lambert_initial(branch, z)
    if abs(w) > 30.0:
        # e^w would under/overflow: Newton on w + ln|w| = ln|z| instead
        target = math.log(abs(z))
        for _ in range(64):
            dw = (w + math.log(abs(w)) - target) / (1.0 + 1.0 / w)
            w -= dw
            if abs(dw) <= 4e-16 * abs(w):
                break
        return w
    for _ in range(64):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 4e-16 * (1.0 + abs(w)):
            break
    return w
