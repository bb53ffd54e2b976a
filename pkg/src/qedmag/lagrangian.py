"""Derivatives of the one-loop Heisenberg-Euler Lagrangian in a pure magnetic field.

All quantities are evaluated at G = 0, F = B^2/2 and expressed through the
field in critical-field units, b = B/B_cr, and h = 1/(2b).  Three routes to
B^2 L_GG are provided: the closed form in Hurwitz-zeta / gamma functions, the
real proper-time integral, and a second closed form written with zeta'(0, h).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import specfun
from .quadrature import QuadratureConfig, integrate_semi_infinite
from .specfun import CONSTANTS, DomainError, LN_2PI, bernoulli_fraction

__all__ = [
    "FieldPoint",
    "KappaCoefficients",
    "LagrangianWeights",
    "SERIES_SWITCH_H",
    "as_field_point",
    "b2_gamma_FF",
    "b2_gamma_GG_closed",
    "b2_gamma_GG_zeta0",
    "b2_gamma_GG_quadrature",
    "bracket_F",
    "bracket_FF",
    "bracket_GG",
    "gamma_F",
    "kappas",
    "proper_time_kernel",
    "weights",
]


@dataclass(frozen=True)
class FieldPoint:
    """Magnetic field strength b = B/B_cr (b = 0 is the field-free limit)."""

    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.b) and self.b >= 0):
            raise DomainError(f"field must be finite and non-negative, got b={self.b!r}")

    @property
    def h(self) -> float:
        return math.inf if self.b == 0 else 0.5 / self.b

    @classmethod
    def from_h(cls, h: float) -> "FieldPoint":
        return cls(0.5 / h)


def as_field_point(fp: FieldPoint | float) -> FieldPoint:
    return fp if isinstance(fp, FieldPoint) else FieldPoint(float(fp))


def _require_positive(fp: FieldPoint | float) -> FieldPoint:
    fp = as_field_point(fp)
    if fp.b <= 0:
        raise DomainError(f"closed forms need b > 0, got b={fp.b!r}")
    return fp


@dataclass(frozen=True)
class LagrangianWeights:
    gamma_F_red: float
    b2_gamma_FF: float
    b2_gamma_GG: float
    method: str


@dataclass(frozen=True)
class KappaCoefficients:
    kappa_s: float
    kappa_p: float
    gamma_s: float


# ---------------------------------------------------------------------------
# Closed-form brackets.  Each bracket vanishes like 1/h^2 at weak field while
# its individual terms grow like h^2 ln h, so above SERIES_SWITCH_H the
# brackets are summed from their large-h expansions with the cancelling
# pieces removed analytically.

SERIES_SWITCH_H = 6.0
_NCOEF = 24


def _b(k: int) -> Fraction:
    return bernoulli_fraction(k)


def _zeta_remainder_coef(m: int) -> Fraction:
    # coefficient of h^-2m in zeta'(-1, h) beyond 1/12 - h^2/4 + B_2(h) ln(h)/2
    return -_b(2 * m + 2) / ((2 * m + 2) * (2 * m + 1) * (2 * m))


_GG_COEF = tuple(
    float(
        8 * _zeta_remainder_coef(m)
        - 4 * _b(2 * m + 2) / ((2 * m + 2) * (2 * m + 1))
        + Fraction(2, 3) * _b(2 * m) / (2 * m)
    )
    for m in range(1, _NCOEF)
)
_FF_COEF = tuple(float(-4 * _b(2 * m + 2) / (2 * m + 1)) for m in range(1, _NCOEF))
_F_COEF = tuple(
    float(4 * _b(2 * m + 2) / ((2 * m + 2) * (2 * m + 1)) - 8 * _zeta_remainder_coef(m))
    for m in range(1, _NCOEF)
)


def _inverse_h2_series(coef: tuple[float, ...], h: float) -> float:
    # sum_m coef[m-1] h^-2m, stopped at the smallest term
    x = 1.0 / (h * h)
    p = x
    total = 0.0
    prev = math.inf
    for c in coef:
        term = c * p
        if abs(term) > prev:
            break
        total += term
        prev = abs(term)
        if prev <= 1e-17 * abs(total):
            break
        p *= x
    return total


def bracket_GG(h: float) -> float:
    """Bracket of B^2 L_GG = (alpha/2pi) * bracket."""
    if h >= SERIES_SWITCH_H:
        return _inverse_h2_series(_GG_COEF, h)
    return (
        -1.0 / 3.0
        - 2.0 / 3.0 * specfun.digamma(1.0 + h)
        - 2.0 * h * h
        + 1.0 / (3.0 * h)
        + 8.0 * specfun.hurwitz_zeta_deriv_minus1(h)
        - 4.0 * h * specfun.ln_gamma(h)
        + 2.0 * h * LN_2PI
        + 2.0 * h * math.log(h)
    )


def bracket_FF(h: float) -> float:
    """Bracket of B^2 L_FF = (alpha/2pi) * bracket."""
    if h >= SERIES_SWITCH_H:
        return _inverse_h2_series(_FF_COEF, h)
    return (
        2.0 / 3.0
        + 4.0 * h * h * specfun.digamma(1.0 + h)
        - 2.0 * h
        - 4.0 * h * h
        - 4.0 * h * specfun.ln_gamma(h)
        + 2.0 * h * LN_2PI
        - 2.0 * h * math.log(h)
    )


def bracket_F(h: float) -> float:
    """Bracket of L_F = -1 - (alpha/2pi) * bracket."""
    if h >= SERIES_SWITCH_H:
        return _inverse_h2_series(_F_COEF, h)
    return (
        1.0 / 3.0
        + 2.0 * h * h
        - 8.0 * specfun.hurwitz_zeta_deriv_minus1(h)
        + 4.0 * h * specfun.ln_gamma(h)
        - 2.0 * h * math.log(h)
        + 2.0 / 3.0 * math.log(h)
        - 2.0 * h * LN_2PI
    )


def gamma_F(fp: FieldPoint | float, alpha: float = CONSTANTS.alpha) -> float:
    """dL/dF at the field point; -1 at zero field."""
    fp = _require_positive(fp)
    return -1.0 - alpha / (2.0 * math.pi) * bracket_F(fp.h)


def b2_gamma_FF(fp: FieldPoint | float, alpha: float = CONSTANTS.alpha) -> float:
    """B^2 d^2L/dF^2."""
    fp = _require_positive(fp)
    return alpha / (2.0 * math.pi) * bracket_FF(fp.h)


def b2_gamma_GG_closed(fp: FieldPoint | float, alpha: float = CONSTANTS.alpha) -> float:
    """B^2 d^2L/dG^2 from the Hurwitz-zeta closed form."""
    fp = _require_positive(fp)
    return alpha / (2.0 * math.pi) * bracket_GG(fp.h)


# ---------------------------------------------------------------------------
# Proper-time route


def _coth_coefficients(n: int) -> tuple[float, ...]:
    # coth t = sum_k c_k t^(2k-1),  c_k = 4^k B_2k / (2k)!
    return tuple(
        float(Fraction(4**k) * bernoulli_fraction(2 * k) / math.factorial(2 * k)) for k in range(n)
    )


_COTH = _coth_coefficients(20)
# kernel = sum_m (c_m - 3(m+1) c_{m+1}) t^(2m); the m = 0 term vanishes
_KERNEL_SERIES = tuple(_COTH[m] - 3 * (m + 1) * _COTH[m + 1] for m in range(1, 18))


def proper_time_kernel(t: float) -> float:
    """-3 coth(t)/(2t) + 3/(2 sinh^2 t) + t coth(t), non-negative for t > 0."""
    if t < 0.5:
        t2 = t * t
        p = t2
        total = 0.0
        for c in _KERNEL_SERIES:
            total += c * p
            p *= t2
        return total
    coth = 1.0 / math.tanh(t)
    e = math.exp(-2.0 * t)
    inv_sinh2 = 4.0 * e / (math.expm1(-2.0 * t) ** 2)
    return -1.5 * coth / t + 1.5 * inv_sinh2 + t * coth


def b2_gamma_GG_quadrature(
    fp: FieldPoint | float,
    config: QuadratureConfig | None = None,
    alpha: float = CONSTANTS.alpha,
) -> float:
    """B^2 d^2L/dG^2 = (alpha/3pi) int_0^inf dt/t exp(-t/b) kernel(t).

    B^2/(2F) = 1 at the evaluation point, so no further prefactor appears.
    """
    fp = _require_positive(fp)
    b = fp.b
    config = config or QuadratureConfig(rel_tol=1e-12, abs_tol=1e-300)

    def integrand(t: float) -> float:
        return math.exp(-t / b) * proper_time_kernel(t) / t

    value, _ = integrate_semi_infinite(integrand, b, config)
    return alpha / (3.0 * math.pi) * value


# ---------------------------------------------------------------------------
# Third route: closed form written with zeta'(0, chi), chi = h for F >= 0.


def b2_gamma_GG_zeta0(
    fp: FieldPoint | float,
    alpha: float = CONSTANTS.alpha,
    grouping: str = "literal",
) -> float:
    """B^2 d^2L/dG^2 from the zeta'(0, chi) form.

    ``grouping="literal"`` keeps the ungrouped layout, where the digamma term is
    -(1/6)(2 psi(chi)) and 1/chi + 1 stand outside it.  ``grouping="regrouped"``
    reads the last three terms as -(1/6)(2 psi(chi) + 1/chi + 1).
    """
    fp = _require_positive(fp)
    chi = fp.h
    core = 4.0 * specfun.hurwitz_zeta_deriv_minus1(chi) - chi * (
        2.0 * specfun.zeta_deriv_zero(chi) - math.log(chi) + chi
    )
    if grouping == "literal":
        tail = -(2.0 * specfun.digamma(chi)) / 6.0 + 1.0 / chi + 1.0
    elif grouping == "regrouped":
        tail = -(2.0 * specfun.digamma(chi) + 1.0 / chi + 1.0) / 6.0
    else:
        raise ValueError(f"unknown grouping {grouping!r}")
    return alpha / math.pi * (core + tail)


# ---------------------------------------------------------------------------


def weights(
    fp: FieldPoint | float, method: str = "closed", alpha: float = CONSTANTS.alpha
) -> LagrangianWeights:
    """All three reduced derivatives at one field point; b = 0 gives the zero-field values."""
    fp = as_field_point(fp)
    if fp.b == 0:
        return LagrangianWeights(-1.0, 0.0, 0.0, method)
    if method == "closed":
        gg = b2_gamma_GG_closed(fp, alpha)
    elif method == "quadrature":
        gg = b2_gamma_GG_quadrature(fp, alpha=alpha)
    elif method == "zeta0":
        gg = b2_gamma_GG_zeta0(fp, alpha)
    else:
        raise ValueError(f"unknown method {method!r}")
    return LagrangianWeights(gamma_F(fp, alpha), b2_gamma_FF(fp, alpha), gg, method)


def kappas(
    fp: FieldPoint | float,
    alpha: float = CONSTANTS.alpha,
    convention: str = "negated",
) -> KappaCoefficients:
    """kappa_s = B^2 L_FF / gamma_s and kappa_p = B^2 L_GG / gamma_s.

    ``convention="negated"`` uses gamma_s = -L_F (about 1); ``"literal"``
    uses gamma_s = 1 - L_F (about 2).
    """
    fp = as_field_point(fp)
    if fp.b == 0:
        return KappaCoefficients(0.0, 0.0, 1.0 if convention == "negated" else 2.0)
    gf = gamma_F(fp, alpha)
    if convention == "negated":
        gamma_s = -gf
    elif convention == "literal":
        gamma_s = 1.0 - gf
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return KappaCoefficients(
        b2_gamma_FF(fp, alpha) / gamma_s, b2_gamma_GG_closed(fp, alpha) / gamma_s, gamma_s
    )
