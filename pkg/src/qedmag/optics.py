"""Refractive indices of the magnetized vacuum, birefringence and Faraday rotation.

Indices are returned as RefractionResult records.  Everything is in reduced
units: the field as b = B/B_cr, momenta in units of the electron mass, and
lengths in reduced Compton wavelengths 1/m.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from . import lagrangian, specfun
from .lagrangian import FieldPoint, as_field_point
from .specfun import CONSTANTS, EULER_GAMMA, GLAISHER_A, DomainError, LN_2PI

__all__ = [
    "GroupVelocity",
    "Method",
    "Mode",
    "PhotonKinematics",
    "RefractionResult",
    "STRONG_SERIES_MIN_XI",
    "WEAK_SERIES_MAX_XI",
    "delta_n",
    "delta_n_series",
    "faraday_rotation",
    "group_velocity",
    "hu_v_perp_sq",
    "n_parallel_exact",
    "n_parallel_kappa",
    "n_perp_exact",
    "n_perp_strong_series",
    "n_perp_weak_series",
    "v_perp",
    "v_perp_sq_lower_bound",
]

WEAK_SERIES_MAX_XI = 0.44
STRONG_SERIES_MIN_XI = 0.5
HU_MIN_B = 10.0


class Mode(str, enum.Enum):
    PARALLEL = "parallel"
    PERPENDICULAR = "perpendicular"


class Method(str, enum.Enum):
    EXACT = "exact"
    WEAK_SERIES = "weak_series"
    STRONG_SERIES = "strong_series"
    KAPPA = "kappa"


@dataclass(frozen=True)
class PhotonKinematics:
    """Photon momentum |k|/m, angle theta between B and k, and path length in units of 1/m."""

    k_over_m: float = 0.1
    theta: float = math.pi / 2
    path_length: float = 0.0

    def __post_init__(self) -> None:
        if not self.k_over_m >= 0:
            raise DomainError(f"k_over_m must be >= 0, got {self.k_over_m!r}")
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not self.path_length >= 0:
            raise DomainError(f"path_length must be >= 0, got {self.path_length!r}")

    @property
    def sin2(self) -> float:
        return math.sin(self.theta) ** 2

    @property
    def low_energy(self) -> bool:
        """True when |k| is well below the electron mass (|k|/m < 1)."""
        return self.k_over_m < 1.0


DEFAULT_KINEMATICS = PhotonKinematics()


@dataclass(frozen=True)
class RefractionResult:
    mode: Mode
    n: float
    method: Method
    in_validity_domain: bool
    details: dict[str, float] = field(default_factory=dict, compare=False)


def _kin(kin: PhotonKinematics | None) -> PhotonKinematics:
    return DEFAULT_KINEMATICS if kin is None else kin


def n_parallel_exact(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> RefractionResult:
    """n_par = 1 + (1/2) B^2 L_FF sin^2(theta), trusted up to b = pi/alpha."""
    fp = as_field_point(fp)
    kin = _kin(kin)
    if fp.b <= 0:
        raise DomainError(f"n_parallel_exact needs b > 0, got {fp.b!r}")
    n = 1.0 + 0.5 * lagrangian.b2_gamma_FF(fp, alpha) * kin.sin2
    return RefractionResult(Mode.PARALLEL, n, Method.EXACT, fp.b <= math.pi / alpha)


def n_parallel_kappa(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> RefractionResult:
    """n_par = 1/sqrt(1 - kappa_s sin^2 theta), with its binomial approximation in details."""
    fp = as_field_point(fp)
    kin = _kin(kin)
    kap = lagrangian.kappas(fp, alpha)
    x = kap.kappa_s * kin.sin2
    if x >= 1.0:
        raise DomainError(f"kappa_s sin^2(theta) = {x!r} >= 1")
    n = 1.0 / math.sqrt(1.0 - x)
    binomial = 1.0 + 0.5 * x
    return RefractionResult(
        Mode.PARALLEL,
        n,
        Method.KAPPA,
        True,
        {"binomial": binomial, "difference": n - binomial, "kappa_s": kap.kappa_s},
    )


def n_perp_exact(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> RefractionResult:
    """n_perp = 1 + (1/2) B^2 L_GG sin^2(theta).

    details carries sqrt(1 + kappa_p), the form at theta = pi/2, and the
    general-angle kappa form sqrt((1 + kappa_p)/(1 + kappa_s cos^2 theta)).
    The latter does not reduce to 1 at theta = 0 and is reported only.
    """
    fp = as_field_point(fp)
    kin = _kin(kin)
    if fp.b <= 0:
        raise DomainError(f"n_perp_exact needs b > 0, got {fp.b!r}")
    n = 1.0 + 0.5 * lagrangian.b2_gamma_GG_closed(fp, alpha) * kin.sin2
    kap = lagrangian.kappas(fp, alpha)
    cos2 = math.cos(kin.theta) ** 2
    details = {
        "sqrt_kappa": math.sqrt(1.0 + kap.kappa_p),
        "kappa_general_angle": math.sqrt((1.0 + kap.kappa_p) / (1.0 + kap.kappa_s * cos2)),
        "kappa_p": kap.kappa_p,
    }
    return RefractionResult(Mode.PERPENDICULAR, n, Method.EXACT, True, details)


def _weak_coefficient(j: int) -> float:
    # -(1/3) 4^j (6 B_{2j+2} - (2j+1) B_{2j}) / (j (2j+1)); j = 1 gives 14/45
    b_hi = specfun.bernoulli_fraction(2 * j + 2)
    b_lo = specfun.bernoulli_fraction(2 * j)
    return float(-(4**j) * (6 * b_hi - (2 * j + 1) * b_lo) / (3 * j * (2 * j + 1)))


def n_perp_weak_series(
    fp: FieldPoint | float,
    kin: PhotonKinematics | None = None,
    J: int = 8,
    alpha: float = CONSTANTS.alpha,
) -> RefractionResult:
    """Weak-field power series in xi = b, through xi^(2J).

    The series is asymptotic: summation stops early once terms start growing.
    """
    fp = as_field_point(fp)
    kin = _kin(kin)
    if J < 1:
        raise ValueError("J must be at least 1")
    xi = fp.b
    x2 = xi * xi
    p = x2
    total = 0.0
    prev = math.inf
    used = 0
    for j in range(1, J + 1):
        term = _weak_coefficient(j) * p
        if abs(term) > prev:
            break
        total += term
        prev = abs(term)
        used = j
        p *= x2
    n = 1.0 + alpha / (4.0 * math.pi) * kin.sin2 * total
    return RefractionResult(
        Mode.PERPENDICULAR,
        n,
        Method.WEAK_SERIES,
        xi <= WEAK_SERIES_MAX_XI,
        {"terms_used": float(used)},
    )


def n_perp_strong_series(
    fp: FieldPoint | float,
    kin: PhotonKinematics | None = None,
    J: int = 12,
    alpha: float = CONSTANTS.alpha,
) -> RefractionResult:
    """Strong-field expansion in 1/xi, truncated after the xi^-J term.

    Tail terms (j >= 3) are (-1)^j 2^(2-j) [(j-2)/(j(j-1)) zeta(j-1) + zeta(j+1)/6] xi^-j.
    Converges for xi > 1/2.
    """
    fp = as_field_point(fp)
    kin = _kin(kin)
    xi = fp.b
    if xi <= 0:
        raise DomainError(f"strong-field series needs b > 0, got {xi!r}")
    total = (
        2.0 / 3.0 * xi
        - (8.0 * math.log(GLAISHER_A) - 1.0 / 3.0 - 2.0 / 3.0 * EULER_GAMMA)
        - (math.log(math.pi) + math.pi**2 / 18.0 - 2.0 - math.log(xi)) / xi
        + (0.5 + specfun.riemann_zeta(3) / 6.0) / (xi * xi)
    )
    for j in range(3, J + 1):
        coef = (j - 2) / (j * (j - 1)) * specfun.riemann_zeta(j - 1) + specfun.riemann_zeta(j + 1) / 6.0
        total -= (-1) ** (j - 1) / 2.0 ** (j - 2) * coef * xi**-j
    n = 1.0 + alpha / (4.0 * math.pi) * kin.sin2 * total
    return RefractionResult(Mode.PERPENDICULAR, n, Method.STRONG_SERIES, xi > STRONG_SERIES_MIN_XI)


def delta_n(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> float:
    """n_perp - n_par from the exact indices; 0 at b = 0."""
    fp = as_field_point(fp)
    kin = _kin(kin)
    if fp.b == 0:
        return 0.0
    # difference of the brackets first, so nothing is lost to the leading 1
    diff = lagrangian.b2_gamma_GG_closed(fp, alpha) - lagrangian.b2_gamma_FF(fp, alpha)
    return 0.5 * diff * kin.sin2


def delta_n_series(
    fp: FieldPoint | float,
    kin: PhotonKinematics | None = None,
    J: int = 8,
    alpha: float = CONSTANTS.alpha,
) -> dict[str, float]:
    """Closed-form-plus-series expression for n_perp - n_par in h, term by term as published.

    Diagnostic only: returns the series value, the exact difference and their
    deviation.  The j-sum is read as a product of the sign factor and the
    braced group, truncated at J.
    """
    fp = as_field_point(fp)
    kin = _kin(kin)
    if fp.b <= 0:
        raise DomainError(f"delta_n_series needs b > 0, got {fp.b!r}")
    h = fp.h
    zeta3 = specfun.riemann_zeta(3)
    total = (
        1.0 / (3.0 * h)
        - (8.0 * math.log(GLAISHER_A) - 1.0 / 3.0 - 2.0 / 3.0 * EULER_GAMMA)
        - 2.0 * h * (math.log(math.pi) + math.pi**2 / 18.0 - 2.0 + math.log(2.0 * h))
        + 2.0 * h * h
        + 2.0 / 3.0 * zeta3 * h * h
    )
    for j in range(3, J + 1):
        group = (j - 2) + specfun.riemann_zeta(j + 1) / 6.0 + h**j / (2.0 * j)
        total -= (-1) ** (j - 1) / 2.0 ** (j - 2) * group
    total += (
        2.0 / 3.0 * math.log1p(h)
        - 1.0 / (3.0 * (1.0 + h))
        - 2.0 / 3.0
        - 2.0 / 3.0 * math.log(h)
        - 22.0 / 48.0 / (h * h)
    )
    series = alpha / (4.0 * math.pi) * total * kin.sin2
    exact = delta_n(fp, kin, alpha)
    return {"series": series, "exact": exact, "deviation": series - exact}


def faraday_rotation(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> float:
    """Rotation angle chi = (|k|/m) * delta_n * l in radians."""
    kin = _kin(kin)
    return kin.k_over_m * delta_n(fp, kin, alpha) * kin.path_length


# ---------------------------------------------------------------------------
# Group velocity of the perpendicular mode


@dataclass(frozen=True)
class GroupVelocity:
    v_perp: float
    v_perp_sq: float
    lower_bound_sq: float
    hu_sq: float
    hu_regime: bool


def v_perp(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> float:
    """1/n_perp with c = 1; equals 1 at b = 0."""
    fp = as_field_point(fp)
    if fp.b == 0:
        return 1.0
    return 1.0 / n_perp_exact(fp, kin, alpha).n


def v_perp_sq_lower_bound(fp: FieldPoint | float, alpha: float = CONSTANTS.alpha) -> float:
    """Claimed lower bound 1/(1 + (alpha/4pi)(2/3 - 2h ln h + 2h ln 2pi))^2 on v_perp^2."""
    fp = as_field_point(fp)
    if fp.b <= 0:
        raise DomainError(f"v_perp_sq_lower_bound needs b > 0, got {fp.b!r}")
    h = fp.h
    return 1.0 / (1.0 + alpha / (4.0 * math.pi) * (2.0 / 3.0 - 2.0 * h * math.log(h) + 2.0 * h * LN_2PI)) ** 2


def hu_v_perp_sq(fp: FieldPoint | float, alpha: float = CONSTANTS.alpha) -> float:
    """Ultra-strong-field estimate of v_perp^2 at theta = pi/2, with e^2 = 4 pi alpha.

    Only meaningful for b well above 1; see HU_MIN_B.
    """
    fp = as_field_point(fp)
    if fp.b <= 0:
        raise DomainError(f"hu_v_perp_sq needs b > 0, got {fp.b!r}")
    c = 4.0 * math.pi * alpha / (12.0 * math.pi**2)
    lb = math.log(fp.b)
    return (1.0 - c * (lb - 0.79)) / (1.0 - c * (lb - 1.79))


def group_velocity(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> GroupVelocity:
    fp = as_field_point(fp)
    v = v_perp(fp, kin, alpha)
    if fp.b == 0:
        return GroupVelocity(1.0, 1.0, 1.0, math.nan, False)
    return GroupVelocity(
        v, v * v, v_perp_sq_lower_bound(fp, alpha), hu_v_perp_sq(fp, alpha), fp.b >= HU_MIN_B
    )
