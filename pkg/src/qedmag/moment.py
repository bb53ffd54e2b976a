"""Anomalous magnetic moment of a perpendicular-mode photon.

The reduced moment mu_hat is the field derivative of (1/2) B^2 L_GG, i.e.
minus the field derivative of the per-photon energy shift divided by
(|k|/m) sin^2(theta).  It includes the alpha/4pi prefactor.  In Bohr
magnetons the physical moment is 2 * mu_hat * (|k|/m) * sin^2(theta).
"""
from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass, field

from . import lagrangian, specfun
from .lagrangian import FieldPoint, as_field_point
from .optics import DEFAULT_KINEMATICS, PhotonKinematics
from .specfun import CONSTANTS, DomainError, LN_2PI

__all__ = [
    "C1",
    "ELECTRON_MOMENT_BOUND",
    "MAX_TRUSTED_B",
    "DerivativeReport",
    "HamiltonianPoint",
    "MomentMethod",
    "MomentResult",
    "asymptote",
    "derivative_checks",
    "electron_moment_comparison",
    "hamiltonian_expectation",
    "invert_all_branches",
    "invert_b_from_mu",
    "mu_bohr_to_reduced",
    "mu_exact",
    "mu_hurwitz",
    "mu_strong",
    "mu_weak",
    "zeta_m1_field_derivative",
]

C1 = math.log(math.pi) + math.pi**2 / 18.0 - 1.0
MAX_TRUSTED_B = 30.0
WEAK_MAX_B = 0.44
STRONG_MIN_B = 0.5
ELECTRON_MOMENT_BOUND = 7.7e-4  # Bohr magnetons


class MomentMethod(str, enum.Enum):
    EXACT = "exact"
    WEAK = "weak"
    STRONG = "strong"
    HURWITZ = "hurwitz"


@dataclass(frozen=True)
class MomentResult:
    mu_reduced: float
    method: MomentMethod
    in_validity_domain: bool
    kinematics: PhotonKinematics = field(default=DEFAULT_KINEMATICS, compare=False)

    @property
    def mu_bohr(self) -> float:
        return 2.0 * self.mu_reduced * self.kinematics.k_over_m * self.kinematics.sin2


def asymptote(alpha: float = CONSTANTS.alpha) -> float:
    """Large-field limit (alpha/4pi)(2/3) of the reduced moment."""
    return alpha / (4.0 * math.pi) * 2.0 / 3.0


def _kin(kin: PhotonKinematics | None) -> PhotonKinematics:
    return DEFAULT_KINEMATICS if kin is None else kin


# d/db of sum_m c_m (2b)^(2m), used where the closed form cancels badly
_DGG_COEF = tuple(c * 2 * m * 4**m for m, c in enumerate(lagrangian._GG_COEF, start=1))


def _brace_weak(b: float) -> float:
    x = b * b
    p = b
    total = 0.0
    prev = math.inf
    for c in _DGG_COEF:
        term = c * p
        if abs(term) > prev:
            break
        total += term
        prev = abs(term)
        if prev <= 1e-17 * abs(total):
            break
        p *= x
    return total


def _brace(b: float) -> float:
    # 2/3 + b^-3 [ (b/3) psi'(1+h) + psi(h) - 2b lnGamma(h) + b ln 2pi + b + b ln 2b - 1 ]
    h = 0.5 / b
    if h >= lagrangian.SERIES_SWITCH_H:
        return _brace_weak(b)
    inner = (
        b / 3.0 * specfun.polygamma(1, 1.0 + h)
        + specfun.digamma(h)
        - 2.0 * b * specfun.ln_gamma(h)
        + b * LN_2PI
        + b
        + b * math.log(2.0 * b)
        - 1.0
    )
    return 2.0 / 3.0 + inner / b**3


def mu_exact(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> MomentResult:
    """Reduced moment from the digamma / log-gamma closed form; exact at one loop."""
    fp = as_field_point(fp)
    kin = _kin(kin)
    if fp.b <= 0:
        raise DomainError(f"mu_exact needs b > 0, got {fp.b!r}; the zero-field limit is 0")
    mu = alpha / (4.0 * math.pi) * _brace(fp.b)
    return MomentResult(mu, MomentMethod.EXACT, fp.b <= MAX_TRUSTED_B, kin)


def mu_weak(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> MomentResult:
    """(alpha/4pi)(28/45)(b - (52/49) b^3); a lower bound on the exact moment for b <= 0.44."""
    fp = as_field_point(fp)
    b = fp.b
    mu = alpha / (4.0 * math.pi) * 28.0 / 45.0 * (b - 52.0 / 49.0 * b**3)
    return MomentResult(mu, MomentMethod.WEAK, b <= WEAK_MAX_B, _kin(kin))


def mu_strong(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> MomentResult:
    """(alpha/4pi)[2/3 + (c1 - ln b)/b^2], c1 = ln pi + pi^2/18 - 1."""
    fp = as_field_point(fp)
    b = fp.b
    if b <= 0:
        raise DomainError(f"mu_strong needs b > 0, got {b!r}")
    mu = alpha / (4.0 * math.pi) * (2.0 / 3.0 + (C1 - math.log(b)) / (b * b))
    return MomentResult(mu, MomentMethod.STRONG, b > STRONG_MIN_B, _kin(kin))


def mu_hurwitz(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> MomentResult:
    """Hurwitz-zeta rewriting of the moment, with coefficients as published.

    zeta(1, a) diverges; it is replaced by its finite part, the constant
    term -psi(a) of the Laurent expansion about s = 1.  With that reading the
    expression exceeds mu_exact by (alpha/4pi)(psi'(1+h)/(3b^2) + 2/b^2), so
    it is flagged as outside its validity domain and kept for comparison.
    """
    fp = as_field_point(fp)
    b = fp.b
    if b <= 0:
        raise DomainError(f"mu_hurwitz needs b > 0, got {b!r}")
    h = 0.5 / b
    a = 1.0 + h
    zeta1_finite = -specfun.digamma(a)
    inner = (
        2.0 / 3.0 * b * specfun.hurwitz_zeta(2.0, a)
        - zeta1_finite
        - 2.0 * b * specfun.ln_gamma(h)
        + b * (LN_2PI + 1.0 - math.log(h))
        - 1.0
    )
    mu = alpha / (4.0 * math.pi) * (2.0 / 3.0 + inner / b**3)
    return MomentResult(mu, MomentMethod.HURWITZ, False, _kin(kin))


# ---------------------------------------------------------------------------
# Inversion of the strong-field form through Lambert W


def mu_bohr_to_reduced(mu_bohr: float, kin: PhotonKinematics) -> float:
    factor = 2.0 * kin.k_over_m * kin.sin2
    if factor == 0:
        raise DomainError("moment is identically zero for k = 0 or theta in {0, pi}")
    return mu_bohr / factor


def _lambert_argument(mu_reduced: float, alpha: float) -> float:
    # (c1 - ln b) / b^2 = mu_n; with u = c1 - ln b:  2u e^{2u} = 2 e^{2 c1} mu_n
    mu_n = 4.0 * math.pi / alpha * mu_reduced - 2.0 / 3.0
    if abs(mu_n) <= 8 * sys.float_info.epsilon:
        # the asymptote itself, up to rounding in the unit conversion
        mu_n = 0.0
    return 2.0 * math.exp(2.0 * C1) * mu_n


def invert_b_from_mu(
    mu_reduced: float, branch: int = 0, alpha: float = CONSTANTS.alpha
) -> FieldPoint:
    """Field b at which the strong-field moment equals mu_reduced, on Lambert branch 0 or -1.

    b = exp(c1 - W(z)/2) with z = 2 e^{2 c1} [(4pi/alpha) mu - 2/3].  Branch 0
    covers b <= exp(c1 + 1/2), branch -1 the larger root.  Below the
    asymptote both exist; above it only branch 0 does.
    """
    z = _lambert_argument(mu_reduced, alpha)
    try:
        w = specfun.lambert_w(branch, z)
    except DomainError as exc:
        raise DomainError(
            f"no finite solution on branch {branch} for mu_reduced={mu_reduced!r} (z={z!r}): {exc}"
        ) from exc
    return FieldPoint(math.exp(C1 - 0.5 * w))


def invert_all_branches(
    mu_reduced: float, alpha: float = CONSTANTS.alpha
) -> dict[int, FieldPoint | None]:
    """Both inverse branches; None where a branch has no real solution."""
    out: dict[int, FieldPoint | None] = {}
    for branch in (0, -1):
        try:
            out[branch] = invert_b_from_mu(mu_reduced, branch, alpha)
        except DomainError:
            out[branch] = None
    return out


def branch_for(b: float) -> int:
    """Lambert branch on which the strong-field inversion returns b."""
    return 0 if b <= math.exp(C1 + 0.5) else -1


# ---------------------------------------------------------------------------
# Per-photon energy


@dataclass(frozen=True)
class HamiltonianPoint:
    """Per-photon energy in units of |k|; ``shift`` is h_reduced - 1 computed without the leading 1."""

    b: float
    h_reduced: float
    shift: float


def hamiltonian_expectation(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> HamiltonianPoint:
    """1 - (1/2) B^2 L_GG sin^2(theta), the perpendicular-mode energy per photon."""
    fp = as_field_point(fp)
    kin = _kin(kin)
    if fp.b == 0:
        return HamiltonianPoint(0.0, 1.0, 0.0)
    shift = -0.5 * lagrangian.b2_gamma_GG_closed(fp, alpha) * kin.sin2
    return HamiltonianPoint(fp.b, 1.0 + shift, shift)


# ---------------------------------------------------------------------------
# Derivative and sign checks


def zeta_m1_field_derivative(b: float) -> float:
    """Analytic d/db zeta'(-1, 1/(2b)) = (-lnGamma(h) + ln(2pi)/2 - h + 1/2) / (2 b^2)."""
    h = 0.5 / b
    return 0.5 * (-specfun.ln_gamma(h) + 0.5 * LN_2PI - h + 0.5) / (b * b)


def central_difference(f, x: float, step: float) -> float:
    """Fourth-order five-point central difference."""
    return (-f(x + 2 * step) + 8 * f(x + step) - 8 * f(x - step) + f(x - 2 * step)) / (12 * step)


def second_difference(f, x: float, step: float) -> float:
    """Fourth-order five-point second derivative."""
    return (
        -f(x + 2 * step) + 16 * f(x + step) - 30 * f(x) + 16 * f(x - step) - f(x - 2 * step)
    ) / (12 * step * step)


@dataclass
class DerivativeReport:
    points: int = 0
    min_dmu_db: float = math.inf
    max_d2h_db2: float = -math.inf
    min_lower_bound_margin: float = math.inf
    max_zeta_identity_error: float = 0.0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def derivative_checks(
    grid,
    kin: PhotonKinematics | None = None,
    alpha: float = CONSTANTS.alpha,
    identity_tol: float = 1e-6,
) -> DerivativeReport:
    """Finite-difference checks of the moment's sign structure on a grid in (0, 30].

    (i) dmu/db > 0; (ii) the per-photon energy is concave; (iii) on b <= 0.44,
    dmu/db >= (alpha/4pi)(28/45 - (156/49) b^2); (iv) the analytic derivative
    of zeta'(-1, 1/(2b)) matches a central difference to identity_tol.
    """
    kin = _kin(kin)
    rep = DerivativeReport()
    pref = alpha / (4.0 * math.pi)

    def mu(x: float) -> float:
        return mu_exact(x, kin, alpha).mu_reduced

    def energy(x: float) -> float:
        return hamiltonian_expectation(x, kin, alpha).shift

    def zeta_m1(x: float) -> float:
        return specfun.hurwitz_zeta_deriv_minus1(0.5 / x)

    for b in grid:
        b = float(b)
        if not 0 < b <= MAX_TRUSTED_B:
            raise DomainError(f"grid point {b!r} outside (0, 30]")
        step = 1e-3 * b
        rep.points += 1
        dmu = central_difference(mu, b, step)
        rep.min_dmu_db = min(rep.min_dmu_db, dmu)
        if not dmu > 0:
            rep.violations.append(f"dmu/db = {dmu:.3e} <= 0 at b = {b:.6g}")
        d2h = second_difference(energy, b, step)
        rep.max_d2h_db2 = max(rep.max_d2h_db2, d2h)
        if d2h > 0:
            rep.violations.append(f"d2H/db2 = {d2h:.3e} > 0 at b = {b:.6g}")
        if b <= WEAK_MAX_B:
            margin = dmu - pref * (28.0 / 45.0 - 156.0 / 49.0 * b * b)
            rep.min_lower_bound_margin = min(rep.min_lower_bound_margin, margin)
            if margin < 0:
                rep.violations.append(f"lower bound on dmu/db violated by {-margin:.3e} at b = {b:.6g}")
        analytic = zeta_m1_field_derivative(b)
        numeric = central_difference(zeta_m1, b, step)
        err = abs(analytic - numeric) / max(abs(analytic), 1e-300)
        rep.max_zeta_identity_error = max(rep.max_zeta_identity_error, err)
        if err > identity_tol:
            rep.violations.append(f"zeta'(-1) derivative identity off by {err:.3e} at b = {b:.6g}")
    return rep


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ElectronComparison:
    mu_gamma_bohr: float
    electron_anomaly_bohr: float
    ratio: float
    asymptotic_ratio: float
    asymptote_bohr: float
    experimental_bound_bohr: float


def electron_moment_comparison(
    fp: FieldPoint | float, kin: PhotonKinematics | None = None, alpha: float = CONSTANTS.alpha
) -> ElectronComparison:
    """Photon moment next to the electron's one-loop anomaly alpha/2pi, both in Bohr magnetons."""
    kin = _kin(kin)
    mu = mu_exact(fp, kin, alpha).mu_bohr
    electron = alpha / (2.0 * math.pi)
    asym = 2.0 * asymptote(alpha)
    return ElectronComparison(
        mu_gamma_bohr=mu,
        electron_anomaly_bohr=electron,
        ratio=mu / electron,
        asymptotic_ratio=asym / electron,
        asymptote_bohr=asym,
        experimental_bound_bohr=ELECTRON_MOMENT_BOUND,
    )
