"""Acceptance suite: every numerical claim the package makes, checked at its tolerance."""
from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field

from . import lagrangian, moment, optics, specfun
from .optics import PhotonKinematics
from .specfun import CONSTANTS

__all__ = [
    "CHECK_KEYS",
    "Check",
    "DEFAULT_TOLERANCES",
    "Report",
    "figure1_grid",
    "run_validation",
]

# calibrated once against mu_exact; below this the strong form is off by more than 1%
STRONG_REGIME_MIN_B = 6.0
WEAK_REGIME_MAX_B = 0.2

DEFAULT_TOLERANCES = {
    "three_route": 1e-8,
    "weak_coefficient": 1e-2,
    "moment_energy": 1e-6,
    "ratio_8_3": 0.10,
    "asymptote_gap": 0.05,
    "monotonicity": 0.0,
    "integrand": 1e-14,
    "zeta_routes": 1e-8,
    "zeta_identity": 1e-6,
    "lambert": 1e-10,
    "regime": 1e-2,
    "specfun": 1e-11,
    "figure1": 1e-12,
}
CHECK_KEYS = tuple(DEFAULT_TOLERANCES)


@dataclass
class Check:
    key: str
    name: str
    passed: bool
    measured: float
    tolerance: float
    reference: str
    detail: str = ""
    informational: bool = False

    @property
    def status(self) -> str:
        if self.informational:
            return "info"
        return "pass" if self.passed else "FAIL"


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [dict(asdict(c), status=c.status) for c in self.checks],
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tol = "" if c.informational else f"  tol={c.tolerance:.3g}"
            out.append(f"[{c.status:>4}] {c.key:<20} measured={c.measured:.6g}{tol}  {c.name}")
            if c.detail:
                out.append(f"       {c.detail}")
        return out


def _geomspace(lo: float, hi: float, n: int) -> list[float]:
    r = math.log(hi / lo)
    return [lo * math.exp(r * i / (n - 1)) for i in range(n)]


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def figure1_grid(points: int = 300, b_max: float = 30.0) -> list[float]:
    return _linspace(0.0, b_max, points)


# ---------------------------------------------------------------------------
# individual checks


def _three_route(tol, alpha):
    grid = _geomspace(0.01, 30.0, 50)
    worst = max(
        _rel(
            lagrangian.b2_gamma_GG_quadrature(b, alpha=alpha),
            lagrangian.b2_gamma_GG_closed(b, alpha),
        )
        for b in grid
    )
    out = [
        Check(
            "three_route", "closed form vs proper-time quadrature for B^2 L_GG, 50 log points in [0.01, 30]",
            worst <= tol, worst, tol, "closed-form L_GG vs its proper-time integral",
        )
    ]
    for grouping in ("literal", "regrouped"):
        dev = max(
            _rel(
                lagrangian.b2_gamma_GG_zeta0(b, alpha, grouping),
                lagrangian.b2_gamma_GG_closed(b, alpha),
            )
            for b in (0.1, 1.0, 10.0)
        )
        out.append(
            Check(
                f"zeta0_route_{grouping}", f"zeta'(0, chi) form of B^2 L_GG ({grouping} grouping) vs closed form, max over b = 0.1, 1, 10",
                True, dev, 0.0, "third closed form of L_GG via zeta'(0, chi)", informational=True,
            )
        )
    return out


def _weak_coefficient(tol, alpha):
    b = 0.05
    kin = PhotonKinematics(theta=math.pi / 2)
    coef = (optics.n_perp_exact(b, kin, alpha).n - 1.0) / (b * b) / (alpha / (4 * math.pi))
    err = abs(coef / (14.0 / 45.0) - 1.0)
    par = (optics.n_parallel_exact(b, kin, alpha).n - 1.0) / (b * b) / (alpha / (4 * math.pi))
    return [
        Check(
            "weak_coefficient", "(n_perp - 1)/(b^2 sin^2) in units of alpha/4pi at b = 0.05 vs 14/45",
            err <= tol, err, tol, "weak-field index coefficient 14/45",
            detail=f"coefficient={coef:.10g}; parallel mode gives {par:.10g} (8/45 = {8 / 45:.10g})",
        )
    ]


def _moment_energy(tol, alpha):
    kin = PhotonKinematics(theta=math.pi / 2)
    worst = 0.0
    where = 0.0
    for b in _geomspace(0.05, 29.9, 60):
        step = 1e-3 * b
        d = -moment.central_difference(
            lambda x: moment.hamiltonian_expectation(x, kin, alpha).shift, b, step
        )
        err = _rel(d, moment.mu_exact(b, kin, alpha).mu_reduced)
        if err > worst:
            worst, where = err, b
    return [
        Check(
            "moment_energy", "mu_exact vs -d<H>/db by central differences, 60 log points in [0.05, 29.9]",
            worst <= tol, worst, tol, "moment defined as minus the field derivative of the photon energy",
            detail=f"largest deviation at b={where:.6g}",
        )
    ]


def _claims(tol_ratio, tol_gap, alpha):
    mu30 = moment.mu_exact(30.0, alpha=alpha).mu_reduced
    mu05 = moment.mu_exact(0.5, alpha=alpha).mu_reduced
    ratio = mu30 / mu05
    ratio_err = abs(ratio / (8.0 / 3.0) - 1.0)
    gap = 1.0 - mu30 / moment.asymptote(alpha)
    strong_gap = 1.0 - moment.mu_strong(30.0, alpha=alpha).mu_reduced / moment.asymptote(alpha)
    return [
        Check(
            "ratio_8_3", "mu(30)/mu(0.5) compared to 8/3",
            ratio_err <= tol_ratio, ratio_err, tol_ratio, "reference ratio 8/3 between b = 30 and b = 0.5",
            detail=f"measured ratio={ratio:.10g}; 8/3={8 / 3:.10g}; reference constituents give 20/7={20 / 7:.6g}",
        ),
        Check(
            "asymptote_gap", "1 - mu(30)/[(alpha/4pi)(2/3)], positive and within the band",
            0.0 < gap <= tol_gap, gap, tol_gap, "reference 3% gap to the asymptote at b = 30",
            detail=f"exact gap={gap:.6%}; strong-field form gives {strong_gap:.6%}; reference value 3%",
        ),
    ]


def _monotonicity(tol, alpha):
    grid = [30.0 * i / 100 for i in range(1, 101)]
    mus = [moment.mu_exact(b, alpha=alpha).mu_reduced for b in grid]
    rep = moment.derivative_checks(grid, alpha=alpha)
    low = moment.derivative_checks(_linspace(0.01, 0.44, 44), alpha=alpha)
    measured = min(min(mus), rep.min_dmu_db, low.min_dmu_db, low.min_lower_bound_margin)
    ok = measured > tol and rep.ok and low.ok
    viol = rep.violations + low.violations
    return [
        Check(
            "monotonicity", "mu > 0, dmu/db > 0 on 100 points in (0, 30]; dmu/db lower bound on (0, 0.44]",
            ok, measured, tol, "positivity and growth of the moment; weak-field bound 28/45 - 156/49 b^2",
            detail=(
                f"min mu={min(mus):.4g}, min dmu/db={min(rep.min_dmu_db, low.min_dmu_db):.4g}, "
                f"min bound margin={low.min_lower_bound_margin:.4g}, max d2H/db2={max(rep.max_d2h_db2, low.max_d2h_db2):.4g}"
                + (f"; violations: {viol[:3]}" if viol else "")
            ),
        )
    ]


def _integrand(tol):
    rng = random.Random(20240917)
    ts = [100.0 * (1.0 - rng.random()) for _ in range(5000)]
    ts += _geomspace(1e-6, 100.0, 5000)
    worst = min(lagrangian.proper_time_kernel(t) for t in ts)
    return [
        Check(
            "integrand", "min of the proper-time kernel g(t) over 10^4 samples in (0, 100]",
            worst >= -tol, worst, tol, "non-negativity of the proper-time kernel",
        )
    ]


def _zeta_routes(tol, tol_identity):
    worst = 0.0
    where = 0.0
    for h in _geomspace(0.1, 50.0, 60):
        a = specfun.hurwitz_zeta_deriv_minus1(h)
        b = specfun.hurwitz_zeta_deriv_minus1_integral(h)
        err = _rel(b, a)
        if err > worst:
            worst, where = err, h
    rep = moment.derivative_checks(_geomspace(0.01, 5.0, 40), identity_tol=tol_identity)
    ident = rep.max_zeta_identity_error
    return [
        Check(
            "zeta_routes", "zeta'(-1, h): integral representation vs asymptotic + recurrence, 60 log points in [0.1, 50]",
            worst <= tol, worst, tol, "two evaluations of zeta'(-1, h)",
            detail=f"largest deviation at h={where:.6g}",
        ),
        Check(
            "zeta_identity", "analytic d/db zeta'(-1, 1/2b) vs central differences, 40 points in [0.01, 5]",
            ident <= tol_identity, ident, tol_identity, "field derivative of zeta'(-1, 1/2b)",
        ),
    ]


def _lambert(tol, alpha):
    worst = 0.0
    for b in _geomspace(1.0, 30.0, 20):
        mu = moment.mu_strong(b, alpha=alpha).mu_reduced
        back = moment.invert_b_from_mu(mu, moment.branch_for(b), alpha).b
        worst = max(worst, _rel(back, b))
    return [
        Check(
            "lambert", "b -> mu_strong -> invert_b_from_mu round trip, 20 log points in [1, 30]",
            worst <= tol, worst, tol, "Lambert W inversion of the strong-field moment",
            detail=f"branch 0 below b={math.exp(moment.C1 + 0.5):.6g}, branch -1 above",
        )
    ]


def _regime(tol, alpha):
    weak = max(
        _rel(moment.mu_weak(b, alpha=alpha).mu_reduced, moment.mu_exact(b, alpha=alpha).mu_reduced)
        for b in _linspace(0.01, WEAK_REGIME_MAX_B, 20)
    )
    strong = max(
        _rel(moment.mu_strong(b, alpha=alpha).mu_reduced, moment.mu_exact(b, alpha=alpha).mu_reduced)
        for b in _linspace(STRONG_REGIME_MIN_B, 30.0, 25)
    )
    at3 = _rel(moment.mu_strong(3.0, alpha=alpha).mu_reduced, moment.mu_exact(3.0, alpha=alpha).mu_reduced)
    measured = max(weak, strong)
    return [
        Check(
            "regime", f"mu_weak on (0, {WEAK_REGIME_MAX_B}] and mu_strong on [{STRONG_REGIME_MIN_B:g}, 30] vs mu_exact",
            measured <= tol, measured, tol, "weak- and strong-field moment formulas",
            detail=f"weak max={weak:.4g}, strong max={strong:.4g}; strong form at b=3 is off by {at3:.4g}",
        )
    ]


def _specfun_suite(tol):
    rng = random.Random(7)
    xs = [100.0 * (1.0 - rng.random()) for _ in range(200)]
    errs = {}

    def note(name, err):
        errs[name] = max(errs.get(name, 0.0), err)

    for x in xs:
        note("lngamma recurrence", abs(specfun.ln_gamma(x + 1) - specfun.ln_gamma(x) - math.log(x)) / max(1.0, abs(specfun.ln_gamma(x + 1))))
        note("digamma recurrence", abs(specfun.digamma(x + 1) - specfun.digamma(x) - 1 / x) / max(1.0, abs(specfun.digamma(x + 1))))
        note("trigamma = zeta(2, x)", _rel(specfun.polygamma(1, x), specfun.hurwitz_zeta(2.0, x)))
        note("hurwitz shift", abs(specfun.hurwitz_zeta(3.0, x) - specfun.hurwitz_zeta(3.0, x + 1) - x**-3) / specfun.hurwitz_zeta(3.0, x))
    for h in _geomspace(0.01, 50.0, 100):
        lhs = specfun.hurwitz_zeta_deriv_minus1(h + 1) - specfun.hurwitz_zeta_deriv_minus1(h)
        note("zeta'(-1) recurrence", abs(lhs - h * math.log(h)) / max(1.0, abs(h * math.log(h))))
        if h > 0.1:
            bound = -1 / h**2 + 1 / h**3 - 1 / (2 * h**4) + 1 / (6 * h**6)
            note("psi'' upper bound", max(0.0, specfun.polygamma(2, 1 + h) - bound))
    for z in _linspace(-1 / math.e, 20.0, 200):
        for branch in (0, -1):
            if branch == -1 and z >= 0:
                continue
            w = specfun.lambert_w(branch, z)
            note("lambert residual", abs(w * math.exp(w) - z) / max(1.0, abs(z)))
    known = {
        "lngamma(1/2)": (specfun.ln_gamma(0.5), 0.5 * math.log(math.pi)),
        "digamma(1)": (specfun.digamma(1.0), -specfun.EULER_GAMMA),
        "digamma(1/2)": (specfun.digamma(0.5), -specfun.EULER_GAMMA - 2 * math.log(2)),
        "trigamma(1)": (specfun.polygamma(1, 1.0), math.pi**2 / 6),
        "tetragamma(1)": (specfun.polygamma(2, 1.0), -2 * specfun.riemann_zeta(3)),
        "zeta(2)": (specfun.riemann_zeta(2), math.pi**2 / 6),
        "zeta(4)": (specfun.riemann_zeta(4), math.pi**4 / 90),
        "hurwitz(2, 1)": (specfun.hurwitz_zeta(2.0, 1.0), math.pi**2 / 6),
        "zeta'(-1, 1)": (specfun.hurwitz_zeta_deriv_minus1(1.0), 1 / 12 - math.log(specfun.GLAISHER_A)),
        "zeta'(0, 1/2)": (specfun.zeta_deriv_zero(0.5), -0.5 * math.log(2)),
        "B2": (specfun.bernoulli_number(2), 1 / 6),
        "B4": (specfun.bernoulli_number(4), -1 / 30),
        "B2(1/2)": (specfun.bernoulli_poly2(0.5), -1 / 12),
        "W0(e)": (specfun.lambert_w(0, math.e), 1.0),
        "W-1(-1/e)": (specfun.lambert_w(-1, -1 / math.e), -1.0),
    }
    for name, (got, want) in known.items():
        note("known values", _rel(got, want))
    worst_name = max(errs, key=errs.get)
    worst = errs[worst_name]
    return [
        Check(
            "specfun", "special-function recurrences, identities and known values",
            worst <= tol, worst, tol, "special-function identity suite",
            detail="; ".join(f"{k}={v:.2g}" for k, v in errs.items()),
        )
    ]


def _figure1(tol, alpha):
    kin = PhotonKinematics(theta=math.pi / 2)
    grid = figure1_grid()
    hs = [moment.hamiltonian_expectation(b, kin, alpha).h_reduced for b in grid]
    d1 = [hs[i + 1] - hs[i] for i in range(len(hs) - 1)]
    d2 = [hs[i + 1] - 2 * hs[i] + hs[i - 1] for i in range(1, len(hs) - 1)]
    measured = max(max(d1), max(d2))
    return [
        Check(
            "figure1", "<H>/|k| on 300 points in [0, 30]: max of first and second differences",
            measured <= tol, measured, tol, "energy curve non-increasing and concave",
            detail=f"h_reduced(30)={hs[-1]:.12g}; max first diff={max(d1):.3g}, max second diff={max(d2):.3g}",
        ),
        Check(
            "figure1_curvature", "described shape (convex, increasing) vs computed shape",
            True, float(max(d2) <= 0), 0.0, "described curve shape",
            detail="computed curve is decreasing and concave, as the derivative signs require; the described shape is not asserted",
            informational=True,
        ),
    ]


def _informational(alpha):
    out = []
    kin = PhotonKinematics(theta=math.pi / 2)
    mu1 = moment.mu_exact(1.0, kin, alpha).mu_reduced
    hz = moment.mu_hurwitz(1.0, kin, alpha).mu_reduced
    out.append(
        Check(
            "hurwitz_form", "Hurwitz-zeta form of the moment at b = 1, relative deviation from mu_exact",
            True, _rel(hz, mu1), 0.0, "Hurwitz-zeta rewriting of the moment",
            detail="zeta(1, a) read as its finite part -psi(a); the deviation grows like 1/b^2 at weak field",
            informational=True,
        )
    )
    diag = optics.delta_n_series(1.0, kin, alpha=alpha)
    out.append(
        Check(
            "delta_n_series", "truncated birefringence series at b = 1 vs exact difference",
            True, diag["deviation"], 0.0, "birefringence series diagnostic",
            detail=f"exact={diag['exact']:.10g}, series={diag['series']:.10g}",
            informational=True,
        )
    )
    gv = optics.group_velocity(100.0, kin, alpha)
    out.append(
        Check(
            "group_velocity", "v_perp^2 at b = 100: exact vs lower bound vs large-field formula",
            True, gv.hu_sq - gv.v_perp_sq, 0.0, "group velocity bound and large-field formula",
            detail=f"exact={gv.v_perp_sq:.10g}, bound={gv.lower_bound_sq:.10g}, large-field={gv.hu_sq:.10g}",
            informational=True,
        )
    )
    ec = moment.electron_moment_comparison(30.0, PhotonKinematics(k_over_m=1.0), alpha)
    out.append(
        Check(
            "electron_moment", "photon moment at b = 30, |k| = m, in Bohr magnetons; ratio to the electron anomaly",
            True, ec.mu_gamma_bohr, 0.0, "comparison with the electron anomalous moment",
            detail=(
                f"ratio={ec.ratio:.6g} (asymptote {ec.asymptotic_ratio:.6g}); "
                f"alpha/3pi={ec.asymptote_bohr:.4g} vs bound {ec.experimental_bound_bohr:g}"
            ),
            informational=True,
        )
    )
    return out


def run_validation(tolerances: dict | None = None, alpha: float = CONSTANTS.alpha) -> Report:
    """Run every acceptance check.  ``tolerances`` overrides DEFAULT_TOLERANCES by key."""
    tol = dict(DEFAULT_TOLERANCES)
    for key, value in (tolerances or {}).items():
        if key not in tol:
            raise KeyError(f"unknown tolerance key {key!r}; known: {', '.join(CHECK_KEYS)}")
        tol[key] = float(value)
    report = Report()
    report.checks += _three_route(tol["three_route"], alpha)
    report.checks += _weak_coefficient(tol["weak_coefficient"], alpha)
    report.checks += _moment_energy(tol["moment_energy"], alpha)
    report.checks += _claims(tol["ratio_8_3"], tol["asymptote_gap"], alpha)
    report.checks += _monotonicity(tol["monotonicity"], alpha)
    report.checks += _integrand(tol["integrand"])
    report.checks += _zeta_routes(tol["zeta_routes"], tol["zeta_identity"])
    report.checks += _lambert(tol["lambert"], alpha)
    report.checks += _regime(tol["regime"], alpha)
    report.checks += _specfun_suite(tol["specfun"])
    report.checks += _figure1(tol["figure1"], alpha)
    report.checks += _informational(alpha)
    return report
