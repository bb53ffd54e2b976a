import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from qedmag import specfun
from qedmag.specfun import DomainError

mpmath.mp.dps = 40

positive = st.floats(min_value=1e-3, max_value=100.0, allow_nan=False)


def zeta_m1_oracle(h):
    # d/ds zeta(s, h) at s = -1; mpmath is reliable here for moderate h
    return float(mpmath.zeta(-1, h, 1))


def rel(a, b):
    return abs(a - b) / abs(b)


# --- constants -----------------------------------------------------------


def test_constants_match_reference_digits():
    c = specfun.CONSTANTS
    assert round(c.euler_gamma, 3) == 0.577
    assert math.floor(c.glaisher_A * 1e8) == 128242712
    assert 0 < c.alpha < 0.01
    assert c.b_cr_gauss == pytest.approx(4.4e13, rel=0.01)


def test_constants_reject_bad_alpha():
    with pytest.raises(ValueError):
        specfun.Constants(alpha=0.5)


def test_precision_config_validates():
    with pytest.raises(ValueError):
        specfun.PrecisionConfig(rel_tol=0)
    with pytest.raises(ValueError):
        specfun.PrecisionConfig(series_terms_max=4)


# --- Bernoulli -----------------------------------------------------------


def test_bernoulli_small():
    assert specfun.bernoulli_fraction(2) == Fraction(1, 6)
    assert specfun.bernoulli_fraction(4) == Fraction(-1, 30)
    assert specfun.bernoulli_number(12) == pytest.approx(-691 / 2730, rel=1e-15)


@pytest.mark.parametrize("k", [2, 10, 30, 60, 100])
def test_bernoulli_against_mpmath(k):
    assert rel(specfun.bernoulli_number(k), float(mpmath.bernoulli(k))) < 1e-15


@pytest.mark.parametrize("k", [0, 3, -2, 7])
def test_bernoulli_domain(k):
    with pytest.raises(DomainError):
        specfun.bernoulli_number(k)


def test_bernoulli_poly2():
    assert specfun.bernoulli_poly2(0.0) == pytest.approx(1 / 6)
    assert specfun.bernoulli_poly2(0.5) == pytest.approx(-1 / 12)


# --- gamma family --------------------------------------------------------


def test_ln_gamma_known():
    assert specfun.ln_gamma(1.0) == 0.0
    assert specfun.ln_gamma(2.0) == pytest.approx(0.0, abs=1e-16)
    assert specfun.ln_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-15)


@pytest.mark.parametrize("x", [1e-6, 1e-3, 0.3, 0.9, 1.7, 2.49, 3.5, 12.9, 13.1, 150.0, 1e4, 1e6])
def test_ln_gamma_against_mpmath(x):
    want = float(mpmath.loggamma(x))
    assert abs(specfun.ln_gamma(x) - want) <= 1e-13 * max(1.0, abs(want))


@settings(max_examples=200)
@given(positive)
def test_ln_gamma_recurrence(x):
    lhs = specfun.ln_gamma(x + 1) - specfun.ln_gamma(x)
    assert abs(lhs - math.log(x)) <= 1e-11 * max(1.0, abs(specfun.ln_gamma(x)))


def test_digamma_known():
    g = specfun.EULER_GAMMA
    assert specfun.digamma(1.0) == pytest.approx(-g, rel=1e-15)
    assert specfun.digamma(0.5) == pytest.approx(-g - 2 * math.log(2), rel=1e-15)


@pytest.mark.parametrize("x", [1e-4, 0.2, 1.4616321449683622, 3.0, 14.9, 15.1, 77.7, 1e5])
def test_digamma_against_mpmath(x):
    want = float(mpmath.digamma(x))
    assert abs(specfun.digamma(x) - want) <= 1e-12 * max(abs(want), 1e-3)


@settings(max_examples=200)
@given(positive)
def test_digamma_recurrence(x):
    assert abs(specfun.digamma(x + 1) - specfun.digamma(x) - 1 / x) <= 1e-11 * max(1.0, 1 / x)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 7.3, 40.0, 1e3])
def test_polygamma_against_mpmath(n, x):
    assert rel(specfun.polygamma(n, x), float(mpmath.polygamma(n, x))) < 1e-10


def test_polygamma_known():
    assert specfun.polygamma(1, 1.0) == pytest.approx(math.pi**2 / 6, rel=1e-15)
    assert specfun.polygamma(2, 1.0) == pytest.approx(-2 * 1.2020569031595942, rel=1e-14)


@settings(max_examples=100)
@given(positive)
def test_trigamma_is_hurwitz_two(x):
    assert rel(specfun.polygamma(1, x), specfun.hurwitz_zeta(2.0, x)) < 1e-12


@pytest.mark.parametrize("bad", [0.0, -1.0, -math.inf, math.nan])
def test_gamma_family_domain(bad):
    for f in (specfun.ln_gamma, specfun.digamma):
        with pytest.raises(DomainError):
            f(bad)
    with pytest.raises(DomainError):
        specfun.polygamma(1, bad)


def test_polygamma_order_domain():
    with pytest.raises(DomainError):
        specfun.polygamma(3, 1.0)


def test_psi2_upper_bound():
    for i in range(1, 400):
        h = 0.1 + 49.9 * i / 399
        bound = -1 / h**2 + 1 / h**3 - 1 / (2 * h**4) + 1 / (6 * h**6)
        assert specfun.polygamma(2, 1 + h) <= bound


# --- zeta functions ------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5, 10, 20, 41, 64, 80])
def test_riemann_zeta(n):
    assert rel(specfun.riemann_zeta(n), float(mpmath.zeta(n))) <= 1e-14


def test_riemann_zeta_closed_forms():
    assert specfun.riemann_zeta(2) == pytest.approx(math.pi**2 / 6, rel=1e-15)
    assert specfun.riemann_zeta(4) == pytest.approx(math.pi**4 / 90, rel=1e-15)
    assert round(specfun.riemann_zeta(3), 3) == 1.202
    with pytest.raises(DomainError):
        specfun.riemann_zeta(1)


@pytest.mark.parametrize("s", [1.5, 2.0, 3.0, 7.5])
@pytest.mark.parametrize("h", [0.01, 0.5, 1.0, 3.3, 25.0])
def test_hurwitz_against_mpmath(s, h):
    assert rel(specfun.hurwitz_zeta(s, h), float(mpmath.zeta(s, h))) < 1e-12


@pytest.mark.parametrize("s", [2, 3, 6])
def test_hurwitz_at_one_is_riemann(s):
    assert rel(specfun.hurwitz_zeta(float(s), 1.0), specfun.riemann_zeta(s)) < 1e-14


@settings(max_examples=100)
@given(positive, st.floats(min_value=1.1, max_value=8.0))
def test_hurwitz_shift(h, s):
    lhs = specfun.hurwitz_zeta(s, h) - specfun.hurwitz_zeta(s, h + 1)
    assert rel(lhs, h**-s) < 1e-11


def test_hurwitz_domain():
    with pytest.raises(DomainError):
        specfun.hurwitz_zeta(1.0, 2.0)
    with pytest.raises(DomainError):
        specfun.hurwitz_zeta(2.0, 0.0)


def test_zeta_m1_at_one():
    want = 1 / 12 - math.log(specfun.GLAISHER_A)
    assert specfun.hurwitz_zeta_deriv_minus1(1.0) == pytest.approx(want, rel=1e-14)
    assert want == pytest.approx(-0.1654211437, abs=1e-10)


@pytest.mark.parametrize("h", [0.003, 0.1, 0.5, 0.9, 2.0, 7.99, 8.0, 12.0, 30.0])
def test_zeta_m1_against_mpmath(h):
    want = zeta_m1_oracle(h)
    assert abs(specfun.hurwitz_zeta_deriv_minus1(h) - want) <= 1e-13 * max(1.0, abs(want))


def test_zeta_m1_large_h_against_direct_sum():
    # the series route at large h, checked against the same asymptotic summed in 50 digits
    mpmath.mp.dps = 50
    for h in (50.0, 400.0):
        hm = mpmath.mpf(h)
        want = 1 / mpmath.mpf(12) - hm**2 / 4 + mpmath.log(hm) / 2 * (hm**2 - hm + mpmath.mpf(1) / 6)
        want -= mpmath.nsum(
            lambda k: mpmath.bernoulli(2 * k + 2) / ((2 * k + 2) * (2 * k + 1) * (2 * k) * hm ** (2 * k)),
            [1, 12],
        )
        assert rel(specfun.hurwitz_zeta_deriv_minus1(h), float(want)) < 1e-14
    mpmath.mp.dps = 40


def test_zeta_m1_first_correction_is_plus_1_over_720():
    # next term is -1/(5040 h^4), a 4e-4 relative shift at h = 20
    h = 20.0
    base = 1 / 12 - h * h / 4 + math.log(h) / 2 * specfun.bernoulli_poly2(h)
    corr = (specfun.hurwitz_zeta_deriv_minus1(h) - base) * h * h
    assert corr == pytest.approx(1 / 720, rel=1e-3)


@settings(max_examples=150)
@given(st.floats(min_value=0.01, max_value=50.0))
def test_zeta_m1_recurrence(h):
    lhs = specfun.hurwitz_zeta_deriv_minus1(h + 1) - specfun.hurwitz_zeta_deriv_minus1(h)
    assert abs(lhs - h * math.log(h)) <= 1e-10 * max(1.0, abs(h * math.log(h)))


@pytest.mark.parametrize("h", [0.1, 0.37, 1.0, 5.0, 10.0, 23.0, 50.0])
def test_zeta_m1_integral_route(h):
    a = specfun.hurwitz_zeta_deriv_minus1(h)
    b = specfun.hurwitz_zeta_deriv_minus1_integral(h)
    assert rel(b, a) < 1e-8


def test_zeta_m1_integrand_series_matches_direct():
    f = specfun._bernoulli_remainder_over_x2
    for x in (0.49, 0.4999999, 0.5, 0.5000001):
        direct = (1 / (1 - math.exp(-x)) - 1 / x - 0.5 - x / 12) / x**2
        assert f(x) == pytest.approx(direct, rel=1e-9)
    assert f(1e-6) / 1e-6 == pytest.approx(-1 / 720, rel=1e-9)


def test_zeta_m1_respects_shift_threshold():
    fine = specfun.PrecisionConfig(recurrence_shift_threshold=20.0)
    for h in (0.3, 3.0, 15.0):
        assert specfun.hurwitz_zeta_deriv_minus1(h, fine) == pytest.approx(
            specfun.hurwitz_zeta_deriv_minus1(h), rel=1e-12, abs=1e-15
        )


def test_zeta_deriv_zero():
    assert specfun.zeta_deriv_zero(1.0) == pytest.approx(-0.5 * math.log(2 * math.pi), rel=1e-15)
    assert specfun.zeta_deriv_zero(0.5) == pytest.approx(-0.5 * math.log(2), rel=1e-14)
    assert specfun.zeta_deriv_zero(2.7) == pytest.approx(float(mpmath.zeta(0, 2.7, 1)), rel=1e-13)
    with pytest.raises(DomainError):
        specfun.zeta_deriv_zero(0.0)


# --- Lambert W -----------------------------------------------------------


def test_lambert_known():
    assert specfun.lambert_w(0, 0.0) == 0.0
    assert specfun.lambert_w(0, math.e) == pytest.approx(1.0, rel=1e-15)
    assert specfun.lambert_w(0, -1 / math.e) == -1.0
    assert specfun.lambert_w(-1, -1 / math.e) == -1.0


@pytest.mark.parametrize("z", [-0.3678, -0.3, -0.1, -1e-3, -1e-12, 1e-10, 0.5, 10.0, 1e5, 1e300])
def test_lambert_branch0_against_mpmath(z):
    assert specfun.lambert_w(0, z) == pytest.approx(float(mpmath.lambertw(z, 0).real), rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("z", [-0.3678, -0.3, -0.1, -1e-3, -1e-12, -1e-200])
def test_lambert_branch_minus1_against_mpmath(z):
    assert specfun.lambert_w(-1, z) == pytest.approx(float(mpmath.lambertw(z, -1).real), rel=1e-14)


@settings(max_examples=300)
@given(st.floats(min_value=-1 / math.e, max_value=50.0), st.sampled_from([0, -1]))
def test_lambert_residual(z, branch):
    if branch == -1 and z >= 0:
        with pytest.raises(DomainError):
            specfun.lambert_w(branch, z)
        return
    w = specfun.lambert_w(branch, z)
    assert abs(w * math.exp(w) - z) <= 1e-13 * max(1.0, abs(z))
    assert (w >= -1) if branch == 0 else (w <= -1)


def test_lambert_domain():
    with pytest.raises(DomainError):
        specfun.lambert_w(0, -0.5)
    with pytest.raises(DomainError):
        specfun.lambert_w(-1, 0.0)
    with pytest.raises(DomainError):
        specfun.lambert_w(1, 1.0)
