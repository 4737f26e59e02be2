import math

import numpy as np
import pytest

from hirzebruch_kee import (DomainError, GaugeChoice, RangeError, build_map,
                            log_slope_at_end, make_profile, s_of_tau,
                            tau_of_s, tau_of_y, y_of_tau)


def test_build_basic():
    p = make_profile(1, 0.5)
    m = build_map(p)
    assert m.s_min < -40.0 < 40.0 < m.s_max
    assert len(m.q_knots) == len(m.s_knots)
    assert np.all(np.diff(m.s_knots) > 0)


def test_knot_count_reasonable():
    for n, b1 in [(1, 1.0), (1, 0.02), (3, 0.6), (4, 0.49)]:
        m = build_map(make_profile(n, b1))
        assert len(m.q_knots) < 10_000


def test_round_trip_random():
    rng = np.random.default_rng(7)
    for n, b1 in [(1, 1.0), (2, 0.3), (3, 0.11)]:
        p = make_profile(n, b1)
        m = build_map(p)
        for u in rng.uniform(0.001, 0.999, size=25):
            tau = 1.0 + u * (p.alpha2 - 1.0)
            s = s_of_tau(m, tau)
            assert abs(tau_of_s(m, s) - tau) < 1e-12 * p.alpha2


def test_monotone():
    p = make_profile(2, 0.4)
    m = build_map(p)
    taus = np.linspace(1.0001, p.alpha2 - 0.0001, 50)
    ss = [s_of_tau(m, float(t)) for t in taus]
    assert all(a < b for a, b in zip(ss, ss[1:]))


def test_monotone_random_pairs():
    p = make_profile(1, 1.0)
    m = build_map(p)
    rng = np.random.default_rng(123)
    u = np.sort(rng.uniform(1e-4, 1.0 - 1e-4, size=(1000, 2)), axis=1)
    for ua, ub in u:
        if ua == ub:
            continue
        ta = 1.0 + ua * (p.alpha2 - 1.0)
        tb = 1.0 + ub * (p.alpha2 - 1.0)
        assert s_of_tau(m, ta) < s_of_tau(m, tb)


# frozen from an adaptive quadrature of 1/phi over [1.5, 2] and a
# partial-fraction antiderivative; four independent routes agree to 2e-16
S_INCREMENT_RIGID = 1.4782654955181438


def test_s_increment_against_independent_quadrature():
    p = make_profile(1, 1.0)
    m = build_map(p)
    got = s_of_tau(m, 2.0) - s_of_tau(m, 1.5)
    assert abs(got - S_INCREMENT_RIGID) < 1e-9


def test_gauge_point_maps_to_zero():
    p = make_profile(1, 0.8)
    m = build_map(p, gauge=GaugeChoice(tau0=1.3))
    assert abs(tau_of_s(m, 0.0) - 1.3) < 1e-12


def test_fd_derivative_is_phi():
    # dtau/ds = phi, checked by central differences at the gauge point
    from hirzebruch_kee import eval_phi
    p = make_profile(1, 0.8)
    m = build_map(p, gauge=GaugeChoice(tau0=1.4))
    h = 1e-5
    fd = (tau_of_s(m, h) - tau_of_s(m, -h)) / (2.0 * h)
    assert abs(fd - eval_phi(p, 1.4)) < 1e-6


def test_gauge_shifts_s_by_constant():
    p = make_profile(1, 0.7)
    m0 = build_map(p)
    m1 = build_map(p, gauge=GaugeChoice(tau0=1.2))
    offsets = [s_of_tau(m0, t) - s_of_tau(m1, t) for t in (1.1, 1.4, 1.9)]
    assert max(offsets) - min(offsets) < 1e-11
    # the gauge point sits at s = 0
    assert abs(s_of_tau(m1, 1.2)) < 1e-12


def test_hull_range_errors():
    p = make_profile(1, 0.5)
    m = build_map(p, s_hull=10.0)
    with pytest.raises(RangeError):
        tau_of_s(m, m.s_max + 1.0)
    with pytest.raises(RangeError):
        tau_of_s(m, m.s_min - 1.0)
    with pytest.raises(RangeError):
        s_of_tau(m, 1.0)          # endpoint maps to s = -infinity
    with pytest.raises(RangeError):
        s_of_tau(m, p.alpha2)


def test_s_of_tau_outside_interval():
    p = make_profile(1, 0.5)
    m = build_map(p)
    with pytest.raises((DomainError, RangeError)):
        s_of_tau(m, 0.5)
    with pytest.raises((DomainError, RangeError)):
        s_of_tau(m, p.alpha2 + 0.5)


def test_log_slopes_recover_angles():
    # d(log phi)/ds tends to beta1 at the lower end, -beta2 at the upper;
    # the next expansion term decays like e^(beta*s), so probe depth sets
    # the tolerance
    p = make_profile(1, 0.8)
    m = build_map(p)
    assert abs(log_slope_at_end(m, "lower", -30.0) - 0.8) < 1e-4
    p = make_profile(1, 1.0)
    m = build_map(p)
    assert abs(log_slope_at_end(m, "upper", 30.0) + (math.sqrt(3.0) - 1.0)) < 1e-4
    p = make_profile(2, 0.5)
    m = build_map(p)
    assert abs(log_slope_at_end(m, "lower", -40.0) - 0.5) < 1e-5


def test_log_slope_error_shrinks_with_depth():
    rng = np.random.default_rng(11)
    for _ in range(6):
        n = int(rng.integers(1, 5))
        cap = min(1.0, 2.0 / n - 0.02)
        b1 = float(rng.uniform(0.4, cap))
        p = make_profile(n, b1)
        m = build_map(p)
        err30 = abs(log_slope_at_end(m, "lower", -30.0) - p.beta1)
        err40 = abs(log_slope_at_end(m, "lower", -40.0) - p.beta1)
        assert err30 <= 1e-3
        assert err40 < err30


def test_log_slope_argument_checks():
    p = make_profile(1, 0.5)
    m = build_map(p)
    with pytest.raises(DomainError):
        log_slope_at_end(m, "middle", -35.0)
    with pytest.raises(DomainError):
        log_slope_at_end(m, "lower", -5.0)   # too shallow
    with pytest.raises(DomainError):
        log_slope_at_end(m, "lower", 35.0)   # wrong sign for the end


def test_deep_hull_all_angles():
    # near beta1 = 1 the profile hits the representability wall in tau;
    # queries at |s| = 40 must still resolve
    p = make_profile(1, 0.999)
    m = build_map(p, s_hull=40.0)
    t_lo = tau_of_s(m, -40.0)
    t_hi = tau_of_s(m, 40.0)
    assert 1.0 <= t_lo < 1.0 + 1e-12
    assert p.alpha2 - 1e-12 < t_hi <= p.alpha2
    assert abs(log_slope_at_end(m, "lower", -39.0) - p.beta1) < 1e-7


def test_y_coordinate_affine():
    p = make_profile(2, 0.1)
    # y is an affine rescaling centered at the interval midpoint scale
    assert y_of_tau(p, 1.0) == pytest.approx(-1.0 / p.beta1, rel=1e-14)
    mid = 1.0 + p.n * p.beta1 / 2.0
    assert y_of_tau(p, mid) == pytest.approx(0.0, abs=1e-12)
    assert tau_of_y(p, 0.0) == pytest.approx(mid, rel=1e-15)
    for y in (-5.0, -0.5, 2.0, 9.0):
        assert y_of_tau(p, tau_of_y(p, y)) == pytest.approx(y, abs=1e-10)


def test_y_domain_checks():
    p = make_profile(2, 0.1)
    with pytest.raises(DomainError):
        y_of_tau(p, 0.9)
    with pytest.raises(DomainError):
        tau_of_y(p, -1.0 / p.beta1 - 1e-6)


def test_build_rejects_bad_hull():
    p = make_profile(1, 0.5)
    with pytest.raises(DomainError):
        build_map(p, s_hull=0.5)
    with pytest.raises(DomainError):
        build_map(p, s_hull=float("nan"))


def test_build_rejects_gauge_outside():
    p = make_profile(1, 0.5)
    with pytest.raises(DomainError):
        build_map(p, gauge=GaugeChoice(tau0=1.0))
    with pytest.raises(DomainError):
        build_map(p, gauge=GaugeChoice(tau0=p.alpha2 + 0.1))
