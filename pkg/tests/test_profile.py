import math
from fractions import Fraction

import numpy as np
import pytest

from hirzebruch_kee import (DomainError, eval_phi, eval_phi_exact,
                            eval_phi_prime, make_profile, ode_residual)
from hirzebruch_kee.profile import eval_phi_expanded

SQRT3 = math.sqrt(3.0)


def sampled_profiles(count=20, seed=20260817):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, 5))
        cap = min(1.0, 2.0 / n - 0.02)
        out.append(make_profile(n, float(rng.uniform(0.02, cap))))
    return out


def test_rigid_case_angles():
    p = make_profile(1, 1.0)
    assert abs(p.beta2 - (SQRT3 - 1.0)) < 1e-15
    assert abs(p.alpha2 - (1.0 + SQRT3)) < 1e-15
    assert abs(p.alpha1 - (1.0 - SQRT3)) < 1e-15
    assert p.lam == 1.0


def test_known_angle_pairs():
    # second angle halves with n at fixed n*beta1
    p = make_profile(2, 0.5)
    assert abs(p.beta2 - (SQRT3 - 1.0) / 2.0) < 1e-15
    # (1, 1/2): S = 1, upper root is the golden ratio
    p = make_profile(1, 0.5)
    assert abs(p.alpha2 - (1.0 + math.sqrt(5.0)) / 2.0) < 1e-15
    assert abs(p.beta2 - (3.0 * math.sqrt(5.0) - 5.0) / 4.0) < 1e-15
    assert abs(p.lam - 1.5) < 1e-15


def test_second_angle_below_first():
    for p in sampled_profiles():
        assert 0.0 < p.beta2 < p.beta1


def test_lambda_positive_and_linear():
    for p in sampled_profiles():
        assert p.lam == pytest.approx(2.0 / p.n - p.beta1, abs=1e-15)
        assert p.lam > 0.0


def test_root_ordering():
    for p in sampled_profiles():
        assert p.alpha1 < 0.0 < 1.0 < p.alpha2


def test_vieta_relations():
    # the two free roots of the cubic factor satisfy sum = -product
    for p in sampled_profiles():
        s = p.alpha1 + p.alpha2
        assert abs(s + p.alpha1 * p.alpha2) < 1e-13 * max(1.0, abs(s))


def test_alpha2_closed_form():
    for p in sampled_profiles():
        want = (2.0 + p.n * p.beta2) / (2.0 - p.n * p.beta1)
        assert abs(p.alpha2 - want) < 1e-13 * want


def test_domain_rejections():
    for n, b1 in [(1, 0.0), (1, -0.3), (1, 1.0001), (2, 1.0), (3, 0.7),
                  (4, 0.5), (1, float("nan")), (1, float("inf"))]:
        with pytest.raises(DomainError):
            make_profile(n, b1)
    for bad_n in [0, -1, 2.0, True]:
        with pytest.raises(DomainError):
            make_profile(bad_n, 0.1)


def test_n1_beta1_one_allowed_n2_not():
    make_profile(1, 1.0)
    with pytest.raises(DomainError):
        make_profile(2, 1.0)


def test_profile_vanishes_at_ends():
    for p in sampled_profiles():
        assert eval_phi(p, 1.0) == 0.0
        assert abs(eval_phi(p, p.alpha2)) < 1e-15


def test_profile_positive_inside():
    for p in sampled_profiles(count=10):
        for tau in np.linspace(1.0, p.alpha2, 101)[1:-1]:
            assert eval_phi(p, float(tau)) > 0.0


def test_known_interior_value():
    # tau = 2 for the rigid case gives exactly 1/3
    p = make_profile(1, 1.0)
    assert abs(eval_phi(p, 2.0) - 1.0 / 3.0) < 1e-15


def test_factored_matches_expanded():
    for p in sampled_profiles(count=10):
        for tau in np.linspace(1.0, p.alpha2, 37):
            a = eval_phi(p, float(tau))
            b = eval_phi_expanded(p, float(tau))
            assert abs(a - b) < 1e-14 * max(1.0, abs(a))


def test_exact_rational_route():
    # rational beta1 gives rational phi; the float route must agree
    val = eval_phi_exact(1, Fraction(1, 2), Fraction(5, 4))
    assert isinstance(val, Fraction)
    p = make_profile(1, 0.5)
    assert abs(float(val) - eval_phi(p, 1.25)) < 1e-16
    assert eval_phi_exact(2, Fraction(1, 4), Fraction(1)) == 0


def test_boundary_slopes():
    for p in sampled_profiles():
        assert abs(eval_phi_prime(p, 1.0) - p.beta1) < 1e-10
        assert abs(eval_phi_prime(p, p.alpha2) + p.beta2) < 1e-10


def test_ode_residual_tiny():
    for p in sampled_profiles(count=10):
        taus = np.linspace(1.0, p.alpha2, 1002)[1:-1]
        worst = max(abs(ode_residual(p, float(t))) for t in taus)
        assert worst < 1e-12


def test_ode_residual_rejects_endpoints():
    p = make_profile(1, 0.5)
    with pytest.raises(DomainError):
        ode_residual(p, 1.0)
    with pytest.raises(DomainError):
        ode_residual(p, p.alpha2)


def test_eval_phi_outside_domain():
    p = make_profile(1, 0.5)
    with pytest.raises(DomainError):
        eval_phi(p, 0.99)
    with pytest.raises(DomainError):
        eval_phi(p, p.alpha2 + 1e-6)
