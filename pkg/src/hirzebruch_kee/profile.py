"""Closed-form Einstein momentum profiles on Hirzebruch surfaces.

A U(2)-invariant Kahler metric on the n-th Hirzebruch surface is encoded by a
convex potential of the fiberwise log-norm coordinate s.  In the momentum
variable tau the Einstein edge equation with cone angle 2*pi*beta1 along the
zero section becomes a first-order linear ODE,

    phi'(tau) + phi(tau)/tau = 2/n + (beta1 - 2/n) * tau,

whose solution vanishing at tau = 1 is the explicit rational profile

    phi(tau) = (tau^2 - 1)/(n*tau) + (beta1 - 2/n) * (tau^3 - 1)/(3*tau).

The cubic numerator factors as

    phi(tau) = leading * (tau - 1) * (tau - alpha1) * (tau - alpha2) / tau,

with leading = (beta1 - 2/n)/3 < 0 and alpha1 < 0 < 1 < alpha2, so phi > 0 on
(1, alpha2).  The boundary slopes carry the two cone angles:

    phi'(1) = beta1        (angle 2*pi*beta1 along the zero section),
    phi'(alpha2) = -beta2  (angle 2*pi*beta2 along the infinity section),

and the Einstein constant is lam = 2/n - beta1.  Vieta's relations give

    alpha1 + alpha2 = -alpha1*alpha2 = (1 + n*beta1) / (2 - n*beta1),

which pins beta2 = (n*beta1 - 3 + sqrt(3*(3 - n*beta1)*(1 + n*beta1)))/(2n).

Valid inputs: integer n >= 1 and beta1 in (0, 2/n) with beta1 <= 1.  At
beta1 = 1 (possible only for n = 1) the angle along the zero section is a
full 2*pi, i.e. the metric is smooth there and the edge sits only along the
infinity section, with the rigid angle 2*pi*(sqrt(3) - 1); the profile is
constructed the same way and no special casing is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

BETA1_CONSTRAINT = "beta1 must lie in (0, 2/n) ∩ (0, 1]"


@dataclass(frozen=True)
class ConeAngles:
    """Cone angles (divided by 2*pi) and the Einstein constant of a profile.

    beta1 is the prescribed angle along the zero section, beta2 the induced
    angle along the infinity section; 0 < beta2 < beta1 always, and
    lam = 2/n - beta1 > 0 on the valid domain.
    """

    beta1: float
    beta2: float
    lam: float


@dataclass(frozen=True)
class EinsteinProfile:
    """Frozen numerical data of one momentum profile.

    leading is the cubic coefficient (beta1 - 2/n)/3 (always negative on the
    valid domain); alpha1 < 0 and alpha2 > 1 are the two non-unit roots of
    the numerator cubic.  alpha2 is the momentum value of the infinity
    section, so the fiber momentum interval is [1, alpha2].
    """

    n: int
    beta1: float
    leading: float
    alpha1: float
    alpha2: float
    angles: ConeAngles

    @property
    def beta2(self) -> float:
        return self.angles.beta2

    @property
    def lam(self) -> float:
        return self.angles.lam


def _validate_n_beta1(n: int, beta1: float) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1 (the n = 0 product case is out of scope), got {n}")
    beta1 = float(beta1)
    if not math.isfinite(beta1) or not 0.0 < beta1 <= 1.0 or n * beta1 >= 2.0:
        raise DomainError(f"{BETA1_CONSTRAINT}; got beta1={beta1} for n={n}")


def make_profile(n: int, beta1: float) -> EinsteinProfile:
    """Build the Einstein profile for surface index n and angle beta1.

    Roots come from the stable quadratic: with S = (1 + n*beta1)/(2 - n*beta1),
    the non-unit roots solve alpha^2 - S*alpha - S = 0.  The larger root is
    computed first (no cancellation, both terms positive) and the other via
    the product alpha1 = -S/alpha2.  beta2 uses the conjugate-rationalized
    form of its closed expression, which stays accurate down to beta1 -> 0.
    """
    _validate_n_beta1(n, beta1)
    beta1 = float(beta1)
    x = n * beta1
    ssum = (1.0 + x) / (2.0 - x)
    alpha2 = 0.5 * (ssum + math.sqrt(ssum * (ssum + 4.0)))
    alpha1 = -ssum / alpha2
    # beta2 = (x - 3 + sqrt(3(3-x)(1+x)))/(2n), rationalized to avoid the
    # subtraction of nearly equal quantities at small x.
    disc = math.sqrt(3.0 * (3.0 - x) * (1.0 + x))
    beta2 = 2.0 * beta1 * (3.0 - x) / (disc + 3.0 - x)
    lam = 2.0 / n - beta1
    leading = (beta1 - 2.0 / n) / 3.0
    angles = ConeAngles(beta1=beta1, beta2=beta2, lam=lam)
    return EinsteinProfile(n=n, beta1=beta1, leading=leading,
                           alpha1=alpha1, alpha2=alpha2, angles=angles)


def _checked_tau(p: EinsteinProfile, tau: float) -> float:
    # Few-ulp grace at the endpoints, then clamp onto [1, alpha2].
    tau = float(tau)
    tol = 16.0 * math.ulp(max(1.0, p.alpha2))
    if not math.isfinite(tau) or tau < 1.0 - tol or tau > p.alpha2 + tol:
        raise DomainError(f"tau={tau} outside the momentum interval [1, {p.alpha2}]")
    return min(max(tau, 1.0), p.alpha2)


def eval_phi(p: EinsteinProfile, tau: float) -> float:
    """Profile value phi(tau), from the factored cubic.

    The factored form multiplies the signed distances to the three roots, so
    it loses no accuracy near the endpoints where the expanded form cancels
    catastrophically.  Exact zeros at tau = 1 and tau = alpha2.
    """
    tau = _checked_tau(p, tau)
    xi = tau - 1.0
    rho = p.alpha2 - tau
    d2 = tau - p.alpha1
    return -p.leading * xi * rho * d2 / tau


def eval_phi_expanded(p: EinsteinProfile, tau: float) -> float:
    """Profile value from the expanded rational form (cross-check route).

    Agrees with eval_phi to ~1e-13 relative away from the roots; near the
    roots the subtractions (tau^2 - 1 etc.) shed digits, which is why the
    factored form is the primary evaluation path.
    """
    tau = _checked_tau(p, tau)
    return (tau * tau - 1.0) / (p.n * tau) + p.leading * (tau ** 3 - 1.0) / tau


def eval_phi_exact(n: int, beta1: Fraction, tau: Fraction) -> Fraction:
    """Exact rational evaluation of phi for rational beta1 and tau.

    Test-oriented path: no floating arithmetic anywhere, so the result is an
    exact Fraction (e.g. n=1, beta1=1, tau=2 gives exactly 1/3).
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    b = Fraction(beta1)
    t = Fraction(tau)
    if not 0 < b <= 1 or n * b >= 2:
        raise DomainError(f"{BETA1_CONSTRAINT}; got beta1={b} for n={n}")
    return (t * t - 1) / (n * t) + (b - Fraction(2, n)) * (t ** 3 - 1) / (3 * t)


def eval_phi_prime(p: EinsteinProfile, tau: float) -> float:
    """Analytic derivative phi'(tau).

    Written through the factored numerator P = (tau-1)(tau-alpha1)(alpha2-tau)
    as phi' = cbar*P'/tau - phi/tau with cbar = -leading, so at the endpoints
    it returns exactly the one-sided limits cbar*(1-alpha1)*(alpha2-1) = beta1
    and -cbar*(alpha2-1)*(alpha2-alpha1)/alpha2 = -beta2.
    """
    tau = _checked_tau(p, tau)
    cbar = -p.leading
    xi = tau - 1.0
    rho = p.alpha2 - tau
    d2 = tau - p.alpha1
    pprime = (xi + d2) * rho - xi * d2
    phi = cbar * xi * rho * d2 / tau
    return cbar * pprime / tau - phi / tau


def ode_residual(p: EinsteinProfile, tau: float) -> float:
    """Defect of the Einstein ODE at an interior momentum value.

    Returns phi'(tau) + phi(tau)/tau - 2/n - (beta1 - 2/n)*tau, which is zero
    (to rounding) for genuine profiles and order-one-in-perturbation for any
    tampered root data, making it a cheap self-test.
    """
    tau = float(tau)
    if not 1.0 < tau < p.alpha2:
        raise DomainError(f"tau={tau} not interior to (1, {p.alpha2})")
    value = eval_phi_prime(p, tau) + eval_phi(p, tau) / tau
    return value - 2.0 / p.n - 3.0 * p.leading * tau
