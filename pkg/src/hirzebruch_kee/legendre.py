"""Correspondence between the momentum variable tau and the log-norm
coordinate s of the fiber.

On a profile p the two coordinates are linked by ds = dtau/phi(tau), so s
diverges logarithmically at each root of phi (simple poles of 1/phi), with
asymptotic slopes d(log phi)/ds -> beta1 at the lower end and -> -beta2 at
the upper end.  The map is tabulated on a knot ladder graded geometrically
toward both roots: in the stretched coordinate

    q = log(tau - 1) - log(alpha2 - tau)

a uniform step is a fixed ratio in the distance to the nearer root, and the
density

    ds/dq = tau / ((alpha2 - 1) * cbar * (tau - alpha1)),   cbar = -leading,

extends analytically to the closed interval (the root factors cancel), so a
short fixed Gauss-Legendre rule per cell is exact to machine precision.  The
monotone piecewise-cubic interpolant over the knots only seeds queries; both
directions are then polished by safeguarded Newton against the cell
quadrature, keeping s_of_tau and tau_of_s mutually inverse to ~1e-12 and the
identity d tau/ds = phi(tau) true to quadrature accuracy.  The downstream
finite-difference Ricci check needs that much: interpolation error alone,
pushed through a second difference, would swamp its 1e-5 budget.

Working in q also sidesteps a representability wall: at beta1 near 1 the
hull |s| >= 40 requires tau - 1 ~ exp(-40), which is far below the spacing
of doubles around 1.  Knots near that end are stored in q, where the tail is
perfectly representable; only the cosmetic (tau, s) view saturates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, QuadratureError, RangeError
from .profile import EinsteinProfile
from .quadrature import DEFAULT_QUAD, QuadratureConfig, gauss_cell

_LN2 = math.log(2.0)
_TARGET_DS = 0.25          # aimed-for s-advance per knot cell
_HULL_MARGIN = 2.0         # build past the requested hull by this much
_MAX_KNOTS = 200_000


@dataclass(frozen=True)
class GaugeChoice:
    """Additive gauge of s: the momentum value tau0 where s = 0.

    tau0 = None selects the midpoint (1 + alpha2)/2.  Rebuilding the map
    with a different gauge shifts every s value by one constant.
    """

    tau0: float | None = None


@dataclass(frozen=True, eq=False)
class TauSMap:
    """Tabulated, quadrature-backed bijection between tau and s."""

    profile: EinsteinProfile
    tau0: float
    s_hull: float
    quad: QuadratureConfig
    q_knots: np.ndarray
    s_knots: np.ndarray
    _seed_s_of_q: PchipInterpolator
    _seed_q_of_s: PchipInterpolator

    @property
    def s_min(self) -> float:
        return float(self.s_knots[0])

    @property
    def s_max(self) -> float:
        return float(self.s_knots[-1])

    @property
    def knots(self) -> list[tuple[float, float]]:
        """Knots as (tau, s) pairs, strictly increasing in tau.

        Near tau = 1 the deep tail of the ladder is denser than the spacing
        of floating-point numbers; pairs that would repeat a tau value are
        dropped from this view (the internal q-ladder keeps them).
        """
        taus = _tau_from_q(self.profile, self.q_knots)
        keep = np.empty(taus.shape, dtype=bool)
        keep[0] = True
        keep[1:] = np.diff(taus) > 0.0
        return list(zip(taus[keep].tolist(), self.s_knots[keep].tolist()))


def _sigma(q):
    """Stable logistic 1/(1 + exp(-q)), scalar or ndarray."""
    q = np.asarray(q, dtype=float)
    t = np.exp(-np.abs(q))
    out = np.where(q >= 0.0, 1.0 / (1.0 + t), t / (1.0 + t))
    return out if out.ndim else float(out)


def _tau_from_q(p: EinsteinProfile, q):
    span = p.alpha2 - 1.0
    out = 1.0 + span * _sigma(q)
    return out if isinstance(out, np.ndarray) else float(out)


def _q_from_tau(p: EinsteinProfile, tau: float) -> float:
    xi = tau - 1.0
    rho = p.alpha2 - tau
    if not (xi > 0.0 and rho > 0.0):
        # the map covers an open interval; s diverges at both endpoints
        raise RangeError(f"tau={tau} not interior to (1, {p.alpha2}); s is unbounded there")
    return math.log(xi) - math.log(rho)


def _dsdq(p: EinsteinProfile, q):
    """Analytic density ds/dq; the root factors of phi cancel exactly."""
    span = p.alpha2 - 1.0
    sig = _sigma(q)
    tau = 1.0 + span * sig
    d2 = (1.0 - p.alpha1) + span * sig    # tau - alpha1, no cancellation
    cbar = -p.leading
    return tau / (span * cbar * d2)


def _cell(p: EinsteinProfile, qa: float, qb: float, order: int = 32) -> float:
    return gauss_cell(lambda q: _dsdq(p, q), qa, qb, order=order)


def build_map(p: EinsteinProfile, gauge: GaugeChoice | None = None,
              quad: QuadratureConfig | None = None, s_hull: float = 40.0) -> TauSMap:
    """Tabulate s(tau) until |s| exceeds s_hull on both sides of the gauge.

    The march steps in q, capped at ln 2 (distance to the nearer root at
    most halves per knot) and shrunk wherever ds/dq is large so each cell
    advances s by about 0.25.  Every cell is integrated at order 32 and
    cross-checked at order 16; a disagreement beyond the configured
    tolerance raises QuadratureError.
    """
    quad = quad or DEFAULT_QUAD
    gauge = gauge or GaugeChoice()
    if not (s_hull >= 1.0 and math.isfinite(s_hull)):
        raise DomainError(f"s_hull must be a finite value >= 1, got {s_hull}")
    tau0 = gauge.tau0 if gauge.tau0 is not None else 0.5 * (1.0 + p.alpha2)
    if not 1.0 < tau0 < p.alpha2:
        raise DomainError(f"gauge tau0={tau0} not interior to (1, {p.alpha2})")
    q0 = _q_from_tau(p, tau0)
    target = s_hull + _HULL_MARGIN

    def march(direction: int) -> tuple[list[float], list[float]]:
        qs, ss = [], []
        q, s = q0, 0.0
        while direction * s < target:
            dq = min(_LN2, max(1e-6, _TARGET_DS / _dsdq(p, q)))
            qn = q + direction * dq
            ds = _cell(p, q, qn)
            check = _cell(p, q, qn, order=16)
            budget = 50.0 * max(quad.epsabs, quad.epsrel * (abs(ds) + 1e-3))
            if abs(ds - check) > budget:
                raise QuadratureError(
                    f"knot cell [{q}, {qn}] failed its order-16/32 cross-check: "
                    f"|{ds} - {check}| > {budget:.3e}")
            q, s = qn, s + ds
            qs.append(q)
            ss.append(s)
            if len(qs) > _MAX_KNOTS:
                raise QuadratureError("knot ladder exceeded its size guard")
        return qs, ss

    q_lo, s_lo = march(-1)
    q_hi, s_hi = march(+1)
    q_knots = np.array(q_lo[::-1] + [q0] + q_hi)
    s_knots = np.array(s_lo[::-1] + [0.0] + s_hi)
    if not (np.all(np.diff(q_knots) > 0.0) and np.all(np.diff(s_knots) > 0.0)):
        raise QuadratureError("knot ladder lost strict monotonicity")
    return TauSMap(profile=p, tau0=float(tau0), s_hull=float(s_hull), quad=quad,
                   q_knots=q_knots, s_knots=s_knots,
                   _seed_s_of_q=PchipInterpolator(q_knots, s_knots),
                   _seed_q_of_s=PchipInterpolator(s_knots, q_knots))


def _s_at_q(m: TauSMap, q: float) -> float:
    """s at an in-hull q, anchored at the nearest knot below."""
    i = int(np.clip(np.searchsorted(m.q_knots, q) - 1, 0, len(m.q_knots) - 2))
    return float(m.s_knots[i]) + _cell(m.profile, float(m.q_knots[i]), q)


def s_of_tau(m: TauSMap, tau: float) -> float:
    """Log-norm coordinate of a momentum value inside the covered hull."""
    q = _q_from_tau(m.profile, float(tau))
    if q < m.q_knots[0] or q > m.q_knots[-1]:
        raise RangeError(f"tau={tau} outside the covered hull "
                         f"(|s| <= {m.s_hull}); rebuild with a larger s_hull")
    return _s_at_q(m, q)


def _q_of_s(m: TauSMap, s: float) -> float:
    s = float(s)
    if not math.isfinite(s) or s < m.s_min or s > m.s_max:
        raise RangeError(f"s={s} outside the covered hull [{m.s_min}, {m.s_max}]")
    j = int(np.clip(np.searchsorted(m.s_knots, s) - 1, 0, len(m.s_knots) - 2))
    lo, hi = float(m.q_knots[j]), float(m.q_knots[j + 1])
    s_lo = float(m.s_knots[j])
    q = float(np.clip(m._seed_q_of_s(s), lo, hi))
    a, b = lo, hi                      # bracket with F(a) <= 0 <= F(b)
    ftol = 1e-13 * (1.0 + abs(s))
    for _ in range(60):
        f = s_lo + _cell(m.profile, lo, q) - s
        if f < 0.0:
            a = q
        else:
            b = q
        step = f / _dsdq(m.profile, q)
        qn = q - step
        if not a <= qn <= b:
            qn = 0.5 * (a + b)
        if abs(f) <= ftol and abs(qn - q) <= 1e-12 * (1.0 + abs(q)):
            return qn                  # final polished Newton update
        q = qn
    return q


def tau_of_s(m: TauSMap, s: float) -> float:
    """Momentum value at a log-norm coordinate inside the covered hull."""
    return _tau_from_q(m.profile, _q_of_s(m, s))


def log_slope_at_end(m: TauSMap, end: str, s_probe: float) -> float:
    """Logarithmic slope d(log phi)/ds = phi'(tau(s)) deep in one tail.

    Converges to beta1 as s -> -infinity (end="lower") and to -beta2 as
    s -> +infinity (end="upper"); the leftover error decays like exp(-|s|
    beta).  The momentum is recovered in the stretched coordinate, so probes
    far beyond the floating-point resolution of tau itself remain exact.
    """
    if end not in ("lower", "upper"):
        raise DomainError(f"end must be 'lower' or 'upper', got {end!r}")
    s_probe = float(s_probe)
    if abs(s_probe) < 20.0:
        raise DomainError(f"slope probes need |s| >= 20, got {s_probe}")
    if (end == "lower") != (s_probe < 0.0):
        raise DomainError(f"end={end!r} expects s of the {'negative' if end == 'lower' else 'positive'} sign")
    q = _q_of_s(m, s_probe)
    p = m.profile
    span = p.alpha2 - 1.0
    sig = _sigma(q)
    xi = span * sig
    rho = span * (1.0 - sig)
    d2 = (1.0 - p.alpha1) + xi
    tau = 1.0 + xi
    cbar = -p.leading
    pprime = (xi + d2) * rho - xi * d2
    phi = cbar * xi * rho * d2 / tau
    return cbar * pprime / tau - phi / tau


def y_of_tau(p: EinsteinProfile, tau: float) -> float:
    """Collapse-rescaled fiber coordinate y = (tau - 1 - n b/2)/(n b^2/2).

    Centered at the small-angle fiber midpoint and scaled so the fiber stays
    order-one as beta1 -> 0; y(1) = -1/beta1 exactly.
    """
    tau = float(tau)
    tol = 16.0 * math.ulp(max(1.0, p.alpha2))
    if not 1.0 - tol <= tau <= p.alpha2 + tol:
        raise DomainError(f"tau={tau} outside [1, {p.alpha2}]")
    nb = p.n * p.beta1
    return (tau - 1.0 - 0.5 * nb) / (0.5 * nb * p.beta1)


def tau_of_y(p: EinsteinProfile, y: float) -> float:
    """Inverse of y_of_tau; y = 0 is tau = 1 + n*beta1/2 exactly."""
    y = float(y)
    nb = p.n * p.beta1
    y_top = y_of_tau(p, p.alpha2)
    tol = 16.0 * math.ulp(max(1.0, abs(y_top), 1.0 / p.beta1))
    if not -1.0 / p.beta1 - tol <= y <= y_top + tol:
        raise DomainError(f"y={y} outside [{-1.0 / p.beta1}, {y_top}]")
    return 1.0 + 0.5 * nb + y * (0.5 * nb * p.beta1)
