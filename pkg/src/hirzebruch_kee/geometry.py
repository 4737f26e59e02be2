"""Metric tensor, curvature checks, and fiber geometry in the affine chart.

Points live in the chart (w, z) with w != 0 the fiber coordinate and z the
base coordinate; the invariant combination is s = log|w|^2 + n log(1+|z|^2).
With f the potential of the profile (f' = tau, f'' = phi as functions of s),
the Kahler metric has Hermitian matrix

    g_ww = phi/|w|^2,
    g_wz = n phi z / (w (1+|z|^2)),
    g_zz = (n tau + n^2 phi |z|^2) / (1+|z|^2)^2,

with the exact determinant identity det g * |w|^2 (1+|z|^2)^2 = n tau phi.
The Ricci form is recovered purely numerically as -dd^c log det g via central
second differences in (log|w|, arg w, Re z, Im z) with Richardson
extrapolation, and compared against lam * g; nothing of the closed-form
curvature enters that check, which is the point.

Restricted to a fiber the metric is dtau^2/(2 phi) + 2 phi dtheta^2, so the
radial arclength element is dtau/sqrt(2 phi).  The factor 2 is kept exactly
throughout (dropping it, as rough estimates sometimes do, would scale every
fiber length by sqrt(2)).  Fiber lengths handle the inverse-square-root
endpoint singularity by the substitution tau = root -+ t^2, which makes the
integrand analytic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PositivityError, RangeError
from .legendre import TauSMap, tau_of_s
from .profile import EinsteinProfile, eval_phi
from .quadrature import DEFAULT_QUAD, QuadratureConfig, quad_checked


@dataclass(frozen=True)
class ChartPoint:
    """A point of the affine chart; w = 0 (the zero section) is excluded."""

    z: complex
    w: complex

    def __post_init__(self):
        if self.w == 0:
            raise DomainError("chart points need w != 0 (w = 0 is the zero section)")


def chart_s(n: int, pt: ChartPoint) -> float:
    """Invariant coordinate s = log|w|^2 + n log(1+|z|^2)."""
    return math.log(abs(pt.w) ** 2) + n * math.log1p(abs(pt.z) ** 2)


@dataclass(frozen=True)
class HermitianForm2:
    """A 2x2 Hermitian form in the (w, z) chart basis.

    Only the upper triangle is stored: the diagonal entries are real and the
    (z, w) entry is the conjugate of g_wz.
    """

    g_ww: float
    g_wz: complex
    g_zz: float

    def det(self) -> float:
        return self.g_ww * self.g_zz - abs(self.g_wz) ** 2

    def min_eigenvalue(self) -> float:
        tr = self.g_ww + self.g_zz
        gap = math.hypot(self.g_ww - self.g_zz, 2.0 * abs(self.g_wz))
        return 0.5 * (tr - gap)

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.g_ww, self.g_wz],
                         [self.g_wz.conjugate() if isinstance(self.g_wz, complex)
                          else self.g_wz, self.g_zz]], dtype=complex)

    def scaled(self, k: float) -> "HermitianForm2":
        return HermitianForm2(k * self.g_ww, k * self.g_wz, k * self.g_zz)

    def max_abs_diff(self, other: "HermitianForm2") -> float:
        return max(abs(self.g_ww - other.g_ww),
                   abs(self.g_wz - other.g_wz),
                   abs(self.g_zz - other.g_zz))


@dataclass(frozen=True)
class FiberMetricSample:
    """Coefficients of the fiber metric dtau^2/(2 phi) + 2 phi dtheta^2."""

    tau: float
    radial_coeff: float
    angular_coeff: float


def fiber_metric_sample(p: EinsteinProfile, tau: float) -> FiberMetricSample:
    phi = eval_phi(p, tau)
    if phi <= 0.0:
        raise DomainError(f"fiber metric sample needs interior tau, got tau={tau}")
    return FiberMetricSample(tau=float(tau), radial_coeff=1.0 / (2.0 * phi),
                             angular_coeff=2.0 * phi)


def metric_at(p: EinsteinProfile, m: TauSMap, pt: ChartPoint) -> HermitianForm2:
    """Kahler metric at a chart point (RangeError outside the map's hull)."""
    s = chart_s(p.n, pt)
    tau = tau_of_s(m, s)
    phi = eval_phi(p, tau)
    az = 1.0 + abs(pt.z) ** 2
    g_ww = phi / abs(pt.w) ** 2
    g_wz = p.n * phi * pt.z / (pt.w * az)
    g_zz = (p.n * tau + p.n ** 2 * phi * abs(pt.z) ** 2) / az ** 2
    form = HermitianForm2(g_ww=g_ww, g_wz=complex(g_wz), g_zz=g_zz)
    if not (form.g_ww > 0.0 and form.det() > 0.0):
        raise PositivityError(f"metric lost positivity at z={pt.z}, w={pt.w}: "
                              f"g_ww={form.g_ww}, det={form.det()}")
    return form


def fs_pullback(pt: ChartPoint) -> HermitianForm2:
    """Pullback of the Fubini-Study form of the base: only g_zz survives."""
    az = 1.0 + abs(pt.z) ** 2
    return HermitianForm2(g_ww=0.0, g_wz=0.0 + 0.0j, g_zz=1.0 / az ** 2)


def _log_det_at(p: EinsteinProfile, m: TauSMap, u: float, th: float,
                x: float, y: float) -> float:
    pt = ChartPoint(z=complex(x, y), w=cmath.exp(complex(u, th)))
    return math.log(metric_at(p, m, pt).det())


def _complex_hessian(p: EinsteinProfile, m: TauSMap, pt: ChartPoint,
                     h: float) -> tuple[float, complex, float]:
    """Central-difference complex Hessian of log det g at one step size.

    Real steps are taken in (log|w|, arg w, Re z, Im z); the holomorphic
    coordinate W = log w then satisfies d/dW = (d_u - i d_th)/2, so
    L_WWbar = (L_uu + L_thth)/4, L_Wzbar = ((L_ux + L_thy) + i(L_uy - L_thx))/4
    and L_zzbar = (L_xx + L_yy)/4.
    """
    u0 = math.log(abs(pt.w))
    th0 = cmath.phase(pt.w)
    x0, y0 = pt.z.real, pt.z.imag

    def L(du=0.0, dth=0.0, dx=0.0, dy=0.0):
        return _log_det_at(p, m, u0 + du, th0 + dth, x0 + dx, y0 + dy)

    c = L()
    dd = {}
    axes = ("u", "th", "x", "y")
    for ax in axes:
        plus = L(**{f"d{ax}": h})
        minus = L(**{f"d{ax}": -h})
        dd[ax, ax] = (plus - 2.0 * c + minus) / h ** 2
    for i, ax in enumerate(axes):
        for bx in axes[i + 1:]:
            pp = L(**{f"d{ax}": h, f"d{bx}": h})
            pm = L(**{f"d{ax}": h, f"d{bx}": -h})
            mp = L(**{f"d{ax}": -h, f"d{bx}": h})
            mm = L(**{f"d{ax}": -h, f"d{bx}": -h})
            dd[ax, bx] = (pp - pm - mp + mm) / (4.0 * h ** 2)
    l_ww = 0.25 * (dd["u", "u"] + dd["th", "th"])
    l_wz = 0.25 * complex(dd["u", "x"] + dd["th", "y"],
                          dd["u", "y"] - dd["th", "x"])
    l_zz = 0.25 * (dd["x", "x"] + dd["y", "y"])
    return l_ww, l_wz, l_zz


def ricci_fd(p: EinsteinProfile, m: TauSMap, pt: ChartPoint,
             step: float = 1e-3) -> HermitianForm2:
    """Ricci form by finite differences of log det g, no closed form used.

    Richardson-extrapolates the second differences over steps (h, h/2),
    cancelling the O(h^2) truncation, then maps the Hessian in W = log w
    back to the w coordinate (d/dw = (1/w) d/dW).
    """
    if step <= 0.0:
        raise DomainError(f"step must be positive, got {step}")
    a = _complex_hessian(p, m, pt, step)
    b = _complex_hessian(p, m, pt, 0.5 * step)
    l_ww, l_wz, l_zz = ((4.0 * bb - aa) / 3.0 for aa, bb in zip(a, b))
    ric_ww = -l_ww / abs(pt.w) ** 2
    ric_wz = -l_wz / pt.w
    ric_zz = -l_zz
    return HermitianForm2(g_ww=ric_ww, g_wz=complex(ric_wz), g_zz=ric_zz)


def chart_grid(p: EinsteinProfile, n_abs: int = 5, n_arg: int = 5, n_s: int = 3,
               s_lo: float = -2.0, s_hi: float = 2.0) -> list[ChartPoint]:
    """Deterministic interior grid in (|z|, arg z, s) for residual sweeps.

    |w| is solved from the target s, so the points sample the s-range evenly
    regardless of n; arg w is held fixed (the metric entries depend on it
    only through phases that the Einstein comparison sees anyway).
    """
    pts = []
    for zabs in np.linspace(0.2, 1.5, n_abs):
        for k in range(n_arg):
            zarg = 0.15 + 2.0 * math.pi * k / n_arg
            z = cmath.rect(zabs, zarg)
            for s in np.linspace(s_lo, s_hi, n_s):
                logw2 = s - p.n * math.log1p(abs(z) ** 2)
                w = cmath.rect(math.exp(0.5 * logw2), 0.4)
                pts.append(ChartPoint(z=z, w=w))
    return pts


def einstein_residual(p: EinsteinProfile, m: TauSMap, grid: list[ChartPoint],
                      step: float = 1e-3) -> float:
    """max over the grid of || ricci_fd - lam * g ||_max (entrywise)."""
    worst = 0.0
    for pt in grid:
        try:
            g = metric_at(p, m, pt)
            ric = ricci_fd(p, m, pt, step=step)
        except RangeError as exc:
            raise RangeError(f"grid point z={pt.z}, w={pt.w} left the hull: {exc}") from exc
        worst = max(worst, ric.max_abs_diff(g.scaled(p.lam)))
    return worst


def _lower_piece(p: EinsteinProfile, a: float, b: float,
                 quad: QuadratureConfig) -> float:
    # integral of dtau/sqrt(2 phi) over [a, b] via tau = 1 + t^2; the
    # substituted integrand sqrt(2 tau / (cbar rho d2)) is smooth up to tau = 1
    cbar = -p.leading
    ta, tb = math.sqrt(max(a - 1.0, 0.0)), math.sqrt(max(b - 1.0, 0.0))

    def fun(t):
        tau = 1.0 + t * t
        rho = p.alpha2 - tau
        d2 = tau - p.alpha1
        return math.sqrt(2.0 * tau / (cbar * rho * d2))

    return quad_checked(fun, ta, tb, quad)


def _upper_piece(p: EinsteinProfile, a: float, b: float,
                 quad: QuadratureConfig) -> float:
    # same over [a, b] via tau = alpha2 - t^2, smooth up to tau = alpha2
    cbar = -p.leading
    ta, tb = math.sqrt(max(p.alpha2 - b, 0.0)), math.sqrt(max(p.alpha2 - a, 0.0))

    def fun(t):
        tau = p.alpha2 - t * t
        xi = tau - 1.0
        d2 = tau - p.alpha1
        return math.sqrt(2.0 * tau / (cbar * xi * d2))

    return quad_checked(fun, ta, tb, quad)


def fiber_length(p: EinsteinProfile, tau_a: float, tau_b: float,
                 quad: QuadratureConfig | None = None) -> float:
    """Arclength of the fiber segment [tau_a, tau_b]: integral of dtau/sqrt(2 phi).

    Endpoints are allowed; each half of the interval is transformed against
    its own root so the integrable 1/sqrt singularities disappear.
    """
    quad = quad or DEFAULT_QUAD
    tol = 16.0 * math.ulp(max(1.0, p.alpha2))
    a, b = float(tau_a), float(tau_b)
    if not (1.0 - tol <= a <= b <= p.alpha2 + tol):
        raise DomainError(f"need 1 <= tau_a <= tau_b <= alpha2, got [{tau_a}, {tau_b}]")
    a = min(max(a, 1.0), p.alpha2)
    b = min(max(b, 1.0), p.alpha2)
    if a == b:
        return 0.0
    mid = 0.5 * (1.0 + p.alpha2)
    if b <= mid:
        return _lower_piece(p, a, b, quad)
    if a >= mid:
        return _upper_piece(p, a, b, quad)
    return _lower_piece(p, a, mid, quad) + _upper_piece(p, mid, b, quad)


def cone_angle_probe(p: EinsteinProfile, end: str, tau_probe: float,
                     quad: QuadratureConfig | None = None) -> float:
    """Geodesic-circle angle estimate 2 pi sqrt(2 phi)/radius near one end.

    radius is the fiber arclength from the chosen root to tau_probe and
    2 pi sqrt(2 phi(tau_probe)) is the circumference of the theta-circle, so
    the ratio tends to 2 pi beta1 (lower end) or 2 pi beta2 (upper end) as
    the probe approaches the root: a purely metric measurement of the cone
    angles, independent of the boundary-slope identities.
    """
    quad = quad or DEFAULT_QUAD
    tau_probe = float(tau_probe)
    if not 1.0 < tau_probe < p.alpha2:
        raise DomainError(f"probe tau={tau_probe} not interior to (1, {p.alpha2})")
    circumference = 2.0 * math.pi * math.sqrt(2.0 * eval_phi(p, tau_probe))
    if end == "lower":
        radius = fiber_length(p, 1.0, tau_probe, quad)
    elif end == "upper":
        radius = fiber_length(p, tau_probe, p.alpha2, quad)
    else:
        raise DomainError(f"end must be 'lower' or 'upper', got {end!r}")
    return circumference / radius


def fiber_volume(p: EinsteinProfile, quad: QuadratureConfig | None = None) -> float:
    """Area of one fiber by quadrature of its area form.

    The area density sqrt(radial * angular) is identically 1 in (tau, theta),
    so the result equals 2 pi (alpha2 - 1); the quadrature still assembles it
    from the metric coefficients as a consistency route.
    """
    quad = quad or DEFAULT_QUAD

    def density(tau):
        s = fiber_metric_sample(p, tau)
        return math.sqrt(s.radial_coeff * s.angular_coeff)

    return 2.0 * math.pi * quad_checked(density, 1.0, p.alpha2, quad)


def total_volume(p: EinsteinProfile, quad: QuadratureConfig | None = None) -> float:
    """Total volume of the surface: 2 n (2 pi)^2 integral of tau dtau.

    The mixed volume density is 2 n tau phi against the product of the base
    area form (total mass 2 pi) and ds dtheta on the fibers; since
    phi ds = dtau, the s-integral collapses to the momentum integral of
    2 tau, giving 4 pi^2 n (alpha2^2 - 1).  Matches (2 pi)^2 times the
    self-intersection of the Kahler class, the single place the 2 pi class
    normalization enters this package.
    """
    quad = quad or DEFAULT_QUAD
    moment = quad_checked(lambda tau: tau, 1.0, p.alpha2, quad)
    return 2.0 * p.n * (2.0 * math.pi) ** 2 * moment
