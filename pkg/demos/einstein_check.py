"""
Finite-difference Einstein verification
=======================================

The metric is Einstein exactly when Ric(g) = lambda * g away from the two
degenerate fibers.  Here the Ricci form is recomputed numerically from the
log determinant of the metric with central differences and one Richardson
pass, then compared entrywise against lambda * g over a grid in both chart
coordinates.  A deliberately inconsistent second angle shows the check has
teeth.
"""

import dataclasses
import time

from hirzebruch_kee import (ChartPoint, build_map, chart_grid,
                            einstein_residual, make_profile, metric_at,
                            ricci_fd)


def wrong_second_angle(p, delta):
    # shift beta2 and rebuild the factored cubic with the matching root;
    # the profile still solves *an* ODE, just not the Einstein one
    b2 = p.beta2 + delta
    a2 = (2.0 + p.n * b2) / (2.0 - p.n * p.beta1)
    ang = dataclasses.replace(p.angles, beta2=b2)
    return dataclasses.replace(p, alpha2=a2, angles=ang)


def main():
    cases = [(1, 1.0), (1, 0.5), (2, 0.5), (3, 0.4)]

    print("pointwise check at one chart point, n = 1, beta1 = 1:")
    p = make_profile(1, 1.0)
    m = build_map(p)
    pt = ChartPoint(z=0.3 + 0.4j, w=1.5 - 0.2j)
    g = metric_at(p, m, pt)
    ric = ricci_fd(p, m, pt, step=1e-3)
    print(f"  || Ric - lambda g ||_max = {ric.max_abs_diff(g.scaled(p.lam)):.3e}")

    print("\ngrid residuals (75 points per surface, fd step 1e-3 + Richardson):")
    for n, b1 in cases:
        p = make_profile(n, b1)
        m = build_map(p)
        t0 = time.perf_counter()
        res = einstein_residual(p, m, chart_grid(p), step=1e-3)
        dt = time.perf_counter() - t0
        print(f"  n = {n}, beta1 = {b1:<4}: max residual {res:.3e}   ({dt:.2f}s)")

    # sensitivity: perturb the second angle by 1e-2 and rerun
    p = make_profile(1, 1.0)
    good = einstein_residual(p, build_map(p), chart_grid(p), step=1e-3)
    pp = wrong_second_angle(p, 1e-2)
    bad = einstein_residual(pp, build_map(pp), chart_grid(pp), step=1e-3)
    print("\ndetector sensitivity at n = 1, beta1 = 1:")
    print(f"  consistent angles:   {good:.3e}")
    print(f"  beta2 off by 1e-2:   {bad:.3e}   ({bad/good:.0f}x larger)")


if __name__ == "__main__":
    main()
