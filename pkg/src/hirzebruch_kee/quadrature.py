"""Quadrature plumbing: tolerance config, a checked adaptive wrapper, and
fixed Gauss-Legendre rules for smooth cell integrals."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import QuadratureError


@dataclass(frozen=True)
class QuadratureConfig:
    """Absolute/relative integration targets shared by all quadratures."""

    epsabs: float = 1e-12
    epsrel: float = 1e-10
    limit: int = 200


DEFAULT_QUAD = QuadratureConfig()


def quad_checked(fun, a: float, b: float, cfg: QuadratureConfig | None = None) -> float:
    """scipy adaptive quadrature with the reported error actually enforced."""
    cfg = cfg or DEFAULT_QUAD
    out = integrate.quad(fun, a, b, epsabs=cfg.epsabs, epsrel=cfg.epsrel,
                         limit=cfg.limit, full_output=1)
    value, abserr = out[0], out[1]
    if len(out) > 3:
        raise QuadratureError(f"integration on [{a}, {b}] did not converge: {out[3]}")
    budget = 10.0 * max(cfg.epsabs, cfg.epsrel * abs(value))
    if abserr > budget:
        raise QuadratureError(
            f"integration on [{a}, {b}] missed its tolerance: "
            f"abserr={abserr:.3e} > {budget:.3e}")
    return value


@lru_cache(maxsize=8)
def gauss_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def gauss_cell(fun, a: float, b: float, order: int = 32) -> float:
    """Fixed-order Gauss-Legendre integral of a vectorized smooth integrand."""
    nodes, weights = gauss_rule(order)
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return half * float(np.dot(weights, fun(mid + half * nodes)))
