"""Composite Gauss-Legendre quadrature with doubling refinement.

Boundary-layer integrands concentrated like r**-(n+1) near an inner radius
are handled through the substitution r = r_lo * exp(u), which flattens them
onto unit panels in u.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import AccuracyError


@lru_cache(maxsize=64)
def gauss_legendre(npts: int):
    x, w = np.polynomial.legendre.leggauss(npts)
    return x, w


def integrate_panels(f, breakpoints, tol=1e-9, base_points=16, max_points=1024):
    """Integrate f over consecutive panels, doubling points until converged.

    Args:
        f: callable mapping a float to a complex (or float) value.
        breakpoints: increasing panel edges.
        tol: stop when successive estimates differ by < tol * max(1, |I|).
        base_points: Gauss-Legendre points per panel for the first pass.
        max_points: refinement cap; exceeded -> AccuracyError.

    Returns:
        The converged integral value.
    """
    edges = list(breakpoints)
    if len(edges) < 2:
        return 0j

    def estimate(npts):
        x, w = gauss_legendre(npts)
        total = 0j
        for a, b in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            nodes = mid + half * x
            total += half * sum(wi * f(t) for wi, t in zip(w, nodes))
        return total

    prev = estimate(base_points)
    npts = base_points * 2
    while npts <= max_points:
        curr = estimate(npts)
        if abs(curr - prev) <= tol * max(1.0, abs(curr)):
            return curr
        prev = curr
        npts *= 2
    raise AccuracyError(
        f"quadrature did not converge to tol={tol:g} within {max_points} points/panel",
        estimate=prev, achieved=abs(curr - prev))


def log_panel_edges(r_lo: float, r_hi: float):
    """Panel edges in u for r = r_lo * exp(u), one panel per unit of u."""
    u_hi = math.log(r_hi / r_lo)
    n_panels = max(1, math.ceil(u_hi))
    edges = [u_hi * i / n_panels for i in range(n_panels + 1)]
    return edges


def integrate_boundary_layer(f, r_lo, r_hi, tol=1e-9, base_points=16,
                             max_points=1024):
    """Integral of f(r) dr on [r_lo, r_hi] resolved near r_lo.

    Substitutes r = r_lo * exp(u) so an r**-(n+1) concentration becomes an
    O(1) smooth decay in u.
    """
    edges = log_panel_edges(r_lo, r_hi)

    def g(u):
        r = r_lo * math.exp(u)
        return f(r) * r

    return integrate_panels(g, edges, tol=tol, base_points=base_points,
                            max_points=max_points)


def integrate_adaptive(f, a, b, tol=1e-9, base_points=16, max_points=1024,
                       n_panels=4):
    """Integral of a smooth f on [a, b] by panel-doubling refinement."""
    edges = np.linspace(a, b, n_panels + 1)
    return integrate_panels(f, edges, tol=tol, base_points=base_points,
                            max_points=max_points)


def fit_power_law(xs, ys):
    """Fitted slope of log|y| against log(x); ignores zero entries."""
    lx = [math.log(x) for x, y in zip(xs, ys) if abs(y) > 0]
    ly = [math.log(abs(y)) for y in ys if abs(y) > 0]
    if len(lx) < 2:
        raise ValueError("need at least two nonzero samples for a slope fit")
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)
