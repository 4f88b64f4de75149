"""Orthonormal spherical harmonics, tangent vector harmonics, and wave fields.

Conventions: fully orthonormal complex harmonics on the unit sphere with
Condon-Shortley phase, so Y(n,-m) = (-1)^m conj(Y(n,m)).  The tangent pair is
U = Grad Y / sqrt(n(n+1)) and V = xhat x U.  Associated Legendre values use
the standard order-then-degree upward recurrence on normalised functions,
which is stable past n = 150.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError, SingularityError

_POLE_SIN = 1e-10


@dataclass(frozen=True)
class ModeIndex:
    """Multipole index (n, m) with 1 <= n and |m| <= n."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"degree must be >= 1, got n={self.n}")
        if self.n > specfun.N_CAP:
            raise DomainError(f"degree n={self.n} exceeds cap {specfun.N_CAP}")
        if abs(self.m) > self.n:
            raise DomainError(f"|m| must be <= n, got (n,m)=({self.n},{self.m})")

    @property
    def s_n(self) -> float:
        return math.sqrt(self.n * (self.n + 1))


def _check_unit(direction):
    d = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(d)
    if abs(norm - 1.0) > 1e-12:
        raise DomainError(f"direction must be a unit vector, |d|={norm:.15g}")
    return d


def _angles(d):
    theta = math.atan2(math.hypot(d[0], d[1]), d[2])
    phi = math.atan2(d[1], d[0])
    return theta, phi


def _norm_legendre(n: int, m: int, theta: float):
    """Normalised P(n,m)(cos theta) and its theta-derivative, m >= 0.

    Normalisation absorbs sqrt((2n+1)/(4 pi) (n-m)!/(n+m)!) so that
    Y = P * exp(i m phi).
    """
    x = math.cos(theta)
    s = math.sin(theta)
    # seed P(m,m), climbing in order with on-the-fly normalisation
    pmm = 1.0 / math.sqrt(4.0 * math.pi)
    for k in range(1, m + 1):
        pmm *= -math.sqrt((2 * k + 1) / (2.0 * k)) * s
    if n == m:
        p_nm = pmm
        p_n1m = 0.0  # degree n-1 value, not defined for n == m
    else:
        p_prev = pmm
        p_curr = math.sqrt(2.0 * m + 3.0) * x * pmm
        for k in range(m + 2, n + 1):
            a = math.sqrt((4.0 * k * k - 1.0) / (k * k - m * m))
            b = math.sqrt(((k - 1.0) ** 2 - m * m) / (4.0 * (k - 1.0) ** 2 - 1.0))
            p_next = a * (x * p_curr - b * p_prev)
            p_prev, p_curr = p_curr, p_next
        p_nm, p_n1m = p_curr, p_prev
    # sin(theta) * dP/dtheta = n x P(n) - sqrt((n^2-m^2)(2n+1)/(2n-1)) P(n-1)
    if abs(s) < _POLE_SIN:
        dp = 0.0  # gradient at poles handled by analytic m = +/-1 limits
    else:
        coeff = math.sqrt((n * n - m * m) * (2.0 * n + 1.0) / (2.0 * n - 1.0))
        dp = (n * x * p_nm - coeff * p_n1m) / s
    return p_nm, dp


def scalar_Y(mode: ModeIndex, direction) -> complex:
    """Orthonormal spherical harmonic at a unit direction."""
    d = _check_unit(direction)
    theta, phi = _angles(d)
    m = abs(mode.m)
    p, _ = _norm_legendre(mode.n, m, theta)
    val = p * complex(math.cos(m * phi), math.sin(m * phi))
    if mode.m < 0:
        val = (-1) ** m * val.conjugate()
    return val


def _pole_gradient(n: int, north: bool):
    """Limit of Grad Y(n, 1) at a pole; every other order vanishes there."""
    lam = -0.25 * math.sqrt((2.0 * n + 1.0) * n * (n + 1.0) / math.pi)
    if not north and n % 2 == 0:
        lam = -lam
    return lam * np.array([1.0, 1j, 0.0])


def angular_basis(mode: ModeIndex, direction):
    """(Y, U, V) at one direction, sharing the Legendre evaluation."""
    d = _check_unit(direction)
    theta, phi = _angles(d)
    m = abs(mode.m)
    p, dp = _norm_legendre(mode.n, m, theta)
    eim = complex(math.cos(m * phi), math.sin(m * phi))
    y_val = p * eim
    s = math.sin(theta)
    if abs(s) < _POLE_SIN:
        grad = _pole_gradient(mode.n, north=d[2] > 0) if m == 1 \
            else np.zeros(3, dtype=complex)
    else:
        theta_hat = np.array([math.cos(theta) * math.cos(phi),
                              math.cos(theta) * math.sin(phi),
                              -s])
        phi_hat = np.array([-math.sin(phi), math.cos(phi), 0.0])
        grad = dp * eim * theta_hat + (1j * m * p / s) * eim * phi_hat
    if mode.m < 0:
        y_val = (-1) ** m * y_val.conjugate()
        grad = (-1) ** m * grad.conjugate()
    u = grad / mode.s_n
    v = np.cross(d, u)
    return y_val, u, v


def vector_UV(mode: ModeIndex, direction):
    """Tangent pair (U, V): U = Grad Y / sqrt(n(n+1)), V = xhat x U."""
    _, u, v = angular_basis(mode, direction)
    return u, v


def wave_MN(mode: ModeIndex, omega: float, x, kind: str = "regular"):
    """Divergence-free vector wave field and its curl at a point.

    Args:
        mode: multipole index.
        omega: wavenumber of the radial factor (> 0).
        x: evaluation point, |x| > 0.
        kind: "regular" uses j_n (entire), "radiating" uses h_n (outgoing).

    Returns:
        (value, curl): complex 3-vectors.  value = -S_n f_n(omega |x|) V;
        curl = S_n F_n(omega |x|)/|x| U + S_n^2 f_n(omega |x|)/|x| Y xhat,
        where F_n is the f_n + t f_n' combination.
    """
    if omega <= 0:
        raise DomainError(f"omega must be positive, got {omega}")
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise SingularityError("wave fields are undefined at the origin")
    xhat = x / r
    y_val, u, v = angular_basis(mode, xhat)
    lad = specfun.bessel_ladder(mode.n, omega * r)
    if kind == "regular":
        f = lad.jn(mode.n).to_complex()
        fc = lad.riccati_j(mode.n).to_complex()
    elif kind == "radiating":
        f = lad.hn(mode.n).to_complex()
        fc = lad.riccati_h(mode.n).to_complex()
    else:
        raise DomainError(f"kind must be 'regular' or 'radiating', got {kind!r}")
    s_n = mode.s_n
    value = -s_n * f * v
    curl = s_n * fc / r * u + s_n ** 2 * f / r * y_val * xhat
    return value, curl
