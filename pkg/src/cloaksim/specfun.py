"""Spherical Bessel/Hankel functions with overflow-safe scaled variants.

Everything is built on one radial "ladder" per (n_max, t): j_n by downward
recurrence normalised against the closed forms at order 0/1, y_n by upward
recurrence, both with on-the-fly rescaling so the stored numbers are
log-magnitude/sign pairs valid to n = 200 at arguments where plain doubles
are hopeless.  Derivative combinations J_n = j_n + t j_n' and
H_n = h_n + t h_n' come from the exact recurrence f_n' = f_{n-1} - (n+1)/t f_n,
i.e. J_n = t j_{n-1} - n j_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapabilityError, DomainError
from .scaled import ScaledComplex, scaled_from_log_sign, scaled_real

N_CAP = 200

_RESCALE_LOG = 500.0  # rescale working pair when log magnitude exceeds this
_SQRT_PI = math.sqrt(math.pi)


def _require_args(n: int, t: float) -> None:
    if t <= 0.0 or not math.isfinite(t):
        raise DomainError(f"argument must be positive and finite, got t={t}")
    if n < 0:
        raise DomainError(f"order must be >= 0, got n={n}")
    if n > N_CAP:
        raise CapabilityError(f"order n={n} exceeds supported cap {N_CAP}")


def miller_start_order(n: int, t: float) -> int:
    """Start order for the downward j-recurrence: n + max(15, ceil(2 t))."""
    return n + max(15, math.ceil(2.0 * t))


@dataclass(frozen=True)
class BesselLadder:
    """All orders 0..n_max of j_n, y_n at one argument, in scaled form.

    ``j[k]`` and ``y[k]`` are (log-magnitude, sign) pairs wrapped as
    ScaledComplex with phase +/-1; ``jm1``/``ym1`` hold the order -1 values
    cos(t)/t and sin(t)/t used by the derivative combinations.
    """

    n_max: int
    t: float
    j: tuple
    y: tuple
    jm1: ScaledComplex
    ym1: ScaledComplex

    def jn(self, n: int) -> ScaledComplex:
        return self.jm1 if n == -1 else self.j[n]

    def yn(self, n: int) -> ScaledComplex:
        return self.ym1 if n == -1 else self.y[n]

    def hn(self, n: int) -> ScaledComplex:
        return self.jn(n) + self.yn(n) * 1j

    def riccati_j(self, n: int) -> ScaledComplex:
        # J_n = j_n + t j_n' = t j_{n-1} - n j_n
        return self.jn(n - 1) * self.t - self.jn(n) * n

    def riccati_h(self, n: int) -> ScaledComplex:
        return self.hn(n - 1) * self.t - self.hn(n) * n


def bessel_ladder(n_max: int, t: float) -> BesselLadder:
    """Compute the scaled j/y ladder for orders 0..n_max at argument t > 0."""
    _require_args(n_max, t)
    sin_t, cos_t = math.sin(t), math.cos(t)
    j0, j1 = sin_t / t, sin_t / t**2 - cos_t / t
    y0, y1 = -cos_t / t, -cos_t / t**2 - sin_t / t

    # downward Miller recurrence for j, rescaled; normalised at order 0 or 1,
    # whichever closed form is larger (one of sin t, cos t may vanish)
    start = miller_start_order(n_max, t)
    f_hi = 0.0  # f_{k+1}
    f = 1.0     # f_k at k = start
    shift = 0.0
    raw = [0.0] * (n_max + 1)
    raw_shift = [0.0] * (n_max + 1)
    raw0 = raw1 = None
    shift0 = shift1 = 0.0
    for k in range(start, -1, -1):
        if k <= n_max:
            raw[k] = f
            raw_shift[k] = shift
        if k == 1:
            raw1, shift1 = f, shift
        if k == 0:
            raw0, shift0 = f, shift
            break
        f_lo = (2 * k + 1) / t * f - f_hi
        f_hi, f = f, f_lo
        af = abs(f)
        if af > 0.0 and math.log(af) > _RESCALE_LOG:
            f /= af
            f_hi /= af
            shift += math.log(af)

    if abs(j0) >= abs(j1):
        ref_raw, ref_shift, ref_val = raw0, shift0, j0
    else:
        ref_raw, ref_shift, ref_val = raw1, shift1, j1
    log_ref = math.log(abs(ref_raw)) + ref_shift
    log_val = math.log(abs(ref_val)) if ref_val != 0.0 else float("-inf")
    sgn_ref = math.copysign(1.0, ref_raw) * math.copysign(1.0, ref_val)

    js = []
    for k in range(n_max + 1):
        if raw[k] == 0.0:
            js.append(ScaledComplex.zero())
            continue
        lm = math.log(abs(raw[k])) + raw_shift[k] - log_ref + log_val
        js.append(scaled_from_log_sign(lm, math.copysign(1.0, raw[k]) * sgn_ref))

    # upward recurrence for y, rescaled (grows with order for t < n)
    ys = [scaled_real(y0)]
    if n_max >= 1:
        ys.append(scaled_real(y1))
    g_lo, g = y0, y1
    shift = 0.0
    for k in range(1, n_max):
        g_hi = (2 * k + 1) / t * g - g_lo
        g_lo, g = g, g_hi
        ag = abs(g)
        if ag > 0.0 and math.log(ag) > _RESCALE_LOG:
            g /= ag
            g_lo /= ag
            shift += math.log(ag)
        if g == 0.0:
            ys.append(ScaledComplex.zero())
        else:
            ys.append(scaled_from_log_sign(math.log(abs(g)) + shift,
                                           math.copysign(1.0, g)))

    return BesselLadder(
        n_max=n_max,
        t=t,
        j=tuple(js),
        y=tuple(ys),
        jm1=scaled_real(cos_t / t),
        ym1=scaled_real(sin_t / t),
    )


# -- plain-double and scaled views ------------------------------------------


def sph_bessel(n: int, t: float):
    """j_n(t), y_n(t), h_n(t) as plain doubles (h complex).

    Values outside float range collapse to 0/inf; use ``sph_bessel_scaled``
    where that matters.
    """
    lad = bessel_ladder(n, t)
    jn = lad.jn(n).to_complex().real
    yn = lad.yn(n).to_complex().real
    return jn, yn, complex(jn, yn)


def sph_bessel_scaled(n: int, t: float):
    """j_n(t), y_n(t), h_n(t) as ScaledComplex."""
    lad = bessel_ladder(n, t)
    return lad.jn(n), lad.yn(n), lad.hn(n)


def riccati_combo(n: int, t: float):
    """J_n(t) = j_n + t j_n' (real) and H_n(t) = h_n + t h_n' (complex)."""
    lad = bessel_ladder(n, t)
    return lad.riccati_j(n).to_complex().real, lad.riccati_h(n).to_complex()


def riccati_combo_scaled(n: int, t: float):
    lad = bessel_ladder(n, t)
    return lad.riccati_j(n), lad.riccati_h(n)


def gamma_half_int(n: int) -> float:
    """Gamma(n + 1/2) = (2n-1)!!/2^n * sqrt(pi); inf above n ~ 150."""
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    try:
        return math.exp(math.lgamma(n + 0.5))
    except OverflowError:
        return math.inf


def gamma_half_int_scaled(n: int) -> ScaledComplex:
    if n < 0:
        raise DomainError(f"need n >= 0, got {n}")
    return scaled_from_log_sign(math.lgamma(n + 0.5), 1.0)


def small_arg_leading(n: int, t: float):
    """Leading small-argument forms of j_n, h_n, J_n, H_n, all ScaledComplex.

    Valid in the regime n >> t (caller's responsibility):
        j_n ~ sqrt(pi)/(2 Gamma(n+3/2)) (t/2)^n
        h_n ~ -i Gamma(n+1/2)/(2 sqrt(pi)) (2/t)^(n+1)
        J_n ~ (n+1) * j_n leading form
        H_n ~ +i n Gamma(n+1/2)/(2 sqrt(pi)) (2/t)^(n+1)
    """
    if n < 1:
        raise DomainError(f"leading forms require n >= 1, got {n}")
    if t <= 0:
        raise DomainError(f"argument must be positive, got t={t}")
    log_half_t = math.log(t / 2.0)
    lj = 0.5 * math.log(math.pi) - math.log(2.0) - math.lgamma(n + 1.5) + n * log_half_t
    lh = math.lgamma(n + 0.5) - math.log(2.0 * _SQRT_PI) - (n + 1) * log_half_t
    j_lead = ScaledComplex.from_log(lj, 1.0)
    h_lead = ScaledComplex.from_log(lh, -1j)
    jj_lead = ScaledComplex.from_log(lj + math.log(n + 1.0), 1.0)
    hh_lead = ScaledComplex.from_log(lh + math.log(n), 1j)
    return j_lead, h_lead, jj_lead, hh_lead
