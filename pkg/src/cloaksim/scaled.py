"""Log-magnitude complex arithmetic for products far outside float range.

High-degree radial functions produce factors like (2n-1)!! * t**-(n+1) that
overflow (or underflow) doubles long before the ratios of interest do.  A
``ScaledComplex`` keeps the natural log of the magnitude separately from a
unit-modulus phase, so multiplication and division reduce to float additions
on the log while the phase stays exactly representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_NEG_INF = float("-inf")


@dataclass(frozen=True)
class ScaledComplex:
    """Value exp(log_mag) * phase with |phase| == 1, or the exact zero.

    ``log_mag == -inf`` flags an exact zero (phase is then 0).  Addition of
    two values rescales to the larger magnitude first, so only the relative
    difference of exponents matters.
    """

    log_mag: float
    phase: complex

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "ScaledComplex":
        return ScaledComplex(_NEG_INF, 0j)

    @staticmethod
    def one() -> "ScaledComplex":
        return ScaledComplex(0.0, 1 + 0j)

    @staticmethod
    def from_complex(z) -> "ScaledComplex":
        z = complex(z)
        if z == 0:
            return ScaledComplex.zero()
        m = abs(z)
        return ScaledComplex(math.log(m), z / m)

    @staticmethod
    def from_log(log_mag: float, phase: complex = 1 + 0j) -> "ScaledComplex":
        if log_mag == _NEG_INF or phase == 0:
            return ScaledComplex.zero()
        p = complex(phase)
        return ScaledComplex(log_mag, p / abs(p))

    # -- views -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.log_mag == _NEG_INF

    def to_complex(self) -> complex:
        """Collapse to a plain complex; over/underflows where unrepresentable."""
        if self.is_zero:
            return 0j
        if self.log_mag > 709.0:  # exp() overflow threshold
            return complex(math.inf * self.phase.real, math.inf * self.phase.imag)
        return math.exp(self.log_mag) * self.phase

    def magnitude(self) -> float:
        if self.is_zero:
            return 0.0
        if self.log_mag > 709.0:
            return math.inf
        return math.exp(self.log_mag)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "ScaledComplex":
        if isinstance(other, ScaledComplex):
            return other
        return ScaledComplex.from_complex(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if self.is_zero or o.is_zero:
            return ScaledComplex.zero()
        return ScaledComplex(self.log_mag + o.log_mag, self.phase * o.phase)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero:
            raise ZeroDivisionError("division by scaled zero")
        if self.is_zero:
            return ScaledComplex.zero()
        return ScaledComplex(self.log_mag - o.log_mag, self.phase / o.phase)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __add__(self, other):
        o = self._coerce(other)
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        if self.log_mag >= o.log_mag:
            hi, lo = self, o
        else:
            hi, lo = o, self
        s = hi.phase + lo.phase * math.exp(lo.log_mag - hi.log_mag)
        if s == 0:
            return ScaledComplex.zero()
        m = abs(s)
        return ScaledComplex(hi.log_mag + math.log(m), s / m)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __neg__(self):
        if self.is_zero:
            return self
        return ScaledComplex(self.log_mag, -self.phase)

    def conjugate(self) -> "ScaledComplex":
        if self.is_zero:
            return self
        return ScaledComplex(self.log_mag, self.phase.conjugate())

    def __repr__(self):
        if self.is_zero:
            return "ScaledComplex(0)"
        return f"ScaledComplex(exp({self.log_mag:.6g}) * {self.phase:.6g})"


def scaled_real(x: float) -> ScaledComplex:
    """ScaledComplex from a real number (phase +/-1)."""
    if x == 0:
        return ScaledComplex.zero()
    return ScaledComplex(math.log(abs(x)), complex(math.copysign(1.0, x)))


def scaled_from_log_sign(log_mag: float, sign: float) -> ScaledComplex:
    """ScaledComplex from a log-magnitude and a real sign."""
    if sign == 0 or log_mag == _NEG_INF:
        return ScaledComplex.zero()
    return ScaledComplex(log_mag, complex(math.copysign(1.0, sign)))
