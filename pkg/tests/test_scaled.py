import cmath
import math

import numpy as np
import pytest

from cloaksim.scaled import ScaledComplex, scaled_from_log_sign, scaled_real


def test_round_trip_representable():
    rng = np.random.default_rng(7)
    # ulp-scale at moderate magnitude
    for _ in range(200):
        z = complex(rng.normal(), rng.normal()) * 10.0 ** rng.integers(-2, 3)
        back = ScaledComplex.from_complex(z).to_complex()
        assert abs(back - z) <= 1e-15 * abs(z)
    # exp/log error grows with |log magnitude|: bound scales accordingly
    for _ in range(200):
        z = complex(rng.normal(), rng.normal()) * 10.0 ** rng.integers(-100, 100)
        sc = ScaledComplex.from_complex(z)
        back = sc.to_complex()
        assert abs(back - z) <= (abs(sc.log_mag) + 2.0) * 1.2e-16 * abs(z)


def test_phase_is_unit_modulus():
    rng = np.random.default_rng(3)
    vals = [ScaledComplex.from_complex(complex(rng.normal(), rng.normal()))
            for _ in range(50)]
    acc = ScaledComplex.one()
    for v in vals:
        acc = acc * v
    for v in vals + [acc]:
        assert abs(abs(v.phase) - 1.0) < 1e-14


def test_product_adds_log_magnitudes_exactly():
    a = ScaledComplex.from_log(350.0, cmath.exp(0.3j))
    b = ScaledComplex.from_log(512.5, cmath.exp(-1.1j))
    assert (a * b).log_mag == 350.0 + 512.5
    assert (a / b).log_mag == 350.0 - 512.5


def test_no_overflow_for_factorial_scale_products():
    # (2n-1)!! * t^-(n+1) style growth at n = 200 stays finite in log space
    acc = ScaledComplex.one()
    for k in range(1, 401, 2):
        acc = acc * k
    acc = acc * ScaledComplex.from_log(201 * math.log(1e6))
    assert math.isfinite(acc.log_mag)
    assert acc.to_complex().real == math.inf  # collapse overflows, by design


def test_addition_against_plain_complex():
    rng = np.random.default_rng(11)
    for _ in range(100):
        z1 = complex(rng.normal(), rng.normal())
        z2 = complex(rng.normal(), rng.normal())
        s = ScaledComplex.from_complex(z1) + ScaledComplex.from_complex(z2)
        assert abs(s.to_complex() - (z1 + z2)) < 1e-14 * max(1.0, abs(z1 + z2))


def test_addition_with_huge_scale_gap_keeps_large_term():
    big = ScaledComplex.from_log(1000.0)
    tiny = ScaledComplex.from_log(-1000.0)
    s = big + tiny
    assert s.log_mag == pytest.approx(1000.0)


def test_zero_flag():
    z = ScaledComplex.zero()
    assert z.is_zero
    assert (z * 5).is_zero
    assert (z + 2).to_complex() == 2 + 0j
    assert scaled_real(0.0).is_zero
    assert scaled_from_log_sign(1.0, 0.0).is_zero
    assert (ScaledComplex.from_complex(1) - 1).is_zero


def test_subtraction_and_negation():
    a = ScaledComplex.from_complex(3 + 4j)
    b = ScaledComplex.from_complex(1 - 2j)
    assert abs((a - b).to_complex() - (2 + 6j)) < 1e-14
    assert abs((-a).to_complex() + (3 + 4j)) < 1e-15
    assert abs(a.conjugate().to_complex() - (3 - 4j)) < 1e-15


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ScaledComplex.one() / ScaledComplex.zero()


def test_reflected_operations_with_plain_numbers():
    a = ScaledComplex.from_complex(2 + 1j)
    assert abs((6 / a).to_complex() - 6 / (2 + 1j)) < 1e-14
    assert abs((6 - a).to_complex() - (4 - 1j)) < 1e-14
    assert abs((1j * a).to_complex() - (2j - 1)) < 1e-14
    assert abs((3 + a).to_complex() - (5 + 1j)) < 1e-14
