import math
import random

import pytest

from qftmcx.phase import PI, ZERO, dyadic, phase_normalize, rotation_index


@pytest.mark.parametrize("k,m,expect", [
    (4, 3, (1, 1)),      # 2pi*4/8 = pi
    (0, 5, (0, 0)),      # zero angle
    (9, 3, (1, 3)),      # reduction mod 2pi
    (1, 0, (0, 0)),      # full turn
    (-1, 2, (3, 2)),     # negative wraps
])
def test_normalize(k, m, expect):
    p = phase_normalize(k, m)
    assert (p.k, p.m) == expect


def test_normalized_invariant():
    rng = random.Random(7)
    for _ in range(2000):
        p = phase_normalize(rng.randrange(-1 << 20, 1 << 20), rng.randrange(0, 16))
        assert 0 <= p.k < (1 << p.m)
        assert p.k % 2 == 1 or (p.k == 0 and p.m == 0)


def test_angle_value():
    assert phase_normalize(1, 1).angle == pytest.approx(math.pi)
    assert phase_normalize(3, 2).angle == pytest.approx(3 * math.pi / 2)
    assert ZERO.angle == 0.0


def test_add_negate_exact_roundtrip():
    # closure and exactness: a + b - b == a bit-exactly, en masse
    rng = random.Random(123)
    for _ in range(1_000_000):
        a = phase_normalize(rng.getrandbits(12), rng.randrange(0, 12))
        b = phase_normalize(rng.getrandbits(12), rng.randrange(0, 12))
        assert (a + b) - b == a
        assert -(-a) == a


def test_add_matches_float():
    rng = random.Random(5)
    for _ in range(500):
        a = phase_normalize(rng.getrandbits(8), rng.randrange(0, 9))
        b = phase_normalize(rng.getrandbits(8), rng.randrange(0, 9))
        s = (a + b).angle % math.tau
        assert s == pytest.approx((a.angle + b.angle) % math.tau, abs=1e-9)


def test_half_double():
    p = dyadic(3, 3)
    assert p.half().angle == pytest.approx(p.angle / 2)
    assert p.half().double() == p


def test_rotation_index_symmetric():
    # a rotation and its inverse report the same index
    assert rotation_index(dyadic(1, 4)) == 4
    assert rotation_index(-dyadic(1, 4)) == 4
    assert rotation_index(PI) == 1
