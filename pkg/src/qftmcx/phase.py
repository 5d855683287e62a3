"""Exact dyadic phase arithmetic.

Every angle in the IR is 2*pi*k/2**m for integers k, m >= 0. Addition and
negation stay in this set, so circuit rewrites never touch floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class PhaseExponent:
    """Angle 2*pi*k/2**m, stored in canonical form.

    Canonical: 0 <= k < 2**m and k odd, except the zero angle which is (0, 0).
    Construct via phase_normalize() or the helpers below; the constructor
    trusts its arguments.
    """
    k: int
    m: int

    @property
    def angle(self) -> float:
        return math.tau * self.k / (1 << self.m)

    @property
    def is_zero(self) -> bool:
        return self.k == 0

    def __add__(self, other: "PhaseExponent") -> "PhaseExponent":
        m = max(self.m, other.m)
        k = (self.k << (m - self.m)) + (other.k << (m - other.m))
        return phase_normalize(k, m)

    def __neg__(self) -> "PhaseExponent":
        return phase_normalize(-self.k, self.m)

    def __sub__(self, other: "PhaseExponent") -> "PhaseExponent":
        return self + (-other)

    def half(self) -> "PhaseExponent":
        """Angle divided by two (always representable: just bump m)."""
        return phase_normalize(self.k, self.m + 1)

    def double(self) -> "PhaseExponent":
        return phase_normalize(2 * self.k, self.m)

    def __repr__(self) -> str:
        if self.k == 0:
            return "0"
        return f"2pi*{self.k}/{1 << self.m}"


def phase_normalize(k: int, m: int) -> PhaseExponent:
    """Canonicalize angle 2*pi*k/2**m (value preserved mod 2*pi)."""
    if m < 0:
        raise ValueError(f"denominator exponent must be >= 0, got {m}")
    k %= (1 << m)
    if k == 0:
        return PhaseExponent(0, 0)
    while k % 2 == 0:
        k //= 2
        m -= 1
    return PhaseExponent(k, m)


ZERO = PhaseExponent(0, 0)
PI = PhaseExponent(1, 1)


def dyadic(k: int, m: int) -> PhaseExponent:
    """Angle 2*pi*k/2**m in canonical form."""
    return phase_normalize(k, m)


def rotation_phase(m: int, sign: int = +1) -> PhaseExponent:
    """Phase of the index-m rotation gate: +/- 2*pi/2**m."""
    return phase_normalize(sign, m)


def rotation_index(p: PhaseExponent) -> int:
    """Index m of a rotation with angle 2*pi*k/2**m (k odd).

    The canonical denominator exponent; both 2*pi/2**m and its inverse
    2*pi*(2**m - 1)/2**m report index m, so truncation treats a rotation
    and its adjoint symmetrically.
    """
    return p.m
