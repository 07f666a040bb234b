"""Exact duality checks between truncated solenoid points and Z[1/n].

Points on the solenoid are finite-depth truncations (z_0, ..., z_L) of
compatible circle sequences with z_{k+1}^n = z_k, kept exact by using only
rational angles. An element m/n^l of Z[1/n] pairs with such a point as the
angle m * theta_l, and the backward shift drops the head coordinate. Every
operation declares the depth it needs and raises DepthExceeded past it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from .errors import DepthExceeded


@dataclass(frozen=True)
class RationalAngle:
    """e^(2 pi i p/q) as the reduced fraction p/q with 0 <= p/q < 1."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value) % 1)

    @classmethod
    def of(cls, p: int, q: int) -> "RationalAngle":
        return cls(Fraction(p, q))

    def scale(self, k: int) -> "RationalAngle":
        return RationalAngle(self.value * k)

    def __add__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(self.value + other.value)

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class SolenoidPoint:
    """A depth-L truncation (theta_0, ..., theta_L) with n*theta_{k+1} = theta_k mod 1."""

    n: int
    coords: tuple[RationalAngle, ...]

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("the solenoid parameter must be nonzero")
        if not self.coords:
            raise ValueError("a point needs at least the depth-0 coordinate")
        object.__setattr__(self, "coords", tuple(self.coords))
        for k in range(len(self.coords) - 1):
            if self.coords[k + 1].scale(self.n) != self.coords[k]:
                raise ValueError(f"compatibility fails between depths {k} and {k + 1}")

    @property
    def depth(self) -> int:
        return len(self.coords) - 1


@dataclass(frozen=True)
class NadicRational:
    """m / n^exp in Z[1/n], canonical: n does not divide m, or exp = 0."""

    n: int
    m: int
    exp: int

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("the inverted base must be nonzero")
        if self.exp < 0:
            raise ValueError("the exponent must be nonnegative")
        m, exp = self.m, self.exp
        if abs(self.n) == 1:
            m, exp = m * self.n**exp, 0
        if m == 0:
            exp = 0
        while exp > 0 and m % self.n == 0:
            m //= self.n
            exp -= 1
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "exp", exp)

    def value(self) -> Fraction:
        return Fraction(self.m, self.n**self.exp)

    def times_base(self) -> "NadicRational":
        """Multiplication by n, the automorphism dual to the backward shift."""
        return NadicRational(self.n, self.m * self.n, self.exp)

    def __add__(self, other: "NadicRational") -> "NadicRational":
        if self.n != other.n:
            raise ValueError("cannot add over different bases")
        e = max(self.exp, other.exp)
        m = self.m * self.n ** (e - self.exp) + other.m * self.n ** (e - other.exp)
        return NadicRational(self.n, m, e)

    def __neg__(self) -> "NadicRational":
        return NadicRational(self.n, -self.m, self.exp)

    def __str__(self) -> str:
        return str(self.value())


def pairing_raw(z: SolenoidPoint, m: int, exp: int) -> RationalAngle:
    """The angle m * theta_exp, for any (not necessarily canonical) m/n^exp."""
    if exp > z.depth:
        raise DepthExceeded(f"pairing at level {exp} needs depth >= {exp}, have {z.depth}")
    return z.coords[exp].scale(m)


def pairing(z: SolenoidPoint, x: NadicRational) -> RationalAngle:
    """The duality pairing: x = m/n^exp evaluates to the angle m * theta_exp."""
    if x.n != z.n:
        raise ValueError("point and element live over different bases")
    return pairing_raw(z, x.m, x.exp)


def dual_shift(z: SolenoidPoint) -> SolenoidPoint:
    """Backward shift (drop the head coordinate); loses one level of depth."""
    if z.depth < 1:
        raise DepthExceeded("shifting needs depth >= 1")
    return SolenoidPoint(z.n, z.coords[1:])


def duality_check(z: SolenoidPoint, x: NadicRational) -> bool:
    """Exact check that the shift intertwines the pairing with
    multiplication by n: pairing(shift(z), n*x) == pairing(z, x).

    Equivalently pairing(shift(z), y) == pairing(z, y/n); the shift is dual
    to the automorphism the crossed product is built from.
    """
    if z.depth < 1 or z.depth < x.exp:
        raise DepthExceeded(f"duality at level {x.exp} needs depth >= {max(1, x.exp)}")
    return pairing(dual_shift(z), x.times_base()) == pairing(z, x)


def random_point(n: int, depth: int, seed: int) -> SolenoidPoint:
    """A deterministic-from-seed compatible point: the deepest angle is
    chosen freely and the rest follow by theta_k = n * theta_{k+1} mod 1."""
    if n == 0:
        raise ValueError("the solenoid parameter must be nonzero")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    rng = random.Random(seed)
    q = rng.randint(1, 60)
    deepest = RationalAngle.of(rng.randrange(q), q)
    coords = [deepest]
    for _ in range(depth):
        coords.append(coords[-1].scale(n))
    coords.reverse()
    return SolenoidPoint(n, tuple(coords))


def point_to_json(z: SolenoidPoint) -> dict:
    return {
        "n": z.n,
        "coords": [[str(a.value.numerator), str(a.value.denominator)] for a in z.coords],
    }


def point_from_json(data: dict) -> SolenoidPoint:
    coords = tuple(RationalAngle.of(int(p), int(q)) for p, q in data["coords"])
    return SolenoidPoint(int(data["n"]), coords)
