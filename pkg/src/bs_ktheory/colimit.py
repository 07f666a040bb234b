"""Directed colimits of a finitely generated abelian group along a self-map.

A ``ColimModule`` presents the colimit of G -> G -> G -> ... with one fixed
bonding self-map. This is the mechanism that houses Z[1/n], the colimit of
Z along multiplication by n, and the module computes kernels and cokernels
of ladder maps between such colimits (maps given stage-wise by one strictly
commuting rung).

Normalization classifies a colimit as either a plain finitely generated
group or as Z[1/n] plus finite torsion. Shapes outside that union (for
instance a colimit whose free part localizes at two different elements)
are rejected with ``UnsupportedColimitShape`` rather than approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

from .abelian import (
    FgAbGroup,
    GroupHom,
    IntMatrix,
    _basis_vec,
    _cokernel_ext,
    kernel,
    solve,
)
from .errors import StabilizationOverflow, UnsupportedColimitShape

MAX_STABILIZATION_STEPS = 64


@dataclass(frozen=True)
class LocalizedInt:
    """Z[1/n]: the colimit of Z along multiplication by n.

    ``symbol`` names the distinguished element, the image of 1 from stage
    zero. For |n| = 1 the localization degenerates to Z itself.
    """

    n: int
    symbol: str = "v"

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("cannot invert 0")

    @property
    def is_degenerate(self) -> bool:
        return abs(self.n) == 1

    def prime_support(self) -> frozenset[int]:
        return frozenset(_prime_factors(abs(self.n)))

    def as_group(self) -> FgAbGroup:
        """The underlying group when |n| = 1 (Z, generated by the symbol)."""
        if not self.is_degenerate:
            raise ValueError(f"Z[1/{self.n}] is not finitely generated")
        return FgAbGroup.free(1, (self.symbol,))

    def as_colim(self) -> "ColimModule":
        stage = FgAbGroup.free(1, (self.symbol,))
        bond = GroupHom(stage, stage, IntMatrix(1, 1, (self.n,)))
        return ColimModule(stage, bond)

    def describe(self) -> str:
        return f"Z[1/{self.n}]"

    def __str__(self) -> str:
        return self.describe()


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def localized_eq(a: LocalizedInt, b: LocalizedInt) -> bool:
    """Z[1/n] depends only on the radical of n, so compare prime supports."""
    return a.prime_support() == b.prime_support()


def coprime_part(c: int, n: int) -> int:
    """Largest divisor of |c| coprime to n.

    This is the order of the cokernel of multiplication by c on Z[1/n]:
    every factor of c supported on the primes of n is invertible there.
    """
    if c == 0:
        raise ValueError("coprime_part of 0 is undefined")
    m = abs(c)
    k = abs(n)
    if k <= 1:
        return m
    g = math.gcd(m, k)
    while g > 1:
        m //= g
        g = math.gcd(m, k)
    return m


@dataclass(frozen=True)
class LocObject:
    """A normalized colimit of the shape Z[1/n] + finite torsion."""

    loc: LocalizedInt
    torsion: FgAbGroup = field(default_factory=FgAbGroup.trivial)

    def __post_init__(self):
        if self.torsion.free_rank != 0:
            raise ValueError("the torsion part must be a finite group")

    def describe(self) -> str:
        if self.torsion.is_trivial:
            return self.loc.describe()
        return f"{self.loc.describe()} + {self.torsion.describe()}"

    def __str__(self) -> str:
        return self.describe()


AbObject = Union[FgAbGroup, LocObject]


def ab_describe(obj: AbObject) -> str:
    return obj.describe()


@dataclass(frozen=True)
class ColimModule:
    """The colimit of stage -> stage -> ... along the bonding self-map."""

    stage: FgAbGroup
    bond: GroupHom

    def __post_init__(self):
        if self.bond.source != self.stage or self.bond.target != self.stage:
            raise ValueError("the bond must be a self-map of the stage")


@dataclass(frozen=True)
class LadderMap:
    """A map of colimits given stage-wise by one rung.

    Strict commutation rung o source.bond = target.bond o rung is required
    as an exact matrix identity; eventual commutation is out of scope.
    """

    source: ColimModule
    target: ColimModule
    rung: GroupHom

    def __post_init__(self):
        if self.rung.source != self.source.stage or self.rung.target != self.target.stage:
            raise ValueError("rung endpoints must match the stage groups")
        lhs = self.rung.matrix @ self.source.bond.matrix
        rhs = self.target.bond.matrix @ self.rung.matrix
        if lhs != rhs:
            raise ValueError("rung does not commute with the bonds")


def _stabilization_bound(g: FgAbGroup) -> int:
    t = 1
    for d in g.torsion:
        t *= d
    return min(MAX_STABILIZATION_STEPS, g.free_rank + t.bit_length() + 2)


def _stable_kernel(c: ColimModule) -> tuple[FgAbGroup, GroupHom]:
    """ker(bond^N) for N large enough that the ascending chain has stopped."""
    bound = _stabilization_bound(c.stage)
    prev_power = GroupHom.identity(c.stage)
    for _ in range(bound + 1):
        power = c.bond.compose(prev_power)
        k, inc = kernel(power)
        if prev_power.compose(inc).is_zero():
            # ker(bond^n) is contained in ker(bond^(n-1)): chain stopped
            return k, inc
        prev_power = power
    raise StabilizationOverflow(
        f"kernel chain of the bond did not stabilize within {bound} steps"
    )


def _induced_on_quotient(b: GroupHom, quotient: FgAbGroup, proj: GroupHom, section: IntMatrix) -> GroupHom:
    return GroupHom(quotient, quotient, proj.matrix @ b.matrix @ section)


def _induced_on_subgroup(b: GroupHom, sub: FgAbGroup, inc: GroupHom) -> GroupHom:
    cols = []
    for j in range(sub.gen_count):
        image = b.apply(inc.apply(_basis_vec(sub.gen_count, j)))
        x = solve(inc, image)
        if x is None:
            raise AssertionError("subgroup is not invariant under the map")
        cols.append(x)
    matrix = IntMatrix.from_rows([[col[i] for col in cols] for i in range(sub.gen_count)], cols=len(cols))
    return GroupHom(sub, sub, matrix)


def normalize(c: ColimModule) -> AbObject:
    """Classify the colimit as a finitely generated group or Z[1/n] + torsion.

    The eventually-killed part ker(bond^N) is quotiented away first; the
    induced bond is then injective, hence an automorphism of the torsion
    subgroup, and the free quotient decides the answer: an invertible bond
    leaves the group itself, a rank-one bond gives a localization, anything
    of higher rank that is not invertible is rejected.
    """
    k_inf, inc = _stable_kernel(c)
    if k_inf.is_trivial:
        quotient, bond = c.stage, c.bond
    else:
        data = _cokernel_ext(inc)
        quotient = data.group
        bond = _induced_on_quotient(c.bond, quotient, data.projection, data.section)

    r = quotient.free_rank
    if r == 0:
        return quotient

    free_block = IntMatrix.from_rows(
        [[bond.matrix.at(i, j) for j in range(r)] for i in range(r)], cols=r
    )
    if abs(free_block.det()) == 1:
        return quotient

    torsion_part = FgAbGroup(0, quotient.torsion, quotient.gen_names[r:])
    if r == 1:
        return LocObject(LocalizedInt(free_block.at(0, 0), quotient.gen_names[0]), torsion_part)

    raise UnsupportedColimitShape(
        "free rank >= 2 with a non-invertible bond: the colimit is a sum of "
        "localizations, which this representation does not express"
    )


def ladder_kernel(m: LadderMap) -> AbObject:
    """Kernel of the colimit map, computed stage-wise and normalized.

    Filtered colimits are exact, so the kernel colimit is the colimit of the
    stage kernels with the restricted bond.
    """
    k, inc = kernel(m.rung)
    restricted = _induced_on_subgroup(m.source.bond, k, inc)
    return normalize(ColimModule(k, restricted))


def ladder_cokernel(m: LadderMap) -> AbObject:
    """Cokernel of the colimit map, computed stage-wise and normalized.

    For a rung of multiplication by c on Z[1/n] this realizes the closed
    form Z/c' with c' = coprime_part(c, n): the staged quotient Z/|c| with
    the bond acting as multiplication by n collapses the n-primary part.
    """
    data = _cokernel_ext(m.rung)
    induced = _induced_on_quotient(m.target.bond, data.group, data.projection, data.section)
    return normalize(ColimModule(data.group, induced))


# ---------------------------------------------------------------------------
# JSON forms


def colim_to_json(c: ColimModule) -> dict:
    from .abelian import group_to_json, matrix_to_json

    return {"stage": group_to_json(c.stage), "bond": matrix_to_json(c.bond.matrix)}


def colim_from_json(data: dict) -> ColimModule:
    from .abelian import group_from_json, matrix_from_json

    stage = group_from_json(data["stage"])
    bond = matrix_from_json(data["bond"], rows=stage.gen_count, cols=stage.gen_count)
    if bond.rows == 0 and bond.cols == 0 and stage.gen_count:
        raise ValueError("bond matrix missing")
    return ColimModule(stage, GroupHom(stage, stage, bond))


def ab_to_json(obj: AbObject) -> dict:
    from .abelian import group_to_json

    if isinstance(obj, FgAbGroup):
        return {"kind": "fg", "group": group_to_json(obj)}
    return {
        "kind": "loc",
        "inverted": obj.loc.n,
        "symbol": obj.loc.symbol,
        "torsion": group_to_json(obj.torsion),
    }


def ab_from_json(data: dict) -> AbObject:
    from .abelian import group_from_json

    kind = data.get("kind")
    if kind == "fg":
        return group_from_json(data["group"])
    if kind == "loc":
        torsion = group_from_json(data["torsion"]) if "torsion" in data else FgAbGroup.trivial()
        return LocObject(LocalizedInt(int(data["inverted"]), data.get("symbol", "v")), torsion)
    raise ValueError(f"unknown normalized-object kind {kind!r}")
