"""Shared oracles and random generators for the test suite.

The oracles here are deliberately independent of the library's own
algorithms: minors-gcd invariant factors for Smith form, and brute-force
element chasing on finite stages for colimits.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

from bs_ktheory.abelian import FgAbGroup, GroupHom, IntMatrix


# ---------------------------------------------------------------------------
# finite-group element arithmetic (free rank 0 throughout)


def finite_elements(g: FgAbGroup) -> list[tuple[int, ...]]:
    assert g.free_rank == 0
    return [tuple(x) for x in itertools.product(*[range(d) for d in g.torsion])]


def add(g: FgAbGroup, x, y):
    return tuple((a + b) % d for a, b, d in zip(x, y, g.torsion))


def order_in(g: FgAbGroup, x) -> int:
    k = 1
    for d, c in zip(g.torsion, x):
        c %= d
        if c:
            k = math.lcm(k, d // math.gcd(d, c))
    return k


def group_order_multiset(g: FgAbGroup) -> Counter:
    """Element-order multiset of a finite group, straight from the torsion."""
    return Counter(order_in(g, x) for x in finite_elements(g))


def subgroup_span(g: FgAbGroup, gens) -> set:
    span = {tuple(0 for _ in g.torsion)}
    frontier = list(span)
    while frontier:
        x = frontier.pop()
        for v in gens:
            y = add(g, x, tuple(v))
            if y not in span:
                span.add(y)
                frontier.append(y)
    return span


# ---------------------------------------------------------------------------
# brute-force colimit oracle: unroll stages and chase elements


UNROLL = 12


def colim_oracle_on_subset(g: FgAbGroup, elems, apply_bond) -> Counter:
    """Order multiset of colim(S, bond) for a bond-invariant subset S.

    After UNROLL applications every eventually-equal pair has merged, so
    the image set with the ambient arithmetic is the colimit group.
    """
    cur = set(elems)
    for _ in range(UNROLL):
        cur = {apply_bond(x) for x in cur}
    return Counter(order_in(g, x) for x in cur)


def colim_oracle(stage: FgAbGroup, bond: GroupHom) -> Counter:
    return colim_oracle_on_subset(stage, finite_elements(stage), bond.apply)


class QuotientOracle:
    """stage / span(images) as concrete cosets, for the cokernel oracle."""

    def __init__(self, stage: FgAbGroup, image_gens):
        self.stage = stage
        image = subgroup_span(stage, image_gens)
        self.rep = {}
        for x in sorted(finite_elements(stage)):
            if x in self.rep:
                continue
            coset = sorted(add(stage, x, s) for s in image)
            canon = coset[0]
            for y in coset:
                self.rep[y] = canon

    def elements(self):
        return sorted(set(self.rep.values()))

    def reduce(self, x):
        return self.rep[tuple(c % d for c, d in zip(x, self.stage.torsion))]

    def add(self, x, y):
        return self.reduce(add(self.stage, x, y))

    def order(self, x) -> int:
        zero = self.reduce(tuple(0 for _ in self.stage.torsion))
        k = 1
        acc = self.reduce(x)
        while acc != zero:
            acc = self.add(acc, x)
            k += 1
        return k


def ladder_kernel_oracle(stage: FgAbGroup, bond: GroupHom, rung: GroupHom) -> Counter:
    kernel_set = [x for x in finite_elements(stage) if not any(rung.apply(x))]
    for x in kernel_set:
        assert not any(rung.apply(bond.apply(x))), "kernel must be bond-invariant"
    return colim_oracle_on_subset(stage, kernel_set, bond.apply)


def ladder_cokernel_oracle(stage: FgAbGroup, bond: GroupHom, rung: GroupHom) -> Counter:
    image_gens = [rung.apply(x) for x in finite_elements(stage)]
    quo = QuotientOracle(stage, image_gens)
    cur = set(quo.elements())
    for _ in range(UNROLL):
        cur = {quo.reduce(bond.apply(x)) for x in cur}
    return Counter(quo.order(x) for x in cur)


# ---------------------------------------------------------------------------
# the gcd-of-minors oracle for Smith normal form


def minors_invariant_factors(m: IntMatrix) -> list[int]:
    r = min(m.rows, m.cols)
    out = []
    prev = 1
    for k in range(1, r + 1):
        g = 0
        for rows_sel in itertools.combinations(range(m.rows), k):
            for cols_sel in itertools.combinations(range(m.cols), k):
                sub = IntMatrix.from_rows(
                    [[m.at(i, j) for j in cols_sel] for i in rows_sel], cols=k
                )
                g = math.gcd(g, sub.det())
        if g == 0:
            out.extend([0] * (r - len(out)))
            break
        out.append(g // prev)
        prev = g
    return out


# ---------------------------------------------------------------------------
# random generators


def random_torsion_chain(rng, max_order=60, max_len=2) -> tuple[int, ...]:
    length = rng.randint(0, max_len)
    chain = []
    total = 1
    d = 1
    for _ in range(length):
        factor = rng.randint(2 if d == 1 else 1, 5)
        d = d * factor if d > 1 else factor
        if d < 2 or total * d > max_order:
            break
        chain.append(d)
        total *= d
    return tuple(chain)


def random_group(rng, max_free=2, max_order=60) -> FgAbGroup:
    free = rng.randint(0, max_free)
    return FgAbGroup(free, random_torsion_chain(rng, max_order=max_order))


def random_finite_group(rng, max_order=60) -> FgAbGroup:
    chain = random_torsion_chain(rng, max_order=max_order)
    if not chain:
        chain = (rng.randint(2, 8),)
    return FgAbGroup(0, chain)


def random_hom_matrix(rng, source: FgAbGroup, target: FgAbGroup, span=4) -> IntMatrix:
    """A uniformly messy matrix that is well-defined on torsion."""
    rows = []
    for i in range(target.gen_count):
        di = 0 if i < target.free_rank else target.torsion[i - target.free_rank]
        row = []
        for j in range(source.gen_count):
            dj = 0 if j < source.free_rank else source.torsion[j - source.free_rank]
            if dj == 0:
                row.append(rng.randint(-span, span))
            elif di == 0:
                row.append(0)
            else:
                step = di // math.gcd(di, dj)
                row.append(step * rng.randint(-span, span))
        rows.append(row)
    return IntMatrix.from_rows(rows, cols=source.gen_count)


def random_hom(rng, source=None, target=None, span=4) -> GroupHom:
    source = source or random_group(rng)
    target = target or random_group(rng)
    return GroupHom(source, target, random_hom_matrix(rng, source, target, span))


def random_selfmap(rng, g: FgAbGroup, span=3) -> GroupHom:
    return GroupHom(g, g, random_hom_matrix(rng, g, g, span))


def polynomial_in(b: GroupHom, coeffs) -> GroupHom:
    """c0 + c1 b + c2 b^2 + ...; commutes with b by construction."""
    g = b.source
    n = g.gen_count
    acc = IntMatrix.zeros(n, n)
    power = IntMatrix.identity(n)
    for c in coeffs:
        acc = IntMatrix(
            n, n, tuple(a + c * p for a, p in zip(acc.entries, power.entries))
        )
        power = b.matrix @ power
    return GroupHom(g, g, acc)
