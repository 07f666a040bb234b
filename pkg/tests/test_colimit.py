import random

import pytest

from bs_ktheory.abelian import FgAbGroup, GroupHom, IntMatrix, is_isomorphic
from bs_ktheory.colimit import (
    ColimModule,
    LadderMap,
    LocObject,
    LocalizedInt,
    ab_from_json,
    ab_to_json,
    colim_from_json,
    colim_to_json,
    coprime_part,
    ladder_cokernel,
    ladder_kernel,
    localized_eq,
    normalize,
)
from bs_ktheory.errors import UnsupportedColimitShape
from helpers import (
    colim_oracle,
    group_order_multiset,
    ladder_cokernel_oracle,
    ladder_kernel_oracle,
    polynomial_in,
    random_finite_group,
    random_selfmap,
)

Z = FgAbGroup.free(1, ("v",))


def scalar_colim(n: int) -> ColimModule:
    return ColimModule(Z, GroupHom(Z, Z, IntMatrix(1, 1, (n,))))


def scalar_ladder(c: ColimModule, k: int) -> LadderMap:
    return LadderMap(c, c, GroupHom(c.stage, c.stage, IntMatrix(1, 1, (k,))))


def finite_colim(chain, entries) -> ColimModule:
    g = FgAbGroup(0, chain)
    return ColimModule(g, GroupHom(g, g, IntMatrix.from_rows(entries, cols=g.gen_count)))


class TestNormalize:
    def test_constant_system(self):
        assert normalize(scalar_colim(1)) == Z

    def test_localization(self):
        result = normalize(scalar_colim(2))
        assert isinstance(result, LocObject)
        assert result.loc.n == 2 and result.torsion.is_trivial

    def test_finite_stage(self):
        # x2 on Z/6: the 3-torsion dies, x2 is an automorphism of what is left
        result = normalize(finite_colim((6,), [[2]]))
        assert isinstance(result, FgAbGroup)
        assert (result.free_rank, result.torsion) == (0, (3,))

    def test_iso_bond_is_identity_on_groups(self):
        import math

        rng = random.Random(11)
        for _ in range(40):
            g = random_finite_group(rng)
            # random automorphism: a unit scalar (coprime to the exponent)
            exponent = g.torsion[-1]
            units = [u for u in range(1, exponent + 1) if math.gcd(u, exponent) == 1]
            unit = rng.choice(units)
            bond = GroupHom(
                g,
                g,
                IntMatrix.from_rows(
                    [[unit if i == j else 0 for j in range(g.gen_count)] for i in range(g.gen_count)],
                    cols=g.gen_count,
                ),
            )
            result = normalize(ColimModule(g, bond))
            assert isinstance(result, FgAbGroup) and is_isomorphic(result, g)

    def test_unimodular_bond_at_higher_rank(self):
        g = FgAbGroup.free(2, ("x", "y"))
        shear = GroupHom(g, g, IntMatrix.from_rows([[1, 1], [0, 1]]))
        assert normalize(ColimModule(g, shear)) == g
        flip = GroupHom(g, g, IntMatrix.from_rows([[0, 1], [1, 0]]))
        assert normalize(ColimModule(g, flip)) == g

    def test_mixed_free_torsion(self):
        g = FgAbGroup(1, (4,), ("v", "t"))
        bond = GroupHom(g, g, IntMatrix.from_rows([[2, 0], [1, 3]]))
        result = normalize(ColimModule(g, bond))
        assert isinstance(result, LocObject)
        assert result.loc.n == 2
        assert result.torsion.torsion == (4,)

    def test_unsupported_shape(self):
        g = FgAbGroup.free(2)
        bond = GroupHom(g, g, IntMatrix.from_rows([[2, 1], [0, 3]]))
        with pytest.raises(UnsupportedColimitShape):
            normalize(ColimModule(g, bond))
        diagonal = GroupHom(g, g, IntMatrix.from_rows([[2, 0], [0, 3]]))
        with pytest.raises(UnsupportedColimitShape):
            normalize(ColimModule(g, diagonal))

    def test_zero_bond_kills_everything(self):
        assert normalize(scalar_colim(0)).is_trivial

    def test_matches_oracle_on_finite_stages(self):
        rng = random.Random(22)
        for _ in range(60):
            g = random_finite_group(rng)
            bond = random_selfmap(rng, g)
            result = normalize(ColimModule(g, bond))
            assert isinstance(result, FgAbGroup)
            assert group_order_multiset(result) == colim_oracle(g, bond)


class TestLadderValidation:
    def test_strict_commutation_enforced(self):
        c2 = scalar_colim(2)
        c3 = scalar_colim(3)
        with pytest.raises(ValueError):
            LadderMap(c2, c3, GroupHom(Z, Z, IntMatrix(1, 1, (1,))))

    def test_unsupported_shape_propagates(self):
        g = FgAbGroup.free(2)
        bond = GroupHom(g, g, IntMatrix.from_rows([[2, 1], [0, 3]]))
        c = ColimModule(g, bond)
        zero_rung = GroupHom.zero(g, g)
        with pytest.raises(UnsupportedColimitShape):
            ladder_cokernel(LadderMap(c, c, zero_rung))
        with pytest.raises(UnsupportedColimitShape):
            ladder_kernel(LadderMap(c, c, zero_rung))


class TestLadderKernel:
    def test_injective_rung(self):
        m = scalar_ladder(scalar_colim(2), 1 - 2)
        assert ladder_kernel(m).is_trivial

    def test_zero_rung_gives_whole_module(self):
        result = ladder_kernel(scalar_ladder(scalar_colim(2), 0))
        assert isinstance(result, LocObject) and result.loc.n == 2

    def test_kernel_on_finite_stage(self):
        # rung x6 on colim(Z/12, x5): the stage kernel {0,2,...,10} is Z/6
        # and x5 acts invertibly on it (brute-forced on the 12 elements)
        c = finite_colim((12,), [[5]])
        m = LadderMap(c, c, GroupHom(c.stage, c.stage, IntMatrix(1, 1, (6,))))
        result = ladder_kernel(m)
        assert isinstance(result, FgAbGroup)
        assert group_order_multiset(result) == ladder_kernel_oracle(c.stage, c.bond, m.rung)
        assert (result.free_rank, result.torsion) == (0, (6,))


class TestLadderCokernel:
    def test_theorem_torsion(self):
        for n, expected in ((5, (4,)), (2, ()), (3, (2,))):
            result = ladder_cokernel(scalar_ladder(scalar_colim(n), 1 - n))
            assert isinstance(result, FgAbGroup)
            assert (result.free_rank, result.torsion) == (0, expected)

    def test_primes_of_base_divided_out(self):
        result = ladder_cokernel(scalar_ladder(scalar_colim(2), 6))
        assert isinstance(result, FgAbGroup)
        assert (result.free_rank, result.torsion) == (0, (3,))

    def test_zero_rung_gives_whole_module(self):
        result = ladder_cokernel(scalar_ladder(scalar_colim(2), 0))
        assert isinstance(result, LocObject) and result.loc.n == 2


class TestClosedForm:
    def test_coprime_part_examples(self):
        assert coprime_part(6, 2) == 3
        assert coprime_part(4, 5) == 4
        assert coprime_part(-4, 5) == 4
        assert coprime_part(12, 6) == 1
        assert coprime_part(2, -1) == 2

    def test_grid_against_staged_oracle(self):
        # coker(xc on Z[1/n]) has order coprime_part(c, n); the staged side
        # is colim(Z/|c|, xn), brute-forced by element chasing
        for n in list(range(2, 11)) + list(range(-10, -1)):
            for c in range(1, 31):
                expected = coprime_part(c, n)
                result = ladder_cokernel(scalar_ladder(scalar_colim(n), c))
                assert isinstance(result, FgAbGroup)
                assert result.order() == expected
                if c > 1:
                    stage = FgAbGroup(0, (c,))
                    bond = GroupHom(stage, stage, IntMatrix(1, 1, (n,)))
                    oracle = colim_oracle(stage, bond)
                    assert group_order_multiset(result) == oracle

    def test_key_torsion_computation(self):
        # gcd(n, n-1) = 1, so nothing of n-1 is lost in Z[1/n]
        for n in list(range(2, 13)) + [-1] + list(range(-12, -1)):
            result = ladder_cokernel(scalar_ladder(scalar_colim(n), n - 1))
            assert isinstance(result, FgAbGroup)
            assert result.order() == abs(n - 1)


class TestRandomLadderGrid:
    def test_kernels_and_cokernels_match_oracle(self):
        rng = random.Random(33)
        cases = 0
        while cases < 80:
            g = random_finite_group(rng)
            bond = random_selfmap(rng, g)
            rung = polynomial_in(bond, [rng.randint(-4, 4) for _ in range(rng.randint(1, 3))])
            c = ColimModule(g, bond)
            m = LadderMap(c, c, rung)
            ker = ladder_kernel(m)
            cok = ladder_cokernel(m)
            assert isinstance(ker, FgAbGroup) and isinstance(cok, FgAbGroup)
            assert group_order_multiset(ker) == ladder_kernel_oracle(g, bond, rung)
            assert group_order_multiset(cok) == ladder_cokernel_oracle(g, bond, rung)
            cases += 1


class TestLocalizedInt:
    def test_eq_by_prime_support(self):
        assert localized_eq(LocalizedInt(2), LocalizedInt(4))
        assert not localized_eq(LocalizedInt(2), LocalizedInt(3))
        assert localized_eq(LocalizedInt(6), LocalizedInt(12))
        assert localized_eq(LocalizedInt(-1), LocalizedInt(1))

    def test_degenerate(self):
        assert LocalizedInt(-1).is_degenerate
        assert LocalizedInt(-1).as_group() == FgAbGroup.free(1, ("v",))
        with pytest.raises(ValueError):
            LocalizedInt(2).as_group()


class TestJson:
    def test_colim_roundtrip(self):
        c = scalar_colim(3)
        assert colim_from_json(colim_to_json(c)) == c

    def test_ab_roundtrip(self):
        fg = FgAbGroup(1, (4,), ("a", "b"))
        assert ab_from_json(ab_to_json(fg)) == fg
        loc = LocObject(LocalizedInt(6, "w"), FgAbGroup(0, (2,), ("t",)))
        assert ab_from_json(ab_to_json(loc)) == loc
