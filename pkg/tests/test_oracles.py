"""Brute-force counting oracles and their internal coherence."""

import random

import pytest

from doldzeta import (
    EnumerationLimitError,
    FiniteSelfMap,
    PartitionFamily,
    PermutationGroup,
    PointedFiniteSet,
    fixed_bounded_multisets,
    fixed_bounded_tuples,
    fixed_gmap_space,
    fixed_invariant_subsets,
    fixed_partition_orbits,
    induced_bounded_multiset_map,
)
from doldzeta.dynamics import cycle_profile
from doldzeta.series import PowerSeries

from conftest import seeded_maps


class TestBoundedMultisets:
    def test_single_point(self):
        f = FiniteSelfMap.identity(1)
        for k in range(5):
            assert fixed_bounded_multisets(f, k, None) == 1

    def test_two_cycle_configuration(self):
        f = FiniteSelfMap([1, 0])
        assert fixed_bounded_multisets(f, 2, 1) == 1  # only {a, b}

    def test_two_cycle_against_zeta_inverse(self):
        # Z = 1 - q^2, so Z^{-1} = 1 + q^2 + q^4: counts 1, 0, 1, 0, 1
        f = FiniteSelfMap([1, 0])
        counts = [fixed_bounded_multisets(f, k, None) for k in range(5)]
        zinv = PowerSeries([1, 0, -1], order=4).inverse()
        assert counts == [int(c) for c in zinv.coeffs]

    def test_zero_size_is_one(self):
        assert fixed_bounded_multisets(FiniteSelfMap([1, 0]), 0, 3) == 1

    def test_bound_zero(self):
        assert fixed_bounded_multisets(FiniteSelfMap.identity(2), 3, 0) == 0

    def test_monotone_in_bound(self):
        for f in seeded_maps(31, 25, 5):
            for k in range(4):
                values = [fixed_bounded_multisets(f, k, bound) for bound in (1, 2, 3, None)]
                assert values == sorted(values)


class TestInvariantSubsets:
    def test_identity_on_two_points(self):
        assert fixed_invariant_subsets(FiniteSelfMap.identity(2), 2) == 3

    def test_two_cycle(self):
        f = FiniteSelfMap([1, 0])
        assert fixed_invariant_subsets(f, 1) == 0
        assert fixed_invariant_subsets(f, 2) == 1

    def test_identity_binomial_sums(self):
        from math import comb

        for chi in (1, 2, 3, 4):
            f = FiniteSelfMap.identity(chi)
            for k in range(1, 5):
                expected = sum(comb(chi, j) for j in range(1, k + 1))
                assert fixed_invariant_subsets(f, k) == expected

    def test_subset_multiset_bridge(self):
        # multiplicity-one invariant multisets of size j are invariant subsets
        for f in seeded_maps(17, 40, 6):
            for k in range(1, 5):
                total = sum(fixed_bounded_multisets(f, j, 1) for j in range(1, k + 1))
                assert total == fixed_invariant_subsets(f, k)


class TestBoundedTuples:
    def test_unconstrained_power(self):
        f = FiniteSelfMap.identity(2)
        assert fixed_bounded_tuples(f, 3, 5) == 8

    def test_injective_pairs(self):
        assert fixed_bounded_tuples(FiniteSelfMap.identity(2), 2, 1) == 2

    def test_pigeonhole(self):
        assert fixed_bounded_tuples(FiniteSelfMap.identity(2), 3, 1) == 0

    def test_only_fixed_points_count(self):
        f = FiniteSelfMap([0, 2, 1])  # one fixed point, one 2-cycle
        assert fixed_bounded_tuples(f, 2, 2) == 1


class TestPartitionOrbits:
    def test_symmetric_square_of_point(self):
        f = FiniteSelfMap.identity(1)
        count = fixed_partition_orbits(f, PermutationGroup.symmetric(2), PartitionFamily.full(2))
        assert count == 1

    def test_symmetric_square_of_two_cycle(self):
        f = FiniteSelfMap([1, 0])
        count = fixed_partition_orbits(f, PermutationGroup.symmetric(2), PartitionFamily.full(2))
        assert count == 1  # the orbit of (a, b); the diagonal pairs swap

    def test_injective_pairs_trivial_group(self):
        f = FiniteSelfMap.identity(3)
        count = fixed_partition_orbits(
            f, PermutationGroup.trivial(2), PartitionFamily.discrete_only(2)
        )
        assert count == 6

    def test_specializes_to_multisets(self):
        rng = random.Random(8)
        for f in seeded_maps(8, 30, 4, min_size=1):
            k = rng.randint(1, 3)
            bound = rng.choice([1, 2, 3, None])
            family = (
                PartitionFamily.full(k)
                if bound is None or bound >= k
                else PartitionFamily.max_block(k, bound)
            )
            group = PermutationGroup.symmetric(k)
            assert fixed_partition_orbits(f, group, family) == fixed_bounded_multisets(
                f, k, bound
            )

    def test_specializes_to_tuples(self):
        rng = random.Random(9)
        for f in seeded_maps(9, 30, 4, min_size=1):
            k = rng.randint(1, 3)
            bound = rng.randint(1, 3)
            family = (
                PartitionFamily.full(k)
                if bound >= k
                else PartitionFamily.max_block(k, bound)
            )
            group = PermutationGroup.trivial(k)
            assert fixed_partition_orbits(f, group, family) == fixed_bounded_tuples(
                f, k, bound
            )

    def test_coefficient_set_kills_everything_when_trivial(self):
        # a one-point coefficient space has no non-basepoint elements
        f = FiniteSelfMap.identity(2)
        group = PermutationGroup.symmetric(2)
        coefficient = PointedFiniteSet.smash_power(0, group)
        count = fixed_partition_orbits(f, group, PartitionFamily.full(2), coefficient)
        assert count == 0

    def test_enumeration_guard(self):
        f = FiniteSelfMap.identity(30)
        group = PermutationGroup.symmetric(5)
        with pytest.raises(EnumerationLimitError):
            fixed_partition_orbits(f, group, PartitionFamily.full(5), max_enum=1000)


class TestGmapSpace:
    def test_trivial_group_power(self):
        f = FiniteSelfMap([1, 0, 2])
        group = PermutationGroup.trivial(3)
        assert fixed_gmap_space(f, group) == len(f.fixed_points()) ** 3

    def test_multisets_of_size_two(self):
        assert fixed_gmap_space(FiniteSelfMap.identity(2), PermutationGroup.symmetric(2)) == 3

    def test_cyclic_action_with_three_cycle(self):
        f = FiniteSelfMap([1, 2, 0])
        group = PermutationGroup.cyclic(3)
        # Burnside: (0 + 3 + 3)/3 = 2 fixed orbits on 27 maps
        assert fixed_gmap_space(f, group) == 2

    def test_agrees_with_partition_orbits_on_full_family(self):
        for f in seeded_maps(12, 25, 4, min_size=1):
            for k in (2, 3):
                group = PermutationGroup.symmetric(k)
                assert fixed_gmap_space(f, group) == fixed_partition_orbits(
                    f, group, PartitionFamily.full(k)
                )


class TestPointedSets:
    def test_smash_power_traces(self):
        group = PermutationGroup.symmetric(3)
        y = PointedFiniteSet.smash_power(2, group)
        assert y.size == 2 ** 3 + 1
        for g in group.elements:
            from doldzeta.partitions import perm_cycle_count

            assert y.trace(g) == 2 ** perm_cycle_count(g)

    def test_action_fixes_basepoint(self):
        group = PermutationGroup.symmetric(2)
        y = PointedFiniteSet.smash_power(3, group)
        for g in group.elements:
            assert y.act(g, 0) == 0

    def test_reduced_euler(self):
        assert PointedFiniteSet(4).reduced_euler == 3


class TestInducedMap:
    def test_symmetric_square_of_pointed_two_cycle(self):
        g = FiniteSelfMap([1, 0]).pointed()
        induced = induced_bounded_multiset_map(g, 2, None)
        # multisets over {a, b}: {aa}, {ab}, {bb}; the swap exchanges aa and bb
        profile = cycle_profile(induced, 4)
        assert induced.size == 4
        assert profile.count(1) == 2  # basepoint and {a, b}
        assert profile.count(2) == 1

    def test_bound_violation_goes_to_basepoint(self):
        # the doubling collapse: pushforward of {a, b} along a map sending
        # both to one point violates the bound 1, so {a, b} hits the basepoint
        g = FiniteSelfMap([0, 0]).pointed()  # both points to the first
        induced = induced_bounded_multiset_map(g, 2, 1)
        assert induced.size == 2  # basepoint plus the single configuration {a, b}
        assert induced(1) == 0

    def test_basepoint_absorbing_when_map_collapses(self):
        # a pointed map killing a point sends multisets through it to the basepoint
        g = FiniteSelfMap([0, 0, 2])  # pointed at 0; the point 1 dies
        induced = induced_bounded_multiset_map(g, 2, None)
        multisets = [(1, 1), (1, 2), (2, 2)]
        images = {m: induced(i + 1) for i, m in enumerate(multisets)}
        assert images[(1, 1)] == 0 and images[(1, 2)] == 0
        assert images[(2, 2)] == multisets.index((2, 2)) + 1
