"""Nested sets, the level-k metric, containing collections, duality."""

import itertools
import random

import pytest

from setmetric import (
    DiscreteMetric,
    DomainError,
    EmptySetError,
    EuclideanMetric,
    LevelMismatchError,
    NestedSet,
    ParameterError,
    average_metric,
    check_axioms,
    containing_collection,
    duality_ratio,
    nested_average_metric,
    nested_triple_sampler,
    random_point_registry,
    subset_triple_sampler,
)


class TestNestedSet:
    def test_leaf_level_zero(self):
        assert NestedSet.leaf(3).level == 0

    def test_duplicates_removed(self):
        a = NestedSet.build([[1, 2], [2, 1], [3]])
        assert len(a.value) == 2  # {1,2} appears once

    def test_order_insensitive_equality(self):
        assert NestedSet.build([[1, 2], [3]]) == NestedSet.build([[3], [2, 1]])

    def test_mixed_levels_rejected(self):
        with pytest.raises(LevelMismatchError):
            NestedSet.of([NestedSet.leaf(1), NestedSet.build([2])])

    def test_empty_collection_rejected(self):
        with pytest.raises(EmptySetError):
            NestedSet.of([])

    def test_children_sorted_canonically(self):
        a = NestedSet.build([[3], [1, 2]])
        assert [repr(c) for c in a.children()] == ["{3}", "{1, 2}"]


class TestNestedMetric:
    def test_level_one_matches_flat_metric(self, line_registry, euclid):
        rng = random.Random(12)
        sampler = subset_triple_sampler(line_registry, 1, 6)
        for _ in range(60):
            a, b, _ = sampler(rng)
            na = NestedSet.of(NestedSet.leaf(i) for i in a)
            nb = NestedSet.of(NestedSet.leaf(i) for i in b)
            assert nested_average_metric(euclid, line_registry, na, nb) == pytest.approx(
                average_metric(euclid, a, b)
            )

    def test_level_zero_is_ground_distance(self, line_registry, euclid):
        assert nested_average_metric(
            euclid, line_registry, NestedSet.leaf(2), NestedSet.leaf(7)
        ) == 5.0

    def test_equal_collections_give_zero(self, line_registry, euclid):
        a = NestedSet.build([[1, 2], [3, 4]])
        assert nested_average_metric(euclid, line_registry, a, a) == 0.0

    def test_singleton_collections_reduce_to_inner_distance(self, line_registry):
        m = DiscreteMetric(1.0)
        a = NestedSet.build([[1]])
        b = NestedSet.build([[2]])
        assert nested_average_metric(m, line_registry, a, b) == 1.0

    def test_level_mismatch_rejected(self, line_registry, euclid):
        with pytest.raises(LevelMismatchError):
            nested_average_metric(
                euclid, line_registry, NestedSet.build([[1]]), NestedSet.build([1])
            )

    def test_level_two_axioms(self):
        registry = random_point_registry(random.Random(77), size=10, dim=2)
        m = EuclideanMetric()
        report = check_axioms(
            lambda a, b: nested_average_metric(m, registry, a, b),
            nested_triple_sampler(registry),
            n=300,
            seed=77,
            tolerance=1e-9,
        )
        assert report.ok


class TestContainingCollection:
    def test_two_element_ground_set(self, line_registry):
        coll = containing_collection(0, line_registry.set_of([0, 1]))
        as_id_sets = {frozenset(c.value for c in subset.children())
                      for subset in coll.children()}
        assert as_id_sets == {frozenset({0}), frozenset({0, 1})}

    def test_singleton_ground_set(self, line_registry):
        coll = containing_collection(3, line_registry.set_of([3]))
        assert len(coll.value) == 1

    def test_cardinality_is_two_to_n_minus_one(self, line_registry):
        coll = containing_collection(0, line_registry.set_of([0, 1, 2, 3]))
        assert len(coll.value) == 8

    def test_member_required(self, line_registry):
        with pytest.raises(DomainError):
            containing_collection(9, line_registry.set_of([0, 1]))

    def test_size_cap(self):
        from setmetric import ElementRegistry

        reg = ElementRegistry({i: None for i in range(25)})
        with pytest.raises(ParameterError):
            containing_collection(0, reg.universe())


class TestDuality:
    def test_two_point_ground_set_is_exactly_half(self, line_registry):
        kappa, table = duality_ratio(line_registry.set_of([0, 1]), 1.0)
        assert kappa == 0.5
        assert table == ((0, 1, 0.5),)

    def test_ratio_constant_and_bounded(self, line_registry):
        for size in (2, 3, 4, 5):
            kappa, table = duality_ratio(line_registry.set_of(list(range(size))), 1.0)
            assert 0.0 < kappa < 1.0
            values = [d for _, _, d in table]
            assert max(values) - min(values) <= 1e-9

    def test_scale_factors_through(self, line_registry):
        ground = line_registry.set_of([0, 1, 2])
        kappa1, _ = duality_ratio(ground, 1.0)
        kappa2, table2 = duality_ratio(ground, 2.0)
        assert kappa1 == pytest.approx(kappa2)
        assert table2[0][2] == pytest.approx(2.0 * kappa1)

    def test_matches_nested_metric_route(self, line_registry):
        m = DiscreteMetric(1.0)
        for size in (2, 3):
            ground = line_registry.set_of(list(range(size)))
            _, table = duality_ratio(ground, 1.0)
            for ia, ib, expected in table:
                ca = containing_collection(ia, ground)
                cb = containing_collection(ib, ground)
                assert nested_average_metric(m, line_registry, ca, cb) == pytest.approx(expected)

    def test_symdiff_of_containing_collections(self, line_registry):
        # |C(a) symdiff C(b)| = 2^(n-1) for any distinct pair: a constant,
        # hence trivially a pseudo-metric on the ground set
        for size in (2, 3, 4):
            ground = line_registry.set_of(list(range(size)))
            colls = {
                eid: {frozenset(c.value for c in subset.children())
                      for subset in containing_collection(eid, ground).children()}
                for eid in ground
            }
            for x, y in itertools.combinations(ground.members, 2):
                assert len(colls[x] ^ colls[y]) == 2 ** (size - 1)
            for x in ground:
                assert len(colls[x] ^ colls[x]) == 0

    def test_ground_set_size_limits(self, line_registry):
        with pytest.raises(ParameterError):
            duality_ratio(line_registry.set_of([0]), 1.0)
