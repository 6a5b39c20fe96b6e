import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_multiverse.lattice import (
    Cube,
    DanglingEdge,
    DimensionMismatch,
    DownwardViolation,
    InvalidVertex,
    OrderType,
    UniverseError,
    cube_points,
    enumerate_order_types,
    induced_universe,
    light_cone,
    maximal_theta,
    order_type_of,
    validate_universe,
)

from conftest import random_universe


def pair_sets(x):
    """Order type exactly as defined: the sets of (i, j) with x_i < x_j and x_i = x_j."""
    idx = range(1, len(x) + 1)
    return (
        frozenset((i, j) for i in idx for j in idx if x[i - 1] < x[j - 1]),
        frozenset((i, j) for i in idx for j in idx if x[i - 1] == x[j - 1]),
    )


def brute_force_type_count(k, values):
    return len({pair_sets(x) for x in itertools.product(values, repeat=k)})


class TestValidate:
    def test_five_edge_edge(self):
        u = validate_universe([(5, 9), (3, 8)], [((5, 9), (3, 8))], k=2)
        assert len(u) == 2 and len(u.edges) == 1

    def test_single_isolated(self):
        u = validate_universe([(0, 0)], [], k=2)
        assert u.vertices == ((0, 0),) and not u.edges

    def test_downward_violation(self):
        with pytest.raises(DownwardViolation):
            validate_universe([(2, 6), (3, 4)], [((3, 4), (2, 6))], k=2)

    def test_equal_max_is_not_downward(self):
        with pytest.raises(DownwardViolation):
            validate_universe([(2, 6), (6, 1)], [((2, 6), (6, 1))], k=2)

    def test_self_loop(self):
        with pytest.raises(DownwardViolation):
            validate_universe([(1, 1)], [((1, 1), (1, 1))], k=2)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            validate_universe([(1, 2, 3)], [], k=2)
        with pytest.raises(DimensionMismatch):
            validate_universe([(1,)], [], k=1)

    def test_dangling_edge_rejected(self):
        with pytest.raises(DanglingEdge):
            validate_universe([(5, 9)], [((5, 9), (3, 8))], k=2)

    def test_negative_coordinate(self):
        with pytest.raises(InvalidVertex):
            validate_universe([(-1, 2)], [], k=2)

    def test_duplicate_vertex(self):
        with pytest.raises(UniverseError):
            validate_universe([(1, 2), (1, 2)], [], k=2)

    def test_duplicate_edges_collapse(self):
        u = validate_universe([(2, 2), (1, 1)], [((2, 2), (1, 1))] * 2, k=2)
        assert len(u.edges) == 1

    def test_vertex_order_is_canonical(self):
        a = validate_universe([(3, 1), (0, 2), (1, 1)], [], k=2)
        b = validate_universe([(1, 1), (3, 1), (0, 2)], [], k=2)
        assert a == b and a.vertices == ((0, 2), (1, 1), (3, 1))


def test_walks_strictly_descend_and_terminate():
    rng = random.Random(5)
    for _ in range(40):
        u = random_universe(rng, max_vertices=9, density=0.6)
        bound = 1 + max(max(v) for v in u.vertices)
        # extend every walk as far as it goes
        walks = [(v,) for v in u.vertices]
        while walks:
            w = walks.pop()
            assert len(w) <= bound
            for y in u.successors[w[-1]]:
                assert max(y) < max(w[-1])
                assert y not in w
                walks.append(w + (y,))


class TestOrderTypes:
    def test_readouts(self):
        assert order_type_of((5, 9)).strict_pairs == {(1, 2)}
        assert (1, 2) in order_type_of((7, 7)).equal_pairs
        assert order_type_of((3, 8)) == order_type_of((2, 6))
        assert order_type_of((9, 5)) != order_type_of((5, 9))

    @pytest.mark.parametrize("k, values, expected", [(2, (0, 1), 3), (3, (0, 1, 2), 13), (1, (0,), 1)])
    def test_counts_against_brute_force(self, k, values, expected):
        assert brute_force_type_count(k, values) == expected
        assert len(enumerate_order_types(k)) == expected

    def test_k4_count(self):
        assert brute_force_type_count(4, range(4)) == len(enumerate_order_types(4)) == 75

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_fewer_than_k_to_the_k(self, k):
        assert len(enumerate_order_types(k)) < k**k

    def test_canonical_and_duplicate_free(self):
        for k in (1, 2, 3, 4):
            types = enumerate_order_types(k)
            assert types == sorted(types)
            assert len(set(types)) == len(types)

    def test_cap(self):
        with pytest.raises(ValueError):
            enumerate_order_types(5)
        assert len(enumerate_order_types(5, cap=5)) == 541

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_partition_matches_pair_sets(self, k):
        """Classifying {0..k}^k by rank vector and by pair sets gives the same partition."""
        by_rank, by_pairs = {}, {}
        for x in itertools.product(range(k + 1), repeat=k):
            by_rank.setdefault(order_type_of(x), set()).add(x)
            by_pairs.setdefault(pair_sets(x), set()).add(x)
        assert sorted(map(sorted, by_rank.values())) == sorted(map(sorted, by_pairs.values()))
        assert set(by_rank) == set(enumerate_order_types(k))
        for t, members in by_rank.items():
            for x in members:
                assert (t.strict_pairs, t.equal_pairs) == pair_sets(x)

    @given(st.lists(st.integers(0, 50), min_size=1, max_size=5))
    def test_order_type_invariant_under_monotone_maps(self, xs):
        assert order_type_of(xs) == order_type_of([3 * c + 7 for c in xs])

    def test_str(self):
        assert str(OrderType((0, 1, 0))) == "x1=x3<x2"


class TestLightCone:
    def test_five_edge_path(self):
        u = validate_universe([(5, 9), (3, 8), (2, 6)], [], k=2)
        assert light_cone(u, (5, 9)) == {(3, 8), (2, 6)}

    def test_zero_apex(self):
        u = validate_universe([(0, 0), (1, 1)], [], k=2)
        assert light_cone(u, (0, 0)) == frozenset()

    def test_diagonal(self):
        u = validate_universe([(0, 0), (1, 1), (2, 2)], [], k=2)
        expected = {z for z in u.vertices if max(z) < 2}
        assert light_cone(u, (0, 2)) == expected == {(0, 0), (1, 1)}

    @settings(max_examples=60)
    @given(
        st.sets(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=15),
        st.sets(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=10),
        st.tuples(st.integers(0, 7), st.integers(0, 7)),
    )
    def test_subset_and_monotone(self, d, extra, x):
        small = validate_universe(d, [], k=2)
        big = validate_universe(d | extra, [], k=2)
        cone = light_cone(small, x)
        assert cone <= small.vertex_set
        assert cone <= light_cone(big, x)


class TestCube:
    def test_points(self):
        assert cube_points(Cube((0, 1), 2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert cube_points(Cube((3,), 2)) == [(3, 3)]
        assert len(cube_points(Cube((0, 1, 2), 2))) == 9

    def test_axis_normalized(self):
        c = Cube((4, 2, 2), 3)
        assert c.axis == (2, 4) and c.min == 2 and c.p == 2

    def test_empty_axis(self):
        with pytest.raises(ValueError):
            Cube((), 2)


def test_maximal_theta_edge_count():
    box = list(itertools.product(range(3), repeat=2))
    u = induced_universe(box, maximal_theta, 2)
    expected = sum(1 for x in box for y in box if max(x) > max(y))
    assert len(u.edges) == expected == 23
