import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfplane.combstruct import (Matroid, SupportSet, WeightedGraph, degree_sequence_system,
                                  delta_matroid_report, has_internal_zeros, holes_at_most_one,
                                  is_delta_matroid, is_jump_system, is_matroid_bases,
                                  jump_system_violation, matching_support, matchings,
                                  matroid_bases_violation, steps, uniform_matroid)
from halfplane.obstruction import fano


def S(*pts):
    return SupportSet(len(pts[0]), pts)


def sets(n, *fam):
    return SupportSet.from_sets(n, [{x - 1 for x in s} for s in fam])


# naive oracle: the two-step axiom written straight from the definition

def naive_jump(points) -> bool:
    F = set(points)
    n = len(next(iter(F)))

    def st_(a, b):
        out = []
        for i in range(n):
            for s in (1, -1):
                sig = tuple(s if k == i else 0 for k in range(n))
                moved = tuple(x + y for x, y in zip(a, sig))
                if sum(abs(x - y) for x, y in zip(moved, b)) == sum(abs(x - y) for x, y in zip(a, b)) - 1:
                    out.append(sig)
        return out

    for a in F:
        for b in F:
            for sig in st_(a, b):
                a1 = tuple(x + y for x, y in zip(a, sig))
                if a1 in F:
                    continue
                if not any(tuple(x + y for x, y in zip(a1, tau)) in F for tau in st_(a1, b)):
                    return False
    return True


def test_steps_examples():
    assert steps((0, 0), (2, 1)) == {(1, 0), (0, 1)}
    assert steps((1, 2), (1, 2)) == set()
    assert steps((1,), (0,)) == {(-1,)}
    with pytest.raises(ValueError):
        steps((0,), (0, 0))


def test_jump_system_examples():
    assert not is_jump_system(S((0,), (3,)))
    v = jump_system_violation(S((0,), (3,)))
    assert v.alpha == (0,) and v.beta == (3,) and v.sigma == (1,)
    assert is_jump_system(S((0,), (1,), (3,)))
    assert is_jump_system(S((0, 0), (1, 1)))
    with pytest.raises(ValueError):
        is_jump_system(SupportSet(1, []))


def test_delta_matroid_examples():
    assert is_delta_matroid(sets(2, set(), {1, 2}))
    assert is_delta_matroid(sets(1, set(), {1}))
    assert not is_delta_matroid(sets(3, set(), {1, 2, 3}))
    rep = delta_matroid_report(sets(3, set(), {1, 2}))
    assert rep.exchange_holds and rep.unused == [2] and not rep.is_delta_matroid
    with pytest.raises(ValueError):
        is_delta_matroid(S((0,), (2,)))


def test_matroid_examples():
    assert is_matroid_bases([{0, 1}, {0, 2}, {1, 2}], 3)
    v = matroid_bases_violation([{0}, {1, 2}], 3)
    assert v is not None and v.x is None
    F = fano()
    assert len(F.bases) == 28 and is_matroid_bases(F.bases, 7)
    assert F.is_basis({0, 1, 3}) and not F.is_basis({1, 3, 5})
    with pytest.raises(ValueError):
        is_matroid_bases([], 3)
    with pytest.raises(ValueError):
        Matroid(3, frozenset({frozenset({0}), frozenset({1, 2})}))


def test_matroid_json_is_one_indexed():
    M = uniform_matroid(2, 3)
    assert M.to_json() == {"n": 3, "bases": [[1, 2], [1, 3], [2, 3]]}
    assert Matroid.from_json(M.to_json()).bases == M.bases


def test_internal_zeros_examples():
    assert has_internal_zeros(S((0, 0), (1, 1))) == (0, 1)
    assert has_internal_zeros(S((0, 0), (0, 1), (1, 0), (1, 1))) is None
    assert has_internal_zeros(S((0,), (2,))) == (1,)


def test_matching_support_examples():
    edge = WeightedGraph.unweighted(2, [(0, 1)])
    assert matching_support(edge) == sets(2, set(), {1, 2})
    path = WeightedGraph.unweighted(3, [(0, 1), (1, 2)])
    assert matching_support(path) == sets(3, set(), {1, 2}, {2, 3})
    tri = WeightedGraph.unweighted(3, [(0, 1), (0, 2), (1, 2)])
    assert matching_support(tri) == sets(3, set(), {1, 2}, {1, 3}, {2, 3})


def test_degree_sequence_examples():
    edge = WeightedGraph.unweighted(2, [(0, 1)])
    assert degree_sequence_system(edge).points == {(0, 0), (1, 1)}
    two = WeightedGraph.unweighted(4, [(0, 1), (2, 3)])
    assert degree_sequence_system(two).points == {(0, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 1),
                                                  (1, 1, 1, 1)}
    tri = WeightedGraph.unweighted(3, [(0, 1), (0, 2), (1, 2)])
    expected = set()
    for k in range(4):
        for sub in itertools.combinations([(0, 1), (0, 2), (1, 2)], k):
            d = [0, 0, 0]
            for u, v in sub:
                d[u] += 1
                d[v] += 1
            expected.add(tuple(d))
    assert degree_sequence_system(tri).points == expected


def test_graph_validation():
    with pytest.raises(ValueError):
        WeightedGraph.unweighted(2, [(0, 0)])
    with pytest.raises(ValueError):
        WeightedGraph(2, ((0, 1, Fraction(-1)),))
    G = WeightedGraph(3, ((0, 1, Fraction(1, 2)), (1, 2, Fraction(2))))
    assert WeightedGraph.from_json(G.to_json()) == G


# properties

binary_families = st.integers(1, 4).flatmap(
    lambda n: st.sets(st.tuples(*[st.integers(0, 1)] * n), min_size=1, max_size=8))
small_families = st.integers(1, 2).flatmap(
    lambda n: st.sets(st.tuples(*[st.integers(0, 3)] * n), min_size=1, max_size=7))


@given(small_families)
def test_jump_checker_matches_naive_oracle(pts):
    assert is_jump_system(SupportSet(len(next(iter(pts))), pts)) == naive_jump(pts)


@given(binary_families)
def test_delta_matroids_are_jump_systems(pts):
    F = SupportSet(len(next(iter(pts))), pts)
    if delta_matroid_report(F).exchange_holds:
        assert is_jump_system(F)
    assert delta_matroid_report(F).exchange_holds == naive_jump(pts)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_uniform_bases_are_delta_matroids(nr):
    n, r = nr
    M = uniform_matroid(r, n)
    F = SupportSet.from_sets(n, M.bases)
    assert delta_matroid_report(F).exchange_holds


@given(st.sets(st.integers(0, 8), min_size=1))
def test_univariate_jump_systems_are_hole_bounded(F):
    assert is_jump_system(SupportSet(1, [(k,) for k in F])) == holes_at_most_one(F)


@given(st.tuples(*[st.integers(-2, 3)] * 3), st.tuples(*[st.integers(-2, 3)] * 3))
def test_steps_empty_iff_equal(a, b):
    assert (not steps(a, b)) == (a == b)


graphs = st.integers(2, 8).flatmap(lambda n: st.builds(
    lambda es: WeightedGraph.unweighted(n, sorted(es)),
    st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
            .filter(lambda e: e[0] < e[1]), max_size=10)))


@settings(max_examples=60)
@given(graphs)
def test_matching_support_is_delta_matroid(G):
    assert delta_matroid_report(matching_support(G)).exchange_holds


@settings(max_examples=60)
@given(graphs.filter(lambda G: len(G.edges) <= 8))
def test_degree_sequences_form_jump_systems(G):
    assert is_jump_system(degree_sequence_system(G))


@given(graphs)
def test_matchings_are_disjoint_edge_sets(G):
    for m in matchings(G):
        used = [x for u, v, _ in m for x in (u, v)]
        assert len(used) == len(set(used))


def naive_first_violation(F: SupportSet):
    pts = F.points
    for alpha in F.sorted():
        for beta in F.sorted():
            for sigma in sorted(steps(alpha, beta), reverse=True):
                mid = tuple(x + y for x, y in zip(alpha, sigma))
                if mid in pts:
                    continue
                if not any(tuple(x + y for x, y in zip(mid, t)) in pts for t in steps(mid, beta)):
                    return (alpha, beta, sigma)
    return None


@given(small_families)
def test_reported_violation_is_lexicographically_first(pts):
    F = SupportSet(len(next(iter(pts))), pts)
    v = jump_system_violation(F)
    assert (None if v is None else tuple(v)) == naive_first_violation(F)
