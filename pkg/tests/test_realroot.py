from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from halfplane import realroot as rr

t = sympy.Symbol("t")

small_ints = st.integers(-5, 5)
polys = st.lists(small_ints, min_size=1, max_size=7).filter(lambda p: any(p))


def from_roots(*roots):
    p = [Fraction(1)]
    for r in roots:
        p = rr.mul(p, [-Fraction(r), Fraction(1)])
    return p


def sympy_distinct_real_roots(p) -> int:
    return len(set(sympy.real_roots(sympy.Poly(list(reversed(p)), t))))


def test_sturm_count_examples():
    assert rr.sturm_count([-1, 0, 1]) == 2
    assert rr.sturm_count([1, 0, 1]) == 0
    assert rr.sturm_count(from_roots(1, 1, 0)) == 2
    assert rr.sturm_count([-1, 0, 1], 0, 5) == 1
    with pytest.raises(ValueError):
        rr.sturm_count([])


def test_is_real_rooted_examples():
    assert not rr.is_real_rooted([1, 0, 1])
    assert rr.is_real_rooted(from_roots(1, 2))
    assert rr.is_real_rooted([1, -1, -1, 1])
    with pytest.raises(ValueError):
        rr.is_real_rooted([0])


def test_isolate_roots_examples():
    a, b = (rr.refine([-2, 0, 1], iv, Fraction(1, 4)) for iv in rr.isolate_roots([-2, 0, 1]))
    assert -2 <= a.lo and a.hi <= -1 and 1 <= b.lo and b.hi <= 2
    (z,) = rr.isolate_roots([0, 1])
    assert z.contains(0) and z.multiplicity == 1
    (d,) = rr.isolate_roots(from_roots(1, 1))
    assert d.contains(1) and d.multiplicity == 2


def test_refine_reaches_width():
    iv = rr.isolate_roots([-2, 0, 1])[1]
    r = rr.refine([-2, 0, 1], iv, Fraction(1, 1000))
    assert r.hi - r.lo <= Fraction(1, 1000) and r.lo ** 2 < 2 <= r.hi ** 2


def test_wronskian_examples():
    assert rr.wronskian([1], [0, 1]) == [-1]
    assert rr.wronskian([0, 1], [0, 1]) == []
    assert rr.wronskian([0, 1], [0, 0, 1]) == [0, 0, -1]


def test_interlaces_examples():
    assert rr.interlaces([0, 1], [-1, 0, 1])
    assert not rr.interlaces([-3, 1], [-1, 0, 1])
    assert rr.interlaces([], [-1, 0, 1])
    with pytest.raises(ValueError):
        rr.interlaces([1, 0, 1], [0, 1])


def test_interlacing_with_shared_and_repeated_roots():
    assert rr.interlaces(from_roots(1, 1), from_roots(1))
    assert rr.interlaces(from_roots(0, 1), from_roots(1, 2))
    assert not rr.interlaces(from_roots(0, 0, 0), from_roots(0))


def test_proper_position_examples():
    assert rr.proper_position([1], [0, 1])
    assert not rr.proper_position([0, 1], [1])
    g, h = [-1, 0, 1], [0, -3, 0, 1]
    assert rr.wronskian(g, h) == [-3, 0, 0, 0, -1]
    assert rr.proper_position(g, h)


def test_constant_against_higher_degree_does_not_interlace():
    # W[1, z^3] = -3z^2 <= 0, yet z^3 + i has the root i.
    assert not rr.interlaces([1], [0, 0, 0, 1])
    assert not rr.hermite_biehler_stable([0, 0, 0, 1], [1])
    assert rr.interlaces([1], [0, 1])


def test_hermite_biehler_examples():
    assert rr.hermite_biehler_stable([0, 1], [1])
    assert not rr.hermite_biehler_stable([0, 1], [-1])
    assert rr.hermite_biehler_stable([0, 0, 1], [0, 1])
    with pytest.raises(ValueError):
        rr.hermite_biehler_stable([], [])


@given(polys)
def test_sturm_count_matches_sympy(p):
    assert rr.sturm_count(p) == sympy_distinct_real_roots(p)


@given(polys)
def test_real_rootedness_consistent_with_isolation(p):
    ivs = rr.isolate_roots(p)
    deg = len(rr.as_real_univariate(p)) - 1
    assert rr.is_real_rooted(p) == (sum(iv.multiplicity for iv in ivs) == deg)
    assert all(a.hi <= b.lo for a, b in zip(ivs, ivs[1:]))


@given(polys)
def test_squarefree_factors_reassemble(p):
    p = rr.as_real_univariate(p)
    prod = [p[-1]]
    for q, k in rr.squarefree_factors(p):
        for _ in range(k):
            prod = rr.mul(prod, q)
    assert prod == p


@given(st.lists(small_ints, min_size=1, max_size=4), st.lists(small_ints, min_size=1, max_size=4))
def test_interlacing_is_symmetric(ra, rb):
    g, h = from_roots(*ra), from_roots(*rb)
    assert rr.interlaces(g, h) == rr.interlaces(h, g)


@given(st.lists(small_ints, min_size=1, max_size=4), st.lists(small_ints, min_size=1, max_size=4))
def test_nonpositive_wronskian_matches_sympy(ra, rb):
    W = rr.wronskian(from_roots(*ra), from_roots(*rb))
    if not W:
        return
    expr = sympy.Poly(list(reversed(W)), t)
    crit = [r for r in sympy.real_roots(expr)] + [r for r in sympy.real_roots(expr.diff(t))]
    pts = sorted(set(float(c) for c in crit)) or [0.0]
    samples = [pts[0] - 1, pts[-1] + 1] + [(a + b) / 2 for a, b in zip(pts, pts[1:])] + pts
    oracle = all(expr.eval(sympy.nsimplify(x)) <= 0 for x in samples)
    assert rr.nonpositive_everywhere(W) == oracle


@settings(max_examples=60)
@given(st.lists(small_ints, min_size=1, max_size=4), st.lists(small_ints, min_size=0, max_size=3),
       st.sampled_from([1, -1]), st.data())
def test_obreschkoff_combinations_are_real_rooted(ra, rb, sign, data):
    h, g = from_roots(*ra), rr.mul([sign], from_roots(*rb))
    assume(rr.proper_position(g, h) or rr.proper_position(h, g))
    for _ in range(10):
        a = data.draw(st.fractions(-5, 5))
        b = data.draw(st.fractions(-5, 5))
        comb = rr.add(rr.mul([a], h), rr.mul([b], g))
        assert not comb or rr.is_real_rooted(comb)


@settings(max_examples=200)
@given(st.lists(small_ints, min_size=2, max_size=7).filter(lambda p: p[-1] != 0),
       st.lists(small_ints, min_size=1, max_size=7))
def test_hermite_biehler_against_numpy(h, g):
    n = max(len(h), len(g))
    c = [complex(h[k] if k < len(h) else 0, g[k] if k < len(g) else 0) for k in range(n)]
    while c and c[-1] == 0:
        c.pop()
    roots = np.roots(list(reversed(c)))
    assume(all(abs(r.imag) >= 1e-4 for r in roots))
    assert rr.hermite_biehler_stable(h, g) == all(r.imag <= 1e-7 for r in roots)
