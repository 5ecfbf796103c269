import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_sympy, nonzero_polynomials, polynomials, rationals, syms, to_sympy
from halfplane.gaussian import GaussRat, I
from halfplane.polynomial import (Polynomial, collapse, degree_vector, evaluate, evaluate_exact,
                                  interval_restriction, is_homogeneous, is_multiaffine,
                                  partial_derivative, phase_normalize, polarize, reciprocal,
                                  restrict_line, support, variables)

z1, z2, z3 = variables(3)


def P2(d):
    return Polynomial(2, d)


def test_evaluate_examples():
    a, b = variables(2)
    assert evaluate(a * b + 1, [1j, 1j]) == 0
    assert evaluate(Polynomial.constant(1, 2), [(3, -2), 5]) == 1
    assert evaluate(a + b, [Fraction(1, 2), Fraction(1, 2)]) == 1
    assert evaluate_exact(a * b + 1, [I, I]) == 0


def test_evaluate_dimension_mismatch():
    with pytest.raises(ValueError):
        evaluate(z1, [1, 2])


def test_partial_derivative_examples():
    a, b = variables(2)
    assert partial_derivative(a ** 2 * b, 0) == 2 * a * b
    assert partial_derivative(b, 0).is_zero()
    assert partial_derivative(1 + a * b + b ** 2, 1) == a + 2 * b
    with pytest.raises(IndexError):
        partial_derivative(a, 2)


def test_support_examples():
    a, b = variables(2)
    assert support(1 + a * b).points == {(0, 0), (1, 1)}
    assert support(Polynomial.zero(2)).points == frozenset()
    assert support(3 * a ** 2 - b).points == {(2, 0), (0, 1)}


def test_reciprocal_examples():
    (t,) = variables(1)
    a, b = variables(2)
    assert reciprocal(1 + t, (1,)) == t + 1
    assert reciprocal(3 + 5 * t, (2,)) == 3 * t ** 2 + 5 * t
    assert reciprocal(1 + a * b, (1, 1)) == 1 + a * b
    with pytest.raises(ValueError):
        reciprocal(t ** 3, (2,))


def test_interval_restriction_examples():
    a, b = variables(2)
    f = 1 + a + a * b + a ** 2 * b
    assert support(interval_restriction(f, (1, 0), (1, 1))).points == {(0, 0), (0, 1)}
    assert support(interval_restriction(f, (0, 0), degree_vector(f))) == support(f)
    (t,) = variables(1)
    assert support(interval_restriction(1 + t ** 2, (1,), (2,))).points == {(1,)}
    with pytest.raises(ValueError):
        interval_restriction(f, (1, 1), (0, 1))


def test_restrict_line_examples():
    a, b = variables(2)
    (t,) = variables(1)
    assert restrict_line(a * b, (0, 0), (1, 1)) == t ** 2
    assert restrict_line(a + b, (1, 0), (1, 2)) == 1 + 3 * t
    assert restrict_line(1 + a * b, (0, 0), (1, 1)) == 1 + t ** 2
    with pytest.raises(ValueError):
        restrict_line(a + b, (0, 0), (1, 0))


def test_polarize_examples():
    (t,) = variables(1)
    pf = polarize(t ** 2)
    u, v = variables(2)
    assert pf.base == u * v and pf.degrees == (2,)
    assert polarize(2 * t).base == 2 * variables(1)[0]
    pf = polarize(t ** 2 + 2 * t + 1)
    assert pf.base == u * v + u + v + 1
    assert collapse(pf) == t ** 2 + 2 * t + 1
    with pytest.raises(ValueError):
        polarize(Polynomial.zero(1))


def test_structure_predicates():
    a, b = variables(2)
    assert is_multiaffine(1 + a * b)
    assert not is_multiaffine(a ** 2)
    assert is_homogeneous(z1 * z2 + z1 * z3)
    assert not is_homogeneous(1 + z1)
    assert degree_vector(a ** 2 * b + b ** 3) == (2, 3)


def test_phase_normalize_examples():
    a, b = variables(2)
    g, c = phase_normalize(I * a + 2 * I * b)
    assert g == a + 2 * b and c == I
    assert phase_normalize(a - b) is None
    w = GaussRat(1, 1)
    g, c = phase_normalize((z1 * z2 + z2 * z3).scale(w))
    assert g == z1 * z2 + z2 * z3 and c == w
    assert g.is_real()


def test_json_round_trip_and_rejections():
    f = (z1 - I * z2 ** 2 + Fraction(3, 7)).scale(GaussRat(1, 2))
    assert Polynomial.from_json(json.loads(json.dumps(f.to_json()))) == f
    with pytest.raises(ValueError):
        Polynomial.from_json({"nvars": 1, "terms": [{"exp": [1], "re": "0/1", "im": "0/1"}]})
    dup = {"exp": [1], "re": "1/1", "im": "0/1"}
    with pytest.raises(ValueError):
        Polynomial.from_json({"nvars": 1, "terms": [dup, dup]})


# sympy as an independent arithmetic oracle

@given(polynomials(), polynomials())
def test_arithmetic_matches_sympy(f, g):
    if f.nvars != g.nvars:
        g = Polynomial(f.nvars, {tuple(list(e)[:f.nvars] + [0] * (f.nvars - len(e))): c
                                 for e, c in g.terms.items()})
    assert to_sympy(f * g) == sympy.expand(to_sympy(f) * to_sympy(g))
    assert to_sympy(f - g) == sympy.expand(to_sympy(f) - to_sympy(g))


@given(polynomials(), st.data())
def test_derivative_matches_sympy_and_support_rule(f, data):
    i = data.draw(st.integers(0, f.nvars - 1))
    d = partial_derivative(f, i)
    assert d == from_sympy(sympy.diff(to_sympy(f), syms(f.nvars)[i]), f.nvars)
    expected = {tuple(x - (k == i) for k, x in enumerate(a)) for a in f.terms if a[i] >= 1}
    assert set(d.terms) == expected


@given(polynomials())
def test_reciprocal_is_involution(f):
    kappa = degree_vector(f)
    assert reciprocal(reciprocal(f, kappa), kappa) == f


@given(polynomials(max_deg=2), st.data())
def test_interval_restriction_support_rule(f, data):
    dv = degree_vector(f)
    alpha = tuple(data.draw(st.integers(0, d)) for d in dv)
    beta = tuple(data.draw(st.integers(a, d)) for a, d in zip(alpha, dv))
    r = interval_restriction(f, alpha, beta)
    expected = {tuple(g - a for g, a in zip(gam, alpha)) for gam in f.terms
                if all(a <= g <= b for a, g, b in zip(alpha, gam, beta))}
    assert set(r.terms) == expected


@given(nonzero_polynomials(), st.data())
def test_polarize_contract(f, data):
    pf = polarize(f)
    assert collapse(pf) == f
    assert is_multiaffine(pf.base)
    i = data.draw(st.integers(0, f.nvars - 1))
    grp = pf.group(i)
    if len(grp) >= 2:
        a, b = data.draw(st.lists(st.sampled_from(grp), min_size=2, max_size=2, unique=True))
        swapped = {}
        for e, c in pf.base.terms.items():
            e = list(e)
            e[a], e[b] = e[b], e[a]
            swapped[tuple(e)] = c
        assert Polynomial(pf.base.nvars, swapped) == pf.base


@settings(max_examples=50)
@given(polynomials(), st.data())
def test_float_evaluation_agrees_with_exact(f, data):
    pt = [data.draw(rationals) for _ in range(f.nvars)]
    exact = complex(evaluate_exact(f, pt))
    approx = evaluate(f, pt)
    assert abs(approx - exact) <= 1e-9 * max(1.0, abs(exact))
