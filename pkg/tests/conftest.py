from fractions import Fraction

import sympy
from hypothesis import settings, strategies as st

from halfplane.gaussian import GaussRat
from halfplane.polynomial import Polynomial


def syms(n):
    return sympy.symbols(f"z1:{n + 1}")


def to_sympy(f: Polynomial):
    zs = syms(f.nvars)
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        coeff = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
            c.im.numerator, c.im.denominator)
        expr += coeff * sympy.Mul(*[z ** k for z, k in zip(zs, e)])
    return sympy.expand(expr)


def from_sympy(expr, n: int) -> Polynomial:
    zs = syms(n)
    expr = sympy.expand(expr)
    if expr == 0:
        return Polynomial.zero(n)
    terms = {}
    for monom, c in sympy.Poly(expr, *zs).terms():
        re, im = c.as_real_imag()
        terms[tuple(monom)] = GaussRat(Fraction(str(re)), Fraction(str(im)))
    return Polynomial(n, terms)


rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_rationals = rationals.filter(bool)
gauss = st.builds(GaussRat, rationals, rationals)


@st.composite
def polynomials(draw, nvars=None, max_deg=3, real=False, max_terms=5):
    n = draw(st.integers(1, 3)) if nvars is None else nvars
    coeff = rationals if real else gauss
    exps = draw(st.lists(st.tuples(*[st.integers(0, max_deg)] * n), min_size=1,
                         max_size=max_terms))
    terms = {e: GaussRat.coerce(draw(coeff)) for e in exps}
    return Polynomial(n, terms)


@st.composite
def nonzero_polynomials(draw, **kw):
    f = draw(polynomials(**kw))
    if f.is_zero():
        f = f + Polynomial.constant(1, f.nvars)
    return f


settings.register_profile("repo", deadline=None)
settings.load_profile("repo")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
