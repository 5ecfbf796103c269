"""Sparse multivariate polynomials with exact Gaussian-rational coefficients.

Variables are indexed from 0 in the Python API; printed and serialized names
use ``z1 .. zn``. Exponent vectors are plain tuples of non-negative ints of
length ``nvars``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .combstruct import SupportSet
from .gaussian import ONE, ZERO, GaussRat, format_rational, parse_rational

Exponent = tuple


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to GaussRat.

    Zero coefficients are never stored, so ``terms`` is exactly the support.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()):
        if not isinstance(nvars, int) or nvars < 0:
            raise ValueError(f"nvars must be a non-negative int, got {nvars!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = GaussRat.coerce(c)
            acc = clean.get(exp)
            c = c if acc is None else acc + c
            if c.is_zero():
                clean.pop(exp, None)
            else:
                clean[exp] = c
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        # trusted path: keys valid, values nonzero GaussRat
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): ONE})

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def coefficient(self, exp) -> GaussRat:
        return self._terms.get(tuple(exp), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self._terms.values())

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def sorted_terms(self):
        return sorted(self._terms.items())

    def real_part(self) -> "Polynomial":
        return Polynomial._raw(
            self.nvars, {e: GaussRat(c.re) for e, c in self._terms.items() if c.re != 0})

    def imag_part(self) -> "Polynomial":
        return Polynomial._raw(
            self.nvars, {e: GaussRat(c.im) for e, c in self._terms.items() if c.im != 0})

    def used_variables(self) -> list[int]:
        return [k for k in range(self.nvars) if any(e[k] for e in self._terms)]

    # arithmetic

    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        try:
            return Polynomial.constant(GaussRat.coerce(other), self.nvars)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            acc = out.get(e)
            if acc is None:
                out[e] = c
            else:
                s = acc + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
            return self.scale(c)
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(e)
                out[e] = c1 * c2 if acc is None else acc + c1 * c2
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = GaussRat.coerce(c)
        if c.is_zero():
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __truediv__(self, c):
        return self.scale(ONE / GaussRat.coerce(c))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            o = Polynomial.constant(GaussRat.coerce(other), self.nvars)
        except TypeError:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]))):
            mono = "*".join(
                f"z{k + 1}" if p == 1 else f"z{k + 1}^{p}" for k, p in enumerate(e) if p)
            if not mono:
                parts.append(str(c))
            elif c == ONE:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    # serialization

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"exp": list(e), "re": format_rational(c.re), "im": format_rational(c.im)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "Polynomial":
        """Parse the canonical JSON form. Zero and duplicate terms are rejected."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            nvars = obj["nvars"]
            raw_terms = obj["terms"]
        except (KeyError, TypeError) as exc:
            raise ValueError("polynomial JSON needs 'nvars' and 'terms'") from exc
        if not isinstance(nvars, int) or isinstance(nvars, bool) or nvars < 0:
            raise ValueError(f"bad nvars {nvars!r}")
        terms = {}
        for t in raw_terms:
            exp = t["exp"]
            if not isinstance(exp, list) or not all(
                    isinstance(x, int) and not isinstance(x, bool) for x in exp):
                raise ValueError(f"bad exponent {exp!r}")
            exp = tuple(exp)
            if len(exp) != nvars or any(x < 0 for x in exp):
                raise ValueError(f"bad exponent {exp!r} for nvars={nvars}")
            if exp in terms:
                raise ValueError(f"duplicate exponent {list(exp)}")
            c = GaussRat(parse_rational(t.get("re", "0")), parse_rational(t.get("im", "0")))
            if c.is_zero():
                raise ValueError(f"zero coefficient at exponent {list(exp)}")
            terms[exp] = c
        return cls._raw(nvars, terms)


def variables(nvars: int) -> list[Polynomial]:
    return [Polynomial.variable(i, nvars) for i in range(nvars)]


def from_real_dict(nvars: int, coeffs: Mapping) -> Polynomial:
    return Polynomial(nvars, {e: GaussRat(Fraction(c)) for e, c in coeffs.items()})


# evaluation

def evaluate(f: Polynomial, point: Sequence) -> complex:
    """Floating-point evaluation. Point entries may be numbers or (re, im) pairs."""
    pt = [_to_complex(x) for x in point]
    if len(pt) != f.nvars:
        raise ValueError(f"point has length {len(pt)}, polynomial has {f.nvars} variables")
    total = 0j
    for e, c in f._terms.items():
        v = complex(c)
        for x, k in zip(pt, e):
            if k:
                v *= x ** k
        total += v
    return total


def _to_complex(x) -> complex:
    if isinstance(x, (tuple, list)):
        re, im = x
        return complex(float(re), float(im))
    if isinstance(x, GaussRat):
        return complex(x)
    return complex(x)


def evaluate_exact(f: Polynomial, point: Sequence) -> GaussRat:
    pt = [GaussRat.coerce(x) for x in point]
    if len(pt) != f.nvars:
        raise ValueError(f"point has length {len(pt)}, polynomial has {f.nvars} variables")
    if all(x.im == 0 for x in pt) and f.is_real():
        return GaussRat(evaluate_real(f, [x.re for x in pt]))
    total = ZERO
    for e, c in f._terms.items():
        v = c
        for x, k in zip(pt, e):
            if k:
                v = v * x ** k
        total = total + v
    return total


def evaluate_real(f: Polynomial, point: Sequence) -> Fraction:
    """Exact value of a real-coefficient polynomial at a rational point."""
    pt = [Fraction(x) for x in point]
    if len(pt) != f.nvars:
        raise ValueError(f"point has length {len(pt)}, polynomial has {f.nvars} variables")
    total = Fraction(0)
    for e, c in f._terms.items():
        if c.im != 0:
            raise ValueError("evaluate_real needs real coefficients")
        v = c.re
        for x, k in zip(pt, e):
            if k:
                v *= x ** k
        total += v
    return total


# derivatives and structural transforms

def _check_index(f: Polynomial, i: int):
    if not isinstance(i, int) or not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")


def partial_derivative(f: Polynomial, i: int, order: int = 1) -> Polynomial:
    _check_index(f, i)
    if order == 0:
        return f
    out = {}
    for e, c in f._terms.items():
        k = e[i]
        if k < order:
            continue
        factor = factorial(k) // factorial(k - order)
        ne = list(e)
        ne[i] = k - order
        out[tuple(ne)] = c * factor
    return Polynomial._raw(f.nvars, out)


def derivative_multi(f: Polynomial, alpha: Sequence[int]) -> Polynomial:
    """The mixed partial derivative with multi-index ``alpha``."""
    if len(alpha) != f.nvars:
        raise ValueError("multi-index length mismatch")
    out = {}
    for e, c in f._terms.items():
        if any(k < a for k, a in zip(e, alpha)):
            continue
        factor = 1
        for k, a in zip(e, alpha):
            factor *= factorial(k) // factorial(k - a)
        out[tuple(k - a for k, a in zip(e, alpha))] = c * factor
    return Polynomial._raw(f.nvars, out)


def support(f: Polynomial) -> SupportSet:
    return SupportSet(f.nvars, f._terms.keys())


def degree_vector(f: Polynomial) -> tuple:
    dv = [0] * f.nvars
    for e in f._terms:
        for k, p in enumerate(e):
            if p > dv[k]:
                dv[k] = p
    return tuple(dv)


def is_multiaffine(f: Polynomial) -> bool:
    return all(p <= 1 for e in f._terms for p in e)


def is_homogeneous(f: Polynomial) -> bool:
    return len({sum(e) for e in f._terms}) <= 1


def reciprocal(f: Polynomial, kappa: Sequence[int]) -> Polynomial:
    """``z^kappa * f(1/z)``: the coefficient of z^(kappa-a) becomes a(a)."""
    kappa = tuple(kappa)
    if len(kappa) != f.nvars:
        raise ValueError("kappa length mismatch")
    dv = degree_vector(f)
    if any(k < d for k, d in zip(kappa, dv)):
        raise ValueError(f"kappa {kappa} is below the degree vector {dv}")
    return Polynomial._raw(
        f.nvars, {tuple(k - p for k, p in zip(kappa, e)): c for e, c in f._terms.items()})


def interval_restriction(f: Polynomial, alpha: Sequence[int], beta: Sequence[int]) -> Polynomial:
    """Window the support of ``f`` to the box [alpha, beta], shifted to the origin.

    Built only from reciprocals and derivatives, so stability is preserved.
    Coefficients carry positive factorial factors; only the support is
    normalized.
    """
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) != f.nvars or len(beta) != f.nvars:
        raise ValueError("alpha/beta length mismatch")
    if any(a > b for a, b in zip(alpha, beta)):
        raise ValueError(f"alpha {alpha} is not <= beta {beta}")
    if any(a < 0 for a in alpha):
        raise ValueError("alpha must be non-negative")
    kappa = degree_vector(f)
    if any(b > k for b, k in zip(beta, kappa)):
        raise ValueError(f"beta {beta} exceeds the degree vector {kappa}")
    g = derivative_multi(reciprocal(f, kappa), [k - b for k, b in zip(kappa, beta)])
    out = derivative_multi(reciprocal(g, beta), alpha)
    expected = {tuple(x - a for x, a in zip(e, alpha)) for e in f._terms
                if all(a <= x <= b for a, x, b in zip(alpha, e, beta))}
    assert set(out._terms) == expected, "interval restriction support postcondition failed"
    return out


def scale_variables(f: Polynomial, factors: Sequence) -> Polynomial:
    """Substitute ``z_k <- factors[k] * z_k``."""
    if len(factors) != f.nvars:
        raise ValueError("factor count mismatch")
    fs = [GaussRat.coerce(x) for x in factors]
    out = {}
    for e, c in f._terms.items():
        v = c
        for x, k in zip(fs, e):
            if k:
                v = v * x ** k
        if not v.is_zero():
            out[e] = v
    return Polynomial._raw(f.nvars, out)


def substitute_constant(f: Polynomial, i: int, value) -> Polynomial:
    """Set ``z_i := value``, keeping the variable count (z_i no longer appears)."""
    _check_index(f, i)
    value = GaussRat.coerce(value)
    out: dict = {}
    for e, c in f._terms.items():
        k = e[i]
        v = c * value ** k if k else c
        ne = e[:i] + (0,) + e[i + 1:]
        acc = out.get(ne)
        out[ne] = v if acc is None else acc + v
    return Polynomial._raw(f.nvars, {e: c for e, c in out.items() if not c.is_zero()})


def _line_powers(b: Fraction, d: Fraction, kmax: int) -> list[list[Fraction]]:
    pows = [[Fraction(1)]]
    for _ in range(kmax):
        prev = pows[-1]
        nxt = [Fraction(0)] * (len(prev) + 1)
        for idx, c in enumerate(prev):
            nxt[idx] += c * b
            nxt[idx + 1] += c * d
        pows.append(nxt)
    return pows


def restrict_line_coeffs(f: Polynomial, base: Sequence, direction: Sequence) -> tuple[list, list]:
    """Real and imaginary coefficient lists (lowest degree first) of f(base + t*direction)."""
    base = [Fraction(x) for x in base]
    direction = [Fraction(x) for x in direction]
    if len(base) != f.nvars or len(direction) != f.nvars:
        raise ValueError("line dimension mismatch")
    dv = degree_vector(f)
    pows = [_line_powers(b, d, k) for b, d, k in zip(base, direction, dv)]
    deg = sum(dv)
    re = [Fraction(0)] * (deg + 1)
    im = [Fraction(0)] * (deg + 1)
    for e, c in f._terms.items():
        poly = [Fraction(1)]
        for k, p in enumerate(e):
            if p:
                q = pows[k][p]
                prod = [Fraction(0)] * (len(poly) + len(q) - 1)
                for a, x in enumerate(poly):
                    if x:
                        for b, y in enumerate(q):
                            prod[a + b] += x * y
                poly = prod
        for idx, x in enumerate(poly):
            if c.re:
                re[idx] += c.re * x
            if c.im:
                im[idx] += c.im * x
    return re, im


def restrict_line(f: Polynomial, base: Sequence, direction: Sequence) -> Polynomial:
    """The univariate polynomial ``t -> f(base + t*direction)``; direction must be positive."""
    if any(Fraction(d) <= 0 for d in direction):
        raise ValueError("direction must be strictly positive in every coordinate")
    re, im = restrict_line_coeffs(f, base, direction)
    return Polynomial(1, {(k,): GaussRat(a, b) for k, (a, b) in enumerate(zip(re, im))})


# polarization

@dataclass(frozen=True)
class PolarizedPolynomial:
    base: Polynomial
    degrees: tuple
    index_map: Mapping  # (i, j) -> flat variable index, both 0-based

    def group(self, i: int) -> list[int]:
        return [self.index_map[(i, j)] for j in range(self.degrees[i])]


def _group_layout(degrees: Sequence[int]) -> dict:
    index_map, flat = {}, 0
    for i, d in enumerate(degrees):
        for j in range(d):
            index_map[(i, j)] = flat
            flat += 1
    return index_map


def polarize(f: Polynomial) -> PolarizedPolynomial:
    """Symmetric multi-affine lift: z_i^k becomes e_k(z_i1..z_id) / C(d, k)."""
    if f.is_zero():
        raise ValueError("cannot polarize the zero polynomial")
    degrees = degree_vector(f)
    index_map = _group_layout(degrees)
    total = len(index_map)
    out: dict = {}
    for e, c in f._terms.items():
        scale = Fraction(1)
        choices = []
        for i, (k, d) in enumerate(zip(e, degrees)):
            scale /= comb(d, k)
            choices.append([[index_map[(i, j)] for j in sub]
                            for sub in itertools.combinations(range(d), k)])
        coeff = c * scale
        for pick in itertools.product(*choices):
            exp = [0] * total
            for sub in pick:
                for v in sub:
                    exp[v] = 1
            key = tuple(exp)
            acc = out.get(key)
            out[key] = coeff if acc is None else acc + coeff
    base = Polynomial._raw(total, {k: v for k, v in out.items() if not v.is_zero()})
    return PolarizedPolynomial(base, degrees, MappingProxyType(index_map))


def collapse(pf: PolarizedPolynomial) -> Polynomial:
    """Set every z_ij := z_i."""
    n = len(pf.degrees)
    owner = {flat: i for (i, _j), flat in pf.index_map.items()}
    out: dict = {}
    for e, c in pf.base._terms.items():
        exp = [0] * n
        for flat, p in enumerate(e):
            if p:
                exp[owner[flat]] += p
        key = tuple(exp)
        acc = out.get(key)
        out[key] = c if acc is None else acc + c
    return Polynomial._raw(n, {k: v for k, v in out.items() if not v.is_zero()})


# phases

def phase_normalize(f: Polynomial):
    """Split f as ``c0 * g`` with g real and positive-coefficient, if possible.

    ``c0`` is the coefficient of the lexicographically largest exponent (the
    leading term with z1 > z2 > ...); the phase of f is ``c0 / |c0|``,
    returned symbolically as c0. Returns None when
    two coefficients have a non-positive ratio.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no phase")
    items = f.sorted_terms()
    c0 = items[-1][1]
    c0bar = c0.conjugate()
    out = {}
    for e, c in items:
        # c / c0 > 0  <=>  c * conj(c0) is a positive real
        p = c * c0bar
        if p.im != 0 or p.re <= 0:
            return None
        out[e] = GaussRat(p.re / c0.norm2())
    return Polynomial._raw(f.nvars, out), c0
