"""Exact real-root analysis of univariate rational polynomials.

A polynomial is a list of Fractions, lowest degree first, with no trailing
zeros (``[]`` is the zero polynomial). Public functions also accept any
sequence of rationals or a one-variable real ``Polynomial``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

INF = math.inf


def as_real_univariate(p) -> list[Fraction]:
    from .polynomial import Polynomial

    if isinstance(p, Polynomial):
        if p.nvars != 1:
            raise ValueError("expected a univariate polynomial")
        if not p.is_real():
            raise ValueError("expected real coefficients")
        deg = p.total_degree()
        out = [Fraction(0)] * (deg + 1)
        for (k,), c in p.terms.items():
            out[k] = c.re
        return out
    return _fr(p)


def _fr(p) -> list:
    return trim([Fraction(c) for c in p])


def trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(p) - 1


def evaluate(p: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence[Fraction]) -> list[Fraction]:
    return [k * c for k, c in enumerate(p)][1:]


def add(a, b) -> list:
    n = max(len(a), len(b))
    return trim([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)])


def sub(a, b) -> list:
    return add(a, [-c for c in b])


def mul(a, b) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_poly(a, b) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for k, y in enumerate(b):
            r[shift + k] -= c * y
        r.pop()
        trim(r)
    return trim(q), r


def monic(p) -> list:
    return [c / p[-1] for c in p] if p else []


def gcd(a, b) -> list:
    a, b = _fr(a), _fr(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def squarefree_part(p) -> list:
    p = _fr(p)
    if len(p) <= 2:
        return monic(p)
    g = gcd(p, derivative(p))
    return monic(divmod_poly(p, g)[0])


def squarefree_factors(p) -> list[tuple[list, int]]:
    """Yun's algorithm: pairs (q_k, k) with p = lc * prod q_k^k and q_k squarefree, coprime."""
    p = _fr(p)
    if not p:
        raise ValueError("zero polynomial")
    if len(p) == 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = divmod_poly(p, a)[0]
    c = divmod_poly(dp, a)[0]
    d = sub(c, derivative(b))
    k = 1
    while len(b) > 1:
        a = gcd(b, d)
        if len(a) > 1:
            out.append((a, k))
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = sub(c, derivative(b))
        k += 1
    return out


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p) -> list[list]:
    seq = [list(p), derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_at(p, x) -> int:
    if x == INF:
        return _sign(p[-1])
    if x == -INF:
        return _sign(p[-1]) * (1 if (len(p) - 1) % 2 == 0 else -1)
    return _sign(evaluate(p, x))


def _variations(seq, x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _to_ext(x):
    if x in (INF, -INF):
        return x
    return Fraction(x)


def sturm_count(p, lo=-INF, hi=INF) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    p = as_real_univariate(p)
    if not p:
        raise ValueError("zero polynomial")
    lo, hi = _to_ext(lo), _to_ext(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    seq = sturm_sequence(squarefree_part(p))
    return _variations(seq, lo) - _variations(seq, hi)


def is_real_rooted(p) -> bool:
    """True iff every complex root is real. Nonzero constants count as real-rooted."""
    p = as_real_univariate(p)
    if not p:
        raise ValueError("zero polynomial")
    if len(p) <= 2:
        return True
    if len(p) == 3:
        c, b, a = p
        return b * b - 4 * a * c >= 0
    q = squarefree_part(p)
    return sturm_count(q) == len(q) - 1


@dataclass(frozen=True)
class RootInterval:
    """One distinct real root in (lo, hi], or exactly lo when lo == hi."""

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        return x == self.lo if self.exact else self.lo < x <= self.hi


def _cauchy_bound(p) -> Fraction:
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def _isolate_squarefree(q) -> list[tuple[Fraction, Fraction]]:
    if len(q) <= 1:
        return []
    seq = sturm_sequence(q)
    B = _cauchy_bound(q)
    out = []
    stack = [(-B, B, _variations(seq, -B) - _variations(seq, B))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            if evaluate(q, hi) == 0:
                out.append((hi, hi))
            else:
                out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vmid = _variations(seq, mid)
        left = _variations(seq, lo) - vmid
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort()
    return out


def _root_count_in(q, iv: RootInterval) -> int:
    if iv.exact:
        return 1 if evaluate(q, iv.lo) == 0 else 0
    if len(q) <= 1:
        return 0
    return sturm_count(q, iv.lo, iv.hi)


def isolate_roots(p) -> list[RootInterval]:
    """Disjoint sorted intervals, one per distinct real root, with multiplicities."""
    p = as_real_univariate(p)
    if not p:
        raise ValueError("zero polynomial")
    raw = _isolate_squarefree(squarefree_part(p))
    factors = squarefree_factors(p)
    out = []
    for lo, hi in raw:
        iv = RootInterval(lo, hi)
        mult = next(k for q, k in factors if _root_count_in(q, iv))
        out.append(RootInterval(lo, hi, mult))
    return out


def refine(p, iv: RootInterval, width) -> RootInterval:
    """Bisect an isolating interval of p until it is narrower than ``width``."""
    if iv.exact:
        return iv
    q = squarefree_part(as_real_univariate(p))
    lo, hi = iv.lo, iv.hi
    width = Fraction(width)
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = evaluate(q, mid)
        if v == 0:
            return RootInterval(mid, mid, iv.multiplicity)
        if sturm_count(q, lo, mid):
            hi = mid
        else:
            lo = mid
    return RootInterval(lo, hi, iv.multiplicity)


def wronskian(g, h) -> list[Fraction]:
    """W[g, h] = g'h - gh'."""
    g, h = as_real_univariate(g), as_real_univariate(h)
    return sub(mul(derivative(g), h), mul(g, derivative(h)))


def _merged_roots(g, h) -> tuple[list[int], list[int]]:
    # Sorted root indices (repeated by multiplicity) of g and h in a common ordering.
    both = squarefree_part(mul(g, h))
    ivs = [RootInterval(lo, hi) for lo, hi in _isolate_squarefree(both)]
    gf, hf = squarefree_factors(g), squarefree_factors(h)

    def expand(factors):
        seq = []
        for idx, iv in enumerate(ivs):
            mult = sum(k for q, k in factors if _root_count_in(q, iv))
            seq.extend([idx] * mult)
        return seq

    return expand(gf), expand(hf)


def _weaves(A: list, B: list) -> bool:
    # A[0] <= B[0] <= A[1] <= B[1] <= ...
    if len(A) - len(B) not in (0, 1):
        return False
    for k in range(len(B)):
        if A[k] > B[k]:
            return False
        if k + 1 < len(A) and B[k] > A[k + 1]:
            return False
    return True


def interlaces(g, h) -> bool:
    """Weak interlacing of root multisets; the zero polynomial interlaces everything."""
    g, h = as_real_univariate(g), as_real_univariate(h)
    for p in (g, h):
        if p and not is_real_rooted(p):
            raise ValueError("interlacing needs real-rooted arguments")
    if not g or not h:
        return True
    A, B = _merged_roots(g, h)
    if len(A) != len(g) - 1 or len(B) != len(h) - 1:
        raise AssertionError("root count disagrees with degree for a real-rooted input")
    return _weaves(A, B) or _weaves(B, A)


def nonpositive_everywhere(w) -> bool:
    """Exact test that w(x) <= 0 for every real x."""
    w = as_real_univariate(w)
    if not w:
        return True
    if (len(w) - 1) % 2 or w[-1] > 0:
        return False
    odd = [q for q, k in squarefree_factors(w) if k % 2]
    return all(sturm_count(q) == 0 for q in odd)


def proper_position(g, h) -> bool:
    """g << h: interlacing roots and W[g, h] <= 0 on the real line."""
    g, h = as_real_univariate(g), as_real_univariate(h)
    if not g and not h:
        return True
    if not g:
        return is_real_rooted(h)
    if not h:
        return is_real_rooted(g)
    if not (is_real_rooted(g) and is_real_rooted(h)):
        return False
    return interlaces(g, h) and nonpositive_everywhere(wronskian(g, h))


def hermite_biehler_stable(h, g) -> bool:
    """Is h + i*g free of roots in the open upper half-plane? (h, g real.)"""
    h, g = as_real_univariate(h), as_real_univariate(g)
    if not h and not g:
        raise ValueError("both parts are zero")
    return proper_position(g, h)
