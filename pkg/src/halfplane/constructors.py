"""Polynomials that are stable by construction.

Each factory returns ``(polynomial, ConstructionTag)``. The tag records the
half-plane the construction guarantees: ``"upper"`` for real stable
outputs and ``"right"`` for Hurwitz stable ones.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .combstruct import Matroid, WeightedGraph, matchings
from .gaussian import ONE, ZERO, GaussRat
from .polynomial import Polynomial

KINDS = ("DetPencil", "PrincipalMinors", "Matching", "Forest", "SpanningTree",
         "DegreeSystem", "Representable", "BasisGenerating")

FOREST_CROSS_CHECK_EDGES = 12


@dataclass(frozen=True)
class ConstructionTag:
    kind: str
    halfplane: str  # "upper" or "right"
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown construction kind {self.kind!r}")
        if self.halfplane not in ("upper", "right"):
            raise ValueError(f"unknown half-plane {self.halfplane!r}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "halfplane": self.halfplane, "payload": self.payload}


# matrices

def as_matrix(A) -> list[list[GaussRat]]:
    rows = [[GaussRat.coerce(x) for x in row] for row in A]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def _square(A) -> list[list[GaussRat]]:
    M = as_matrix(A)
    if any(len(r) != len(M) for r in M):
        raise ValueError("matrix is not square")
    return M


def is_hermitian(A) -> bool:
    M = _square(A)
    n = len(M)
    return all(M[r][c] == M[c][r].conjugate() for r in range(n) for c in range(r, n))


def is_skew_hermitian(A) -> bool:
    M = _square(A)
    n = len(M)
    return all(M[r][c] == -M[c][r].conjugate() for r in range(n) for c in range(r, n))


def det_exact(A) -> GaussRat:
    """Determinant by Gaussian elimination over the Gaussian rationals."""
    M = [row[:] for row in _square(A)]
    n = len(M)
    det = ONE
    for k in range(n):
        piv = next((r for r in range(k, n) if not M[r][k].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        p = M[k][k]
        det = det * p
        for r in range(k + 1, n):
            if not M[r][k].is_zero():
                f = M[r][k] / p
                for c in range(k + 1, n):
                    M[r][c] = M[r][c] - f * M[k][c]
    return det


def char_poly(A) -> list[GaussRat]:
    """Coefficients of det(tI - A), lowest degree first (Faddeev-LeVerrier)."""
    M = _square(A)
    n = len(M)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    Mk = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- A * Mk + c_{n-k+1} I
        prod = [[sum((M[r][m] * Mk[m][c] for m in range(n)), ZERO) for c in range(n)]
                for r in range(n)]
        for r in range(n):
            prod[r][r] = prod[r][r] + coeffs[n - k + 1]
        Mk = prod
        tr = sum((sum((M[r][m] * Mk[m][r] for m in range(n)), ZERO) for r in range(n)), ZERO)
        coeffs[n - k] = -tr / k
    return coeffs


def psd_check(A) -> bool:
    """Exact positive semidefiniteness of a Hermitian matrix.

    The characteristic polynomial of a Hermitian matrix is real-rooted, so
    every root is >= 0 iff its coefficients alternate in sign (weakly).
    """
    if not is_hermitian(A):
        raise ValueError("psd_check needs a Hermitian matrix")
    c = char_poly(A)
    n = len(c) - 1
    for k, ck in enumerate(c):
        if not ck.is_real():
            raise AssertionError("characteristic polynomial of a Hermitian matrix is not real")
        if (-1) ** (n - k) * ck.re < 0:
            return False
    return True


def poly_det(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Symbolic determinant by Laplace expansion along rows, memoized on column sets."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    nvars = M[0][0].nvars
    memo: dict = {}

    def rec(row: int, cols: int) -> Polynomial:
        if row == n:
            return Polynomial.constant(1, nvars)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        total = Polynomial.zero(nvars)
        sign = 1
        for c in range(n):
            if not cols >> c & 1:
                continue
            entry = M[row][c]
            if not entry.is_zero():
                minor = rec(row + 1, cols & ~(1 << c))
                if not minor.is_zero():
                    term = entry * minor
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[cols] = total
        return total

    return rec(0, (1 << n) - 1)


def _linear_entry(nvars: int, coeffs: dict, const: GaussRat) -> Polynomial:
    terms = {}
    if not const.is_zero():
        terms[(0,) * nvars] = const
    for k, c in coeffs.items():
        if not c.is_zero():
            e = [0] * nvars
            e[k] = 1
            terms[tuple(e)] = c
    return Polynomial._raw(nvars, terms)


MAX_PENCIL = 8


def det_pencil(A_list: Sequence, B) -> tuple[Polynomial, ConstructionTag]:
    """det(z_1 A_1 + ... + z_m A_m + B) for PSD A_k and Hermitian B."""
    mats = [_square(A) for A in A_list]
    Bm = _square(B)
    n = len(Bm)
    if n > MAX_PENCIL:
        raise ValueError(f"pencil size limited to {MAX_PENCIL}")
    if any(len(A) != n for A in mats):
        raise ValueError("pencil matrices must all have the size of B")
    if not is_hermitian(Bm):
        raise ValueError("B must be Hermitian")
    for k, A in enumerate(mats):
        if not psd_check(A):
            raise ValueError(f"A_{k + 1} is not positive semidefinite")
    m = len(mats)
    entries = [[_linear_entry(m, {k: mats[k][r][c] for k in range(m)}, Bm[r][c])
                for c in range(n)] for r in range(n)]
    f = poly_det(entries)
    if not f.is_real():
        raise AssertionError("determinant of a Hermitian pencil has a non-real coefficient")
    return f, ConstructionTag("DetPencil", "upper", {"m": m, "size": n})


MAX_MINORS = 12


def principal_minors_poly(A) -> tuple[Polynomial, ConstructionTag]:
    """det(I + AZ) = sum over S of det(A[S]) z^S."""
    M = _square(A)
    n = len(M)
    if n > MAX_MINORS:
        raise ValueError(f"principal-minor expansion limited to {MAX_MINORS}")
    herm = is_hermitian(M)
    if not herm and not is_skew_hermitian(M):
        raise ValueError("matrix must be Hermitian or skew-Hermitian")
    terms = {}
    for mask in range(1 << n):
        S = [k for k in range(n) if mask >> k & 1]
        d = det_exact([[M[r][c] for c in S] for r in S]) if S else ONE
        if not d.is_zero():
            terms[tuple(mask >> k & 1 for k in range(n))] = d
    f = Polynomial._raw(n, terms)
    return f, ConstructionTag("PrincipalMinors", "upper" if herm else "right",
                              {"hermitian": herm, "size": n})


def det_identity_plus_AZ(A) -> Polynomial:
    """det(I + AZ) by symbolic expansion; an independent route to the minors."""
    M = _square(A)
    n = len(M)
    entries = [[_linear_entry(n, {c: M[r][c]}, ONE if r == c else ZERO) for c in range(n)]
               for r in range(n)]
    return poly_det(entries)


# graphs

MAX_MATCHING_EDGES = 24


def matching_polynomial(G: WeightedGraph) -> tuple[Polynomial, ConstructionTag]:
    """Sum over matchings of prod lambda_ij z_i z_j (Hurwitz stable)."""
    if len(G.merged_edges()) > MAX_MATCHING_EDGES:
        raise ValueError(f"matching enumeration limited to {MAX_MATCHING_EDGES} edges")
    terms: dict = {}
    for m in matchings(G):
        e = [0] * G.n
        w = Fraction(1)
        for u, v, lam in m:
            e[u] = e[v] = 1
            w *= lam
        if w:
            key = tuple(e)
            terms[key] = terms.get(key, ZERO) + GaussRat(w)
    f = Polynomial(G.n, terms)
    return f, ConstructionTag("Matching", "right", {"n": G.n, "edges": len(G.merged_edges())})


MAX_FOREST_VERTICES = 8


def _forest_vars(G: WeightedGraph) -> int:
    return G.n + len(G.edges)


def forest_polynomial(G: WeightedGraph, cross_check: bool | None = None
                      ) -> tuple[Polynomial, ConstructionTag]:
    """det(L(G) + Z) in variables z_1..z_n, w_1..w_m (one w per edge).

    Edge e enters the Laplacian as lambda_e * w_e, so unit weights give the
    plain forest generating polynomial. With
    ``cross_check`` (default: when there are at most 12 edges) the result is
    compared term by term with the rooted-forest enumeration.
    """
    if G.n > MAX_FOREST_VERTICES:
        raise ValueError(f"forest polynomial limited to {MAX_FOREST_VERTICES} vertices")
    nv = _forest_vars(G)
    n = G.n
    rows = [[dict() for _ in range(n)] for _ in range(n)]
    for k, (u, v, lam) in enumerate(G.edges):
        wk = n + k
        for a, b, s in ((u, u, 1), (v, v, 1), (u, v, -1), (v, u, -1)):
            rows[a][b][wk] = rows[a][b].get(wk, ZERO) + GaussRat(s * lam)
    for a in range(n):
        rows[a][a][a] = ONE
    entries = [[_linear_entry(nv, rows[r][c], ZERO) for c in range(n)] for r in range(n)]
    f = poly_det(entries)
    if cross_check is None:
        cross_check = len(G.edges) <= FOREST_CROSS_CHECK_EDGES
    if cross_check and f != rooted_forest_enumeration(G):
        raise AssertionError("determinant and rooted-forest enumeration disagree")
    return f, ConstructionTag("Forest", "upper", {"n": n, "edges": len(G.edges)})


def _spanning_forests(G: WeightedGraph):
    """Yield (edge index list, component list) for every acyclic edge subset."""
    m = len(G.edges)

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(k, parent, chosen):
        if k == m:
            comps: dict = {}
            for x in range(G.n):
                comps.setdefault(find(parent, x), []).append(x)
            yield list(chosen), list(comps.values())
            return
        yield from rec(k + 1, parent, chosen)
        u, v, _ = G.edges[k]
        ru, rv = find(parent, u), find(parent, v)
        if ru != rv:
            p2 = list(parent)
            p2[ru] = rv
            chosen.append(k)
            yield from rec(k + 1, p2, chosen)
            chosen.pop()

    yield from rec(0, list(range(G.n)), [])


def rooted_forest_enumeration(G: WeightedGraph) -> Polynomial:
    """Sum over rooted spanning forests F of lambda^F z^roots(F) w^edges(F)."""
    nv = _forest_vars(G)
    terms: dict = {}
    for edges, comps in _spanning_forests(G):
        weight = GaussRat(math.prod((G.edges[k][2] for k in edges), start=Fraction(1)))
        if weight.is_zero():
            continue
        for roots in itertools.product(*comps):
            e = [0] * nv
            for r in roots:
                e[r] = 1
            for k in edges:
                e[G.n + k] = 1
            key = tuple(e)
            terms[key] = terms.get(key, ZERO) + weight
    return Polynomial(nv, terms)


def _reduced_laplacian_det(G: WeightedGraph, root: int) -> Polynomial:
    m = len(G.edges)
    keep = [x for x in range(G.n) if x != root]
    pos = {x: k for k, x in enumerate(keep)}
    rows = [[dict() for _ in keep] for _ in keep]
    for k, (u, v, lam) in enumerate(G.edges):
        for a, b, s in ((u, u, 1), (v, v, 1), (u, v, -1), (v, u, -1)):
            if a in pos and b in pos:
                cell = rows[pos[a]][pos[b]]
                cell[k] = cell.get(k, ZERO) + GaussRat(s * lam)
    if not keep:
        return Polynomial.constant(1, m)
    entries = [[_linear_entry(m, rows[r][c], ZERO) for c in range(len(keep))]
               for r in range(len(keep))]
    return poly_det(entries)


def spanning_tree_polynomial(G: WeightedGraph, root: int = 0
                             ) -> tuple[Polynomial, ConstructionTag]:
    """Sum over spanning trees of prod lambda_e w_e, via the z_root-derivative of det(L + Z) at z = 0."""
    if G.n > MAX_FOREST_VERTICES:
        raise ValueError(f"spanning-tree polynomial limited to {MAX_FOREST_VERTICES} vertices")
    if not 0 <= root < G.n:
        raise IndexError("root out of range")
    if not G.is_connected():
        raise ValueError("graph is disconnected; the spanning-tree polynomial is zero")
    T = _reduced_laplacian_det(G, root)
    if G.n > 1:
        other = (root + 1) % G.n
        if _reduced_laplacian_det(G, other) != T:
            raise AssertionError("spanning-tree polynomial depends on the chosen root")
    return T, ConstructionTag("SpanningTree", "upper", {"n": G.n, "edges": len(G.edges)})


MAX_DEGREE_EDGES = 20


def degree_poly(G: WeightedGraph) -> tuple[Polynomial, ConstructionTag]:
    """prod over edges of (1 + z_u z_v) (Hurwitz stable)."""
    if len(G.edges) > MAX_DEGREE_EDGES:
        raise ValueError(f"degree polynomial limited to {MAX_DEGREE_EDGES} edges")
    f = Polynomial.constant(1, G.n)
    for u, v, _ in G.edges:
        e = [0] * G.n
        e[u] = e[v] = 1
        f = f * Polynomial._raw(G.n, {(0,) * G.n: ONE, tuple(e): ONE})
    return f, ConstructionTag("DegreeSystem", "right", {"n": G.n, "edges": len(G.edges)})


# matroids

def representable_matroid_poly(A) -> tuple[Polynomial, ConstructionTag]:
    """det(A Z A*) = sum over r-subsets S of |det A[S]|^2 z^S."""
    M = as_matrix(A)
    r = len(M)
    n = len(M[0]) if M else 0
    if r == 0 or r > n:
        raise ValueError(f"need 0 < r <= n, got r={r}, n={n}")
    if n > MAX_MINORS:
        raise ValueError(f"representable-matroid polynomial limited to {MAX_MINORS} columns")
    terms = {}
    for S in itertools.combinations(range(n), r):
        d = det_exact([[M[i][c] for c in S] for i in range(r)])
        if not d.is_zero():
            terms[tuple(1 if k in S else 0 for k in range(n))] = GaussRat(d.norm2())
    if not terms:
        raise ValueError("matrix does not have full row rank")
    return Polynomial._raw(n, terms), ConstructionTag("Representable", "upper", {"r": r, "n": n})


def cauchy_binet_pencil(A) -> list[list[list[GaussRat]]]:
    """The PSD matrices (a_ik conj(a_jk))_ij, one per column k, whose pencil is A Z A*."""
    M = as_matrix(A)
    r, n = len(M), len(M[0])
    return [[[M[i][k] * M[j][k].conjugate() for j in range(r)] for i in range(r)]
            for k in range(n)]


def basis_generating_poly(M: Matroid) -> Polynomial:
    """sum over bases B of z^B. Not tagged: its stability is the open question."""
    from .stability import basis_polynomial

    return basis_polynomial(M)
