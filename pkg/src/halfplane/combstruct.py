"""Axiom checkers for jump systems, delta-matroids and matroid bases.

Everything here is brute force over explicit point sets. Checkers come in
pairs: ``*_violation`` returns the lexicographically first counterexample
(or None) and ``is_*`` returns a bool.

Ground sets are 0-indexed in Python and 1-indexed in JSON.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .gaussian import format_rational, parse_rational


class SupportSet:
    """A finite set of integer vectors of a common length ``dim``."""

    __slots__ = ("dim", "points")

    def __init__(self, dim: int, points: Iterable):
        pts = frozenset(tuple(int(x) for x in p) for p in points)
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have dimension {dim}")
        self.dim = dim
        self.points = pts

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SupportSet":
        """Indicator vectors of 0-indexed subsets of range(n)."""
        pts = []
        for s in sets:
            v = [0] * n
            for x in s:
                v[x] = 1
            pts.append(v)
        return cls(n, pts)

    def sorted(self) -> list:
        return sorted(self.points)

    def is_binary(self) -> bool:
        return all(x in (0, 1) for p in self.points for x in p)

    def as_sets(self) -> list[frozenset]:
        return [frozenset(k for k, x in enumerate(p) if x) for p in self.sorted()]

    def __contains__(self, p):
        return tuple(p) in self.points

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.sorted())

    def __eq__(self, other):
        if not isinstance(other, SupportSet):
            return NotImplemented
        return self.dim == other.dim and self.points == other.points

    def __hash__(self):
        return hash((self.dim, self.points))

    def __repr__(self):
        return f"SupportSet({self.dim}, {self.sorted()})"

    def to_json(self) -> dict:
        return {"dim": self.dim, "points": [list(p) for p in self.sorted()]}

    @classmethod
    def from_json(cls, obj) -> "SupportSet":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            dim, points = obj["dim"], obj["points"]
        except (KeyError, TypeError) as exc:
            raise ValueError("support JSON needs 'dim' and 'points'") from exc
        return cls(dim, points)


# jump systems

def _l1(v) -> int:
    return sum(abs(x) for x in v)


def _unit_steps(n: int):
    # fixed order: +e_0, -e_0, +e_1, -e_1, ...
    for k in range(n):
        for s in (1, -1):
            v = [0] * n
            v[k] = s
            yield tuple(v)


def steps(alpha: Sequence[int], beta: Sequence[int]) -> set:
    """Unit vectors sigma with |alpha + sigma - beta| = |alpha - beta| - 1."""
    if len(alpha) != len(beta):
        raise ValueError("length mismatch")
    out = set()
    for k, (a, b) in enumerate(zip(alpha, beta)):
        if a != b:
            v = [0] * len(alpha)
            v[k] = 1 if b > a else -1
            out.add(tuple(v))
    return out


def _ordered_steps(alpha, beta) -> list:
    return sorted(steps(alpha, beta), reverse=True)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class JumpViolation(NamedTuple):
    alpha: tuple
    beta: tuple
    sigma: tuple


def jump_system_violation(F: SupportSet) -> JumpViolation | None:
    """First (alpha, beta, sigma) breaking the two-step axiom, or None.

    Order: alpha, then beta, lexicographically; sigma as in _ordered_steps.
    For fixed alpha and sigma = s*e_k the admissible betas are those with
    sign(beta_k - alpha_k) = s, so each (alpha, sigma) is checked against
    all betas at once.
    """
    if not F.points:
        raise ValueError("jump-system check needs a non-empty set")
    pts = F.points
    ordered = F.sorted()
    P = np.array(ordered, dtype=np.int64).reshape(len(ordered), F.dim)
    for a_idx, alpha in enumerate(ordered):
        D = np.sign(P - np.array(alpha, dtype=np.int64))
        bad = np.zeros(len(ordered), dtype=bool)
        for k in range(F.dim):
            for s in (1, -1):
                sigma = tuple(s if m == k else 0 for m in range(F.dim))
                mid = _add(alpha, sigma)
                if mid in pts:
                    continue
                cone = D[:, k] == s
                if not cone.any():
                    continue
                E = D.copy()
                # sign(beta - mid) differs from sign(beta - alpha) only in coordinate k
                E[:, k] = np.sign(P[:, k] - mid[k])
                reached = np.zeros(len(ordered), dtype=bool)
                for tau in _unit_steps(F.dim):
                    if _add(mid, tau) in pts:
                        m = next(i for i, t in enumerate(tau) if t)
                        reached |= E[:, m] == tau[m]
                bad |= cone & ~reached
        if bad.any():
            beta = ordered[int(np.argmax(bad))]
            for sigma in _ordered_steps(alpha, beta):
                mid = _add(alpha, sigma)
                if mid not in pts and not any(_add(mid, tau) in pts
                                              for tau in steps(mid, beta)):
                    return JumpViolation(alpha, beta, sigma)
            raise AssertionError("vectorized jump check disagrees with the direct check")
    return None


def is_jump_system(F: SupportSet) -> bool:
    return jump_system_violation(F) is None


def holes_at_most_one(F: Iterable[int]) -> bool:
    """The one-dimensional jump-system test: consecutive gaps are at most 2."""
    pts = sorted(set(F))
    return all(b - a <= 2 for a, b in zip(pts, pts[1:]))


# delta-matroids

class DeltaViolation(NamedTuple):
    A: frozenset
    B: frozenset
    x: int


@dataclass
class DeltaReport:
    exchange_violation: DeltaViolation | None
    unused: list = field(default_factory=list)  # coordinates in no member

    @property
    def exchange_holds(self) -> bool:
        return self.exchange_violation is None

    @property
    def is_delta_matroid(self) -> bool:
        return self.exchange_violation is None and not self.unused


def delta_matroid_report(F: SupportSet) -> DeltaReport:
    """Check symmetric exchange on the ambient ground set range(F.dim).

    Coordinates that no member uses are reported rather than projected away.
    ``y == x`` is allowed, in which case the exchange is A ^ {x}.
    """
    if not F.is_binary():
        bad = next(p for p in F.sorted() if any(x not in (0, 1) for x in p))
        raise ValueError(f"non-binary point {bad} in delta-matroid check")
    if not F.points:
        raise ValueError("delta-matroid check needs a non-empty family")
    members = F.as_sets()
    family = set(members)
    used = frozenset().union(*members)
    unused = [k for k in range(F.dim) if k not in used]
    for A in members:
        for B in members:
            diff = A ^ B
            for x in sorted(diff):
                if not any(A ^ {x, y} in family for y in sorted(diff)):
                    return DeltaReport(DeltaViolation(A, B, x), unused)
    return DeltaReport(None, unused)


def delta_matroid_violation(F: SupportSet) -> DeltaViolation | None:
    return delta_matroid_report(F).exchange_violation


def is_delta_matroid(F: SupportSet, require_cover: bool = True) -> bool:
    """Symmetric exchange, and (by default) every coordinate used by some member."""
    rep = delta_matroid_report(F)
    if require_cover:
        return rep.is_delta_matroid
    return rep.exchange_holds


# matroids

class BasisViolation(NamedTuple):
    A: frozenset
    B: frozenset
    x: int | None  # None means the members differ in size


def matroid_bases_violation(bases: Iterable[Iterable[int]], n: int) -> BasisViolation | None:
    fam = sorted({frozenset(b) for b in bases}, key=lambda s: sorted(s))
    if not fam:
        raise ValueError("basis family must be non-empty")
    for b in fam:
        if any(not 0 <= x < n for x in b):
            raise ValueError(f"element out of range in {sorted(b)}")
    r = len(fam[0])
    for b in fam:
        if len(b) != r:
            return BasisViolation(fam[0], b, None)
    family = set(fam)
    for A in fam:
        for B in fam:
            for x in sorted(A - B):
                if not any((A - {x}) | {y} in family for y in sorted(B - A)):
                    return BasisViolation(A, B, x)
    return None


def is_matroid_bases(bases, n: int) -> bool:
    return matroid_bases_violation(bases, n) is None


@dataclass(frozen=True)
class Matroid:
    """A matroid given by its bases, as 0-indexed frozensets of range(n)."""

    n: int
    bases: frozenset
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "bases", frozenset(frozenset(b) for b in self.bases))
        bad = matroid_bases_violation(self.bases, self.n)
        if bad is not None:
            raise ValueError(f"not a matroid basis family: {bad}")

    @property
    def rank(self) -> int:
        return len(next(iter(self.bases)))

    def sorted_bases(self) -> list[tuple]:
        return sorted(tuple(sorted(b)) for b in self.bases)

    def is_basis(self, s) -> bool:
        return frozenset(s) in self.bases

    def to_json(self) -> dict:
        return {"n": self.n, "bases": [[x + 1 for x in b] for b in self.sorted_bases()]}

    @classmethod
    def from_json(cls, obj) -> "Matroid":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            n, bases = obj["n"], obj["bases"]
        except (KeyError, TypeError) as exc:
            raise ValueError("matroid JSON needs 'n' and 'bases'") from exc
        return cls(n, [frozenset(x - 1 for x in b) for b in bases], obj.get("name", ""))


def uniform_matroid(r: int, n: int) -> Matroid:
    return Matroid(n, [frozenset(c) for c in itertools.combinations(range(n), r)], f"U{r},{n}")


def free_matroid(n: int) -> Matroid:
    return Matroid(n, [frozenset(range(n))], f"free{n}")


def restrict_matroid(M: Matroid, keep: Iterable[int]) -> Matroid:
    """Deletion down to ``keep`` (relabelled 0..k-1), for a coloop-free deletion set."""
    keep = sorted(keep)
    relabel = {x: k for k, x in enumerate(keep)}
    inside = [b for b in M.bases if b <= set(keep)]
    if not inside:
        raise ValueError("deleted elements include a coloop; rank would drop")
    return Matroid(len(keep), [frozenset(relabel[x] for x in b) for b in inside])


# internal zeros

def internal_zero(F: SupportSet) -> tuple | None:
    """Lexicographically first gamma outside F with alpha <= gamma <= beta for some alpha, beta in F."""
    pts = F.points
    best = None
    ordered = F.sorted()
    for alpha in ordered:
        for beta in ordered:
            if alpha == beta or any(a > b for a, b in zip(alpha, beta)):
                continue
            for gamma in itertools.product(*(range(a, b + 1) for a, b in zip(alpha, beta))):
                if gamma not in pts:
                    if best is None or gamma < best:
                        best = gamma
                    break
    return best


def has_internal_zeros(F: SupportSet) -> tuple | None:
    return internal_zero(F)


# graphs

@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph on range(n); edges are (u, v, weight) with u != v.

    Parallel edges are allowed in the edge list; matching-based functions
    merge them by summing weights, tree/forest functions keep them apart.
    """

    n: int
    edges: tuple = ()

    def __post_init__(self):
        clean = []
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            w = Fraction(e[2]) if len(e) > 2 else Fraction(1)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range")
            if w < 0:
                raise ValueError(f"negative weight on edge {(u, v)}")
            clean.append((min(u, v), max(u, v), w))
        object.__setattr__(self, "edges", tuple(clean))

    @classmethod
    def unweighted(cls, n: int, pairs) -> "WeightedGraph":
        return cls(n, tuple((u, v, 1) for u, v in pairs))

    def merged_edges(self) -> list[tuple]:
        acc: dict = {}
        for u, v, w in self.edges:
            acc[(u, v)] = acc.get((u, v), Fraction(0)) + w
        return [(u, v, w) for (u, v), w in sorted(acc.items())]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = {k: set() for k in range(self.n)}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen, stack = {0}, [0]
        while stack:
            x = stack.pop()
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        return len(seen) == self.n

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [{"u": u + 1, "v": v + 1, "w": format_rational(w)}
                                       for u, v, w in self.edges]}

    @classmethod
    def from_json(cls, obj) -> "WeightedGraph":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            n = obj["n"]
            edges = [(e["u"] - 1, e["v"] - 1, parse_rational(e.get("w", "1")))
                     for e in obj["edges"]]
        except (KeyError, TypeError) as exc:
            raise ValueError("graph JSON needs 'n' and 'edges' with 'u', 'v'") from exc
        return cls(n, tuple(edges))


def matchings(G: WeightedGraph):
    """Yield every matching of the merged simple graph as a tuple of edges."""
    edges = [e for e in G.merged_edges()]

    def rec(start, used, chosen):
        yield tuple(chosen)
        for k in range(start, len(edges)):
            u, v, _w = edges[k]
            if u in used or v in used:
                continue
            chosen.append(edges[k])
            yield from rec(k + 1, used | {u, v}, chosen)
            chosen.pop()

    yield from rec(0, frozenset(), [])


def matching_support(G: WeightedGraph) -> SupportSet:
    """Indicator vectors of vertex sets covered exactly by some matching."""
    if G.n > 16:
        raise ValueError("matching enumeration limited to 16 vertices")
    return SupportSet.from_sets(G.n, [{x for u, v, _ in m for x in (u, v)} for m in matchings(G)])


def degree_sequence_system(G: WeightedGraph, max_edges: int = 24) -> SupportSet:
    """All degree vectors of spanning subgraphs (edge subsets) of G."""
    if len(G.edges) > max_edges:
        raise ValueError(f"degree-sequence enumeration limited to {max_edges} edges")
    acc = {(0,) * G.n}
    for u, v, _ in G.edges:
        step = [0] * G.n
        step[u] = step[v] = 1
        acc |= {_add(p, step) for p in acc}
    return SupportSet(G.n, acc)
