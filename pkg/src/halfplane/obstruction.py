"""Certify that a rank-3 matroid is not the support of any polynomial with
the half-plane property.

Write a hypothetical HPP polynomial on the bases as f = sum a(B) z^B with
positive a(B). The pipeline:

1. every dependent 3-set {s, i, j} forces binomial relations
   a(s,i,k) a(s,j,l) = a(s,i,l) a(s,j,k) among the coefficients;
2. each quotient graph G_xy must be connected;
3. each of its edges must be covered by one of those relations, so that
   lambda_xy = a(i,j,x) / a(i,j,y) is independent of the vertex {i,j};
4. the lambdas must be multiplicative, which gives weights v_i = lambda_i1
   with a(B) proportional to prod_{e in B} v_e along basis-exchange paths;
5. rescaling z_e -> z_e / v_e would then make sum z^B stable, so an exact
   witness of instability of the uniform basis polynomial finishes the proof.

Every lambda is a formal symbol: we never see numeric coefficients, only
which ratios the relations force equal. Any step lacking its structural
hypothesis stops the pipeline with an Inconclusive report.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import stability
from .combstruct import Matroid
from .stability import ALL_REALS, Budget, LineWitness, RayleighWitness

NOT_HPP = "NotHPP"
INCONCLUSIVE = "Inconclusive"

FANO_LINES = ((1, 2, 3), (3, 4, 5), (1, 5, 6), (1, 4, 7), (2, 5, 7), (3, 6, 7), (2, 4, 6))


def fano() -> Matroid:
    lines = {frozenset(x - 1 for x in line) for line in FANO_LINES}
    bases = [frozenset(t) for t in itertools.combinations(range(7), 3)
             if frozenset(t) not in lines]
    return Matroid(7, frozenset(bases), "F7")


def _label(s) -> str:
    return "{" + ",".join(str(x + 1) for x in sorted(s)) + "}"


# step 1: relations

@dataclass(frozen=True)
class Relation:
    """a(S+i+k) a(S+j+l) = a(S+i+l) a(S+j+k), forced because S+i+j is dependent."""

    s: int
    i: int
    j: int
    k: int
    l: int

    def sides(self) -> tuple[frozenset, frozenset, frozenset, frozenset]:
        s = self.s
        return (frozenset((s, self.i, self.k)), frozenset((s, self.j, self.l)),
                frozenset((s, self.i, self.l)), frozenset((s, self.j, self.k)))

    def equation(self) -> frozenset:
        A, B, C, D = self.sides()
        return frozenset((frozenset((A, B)), frozenset((C, D))))

    def to_json(self) -> dict:
        A, B, C, D = self.sides()
        return {"S": [self.s + 1], "i": self.i + 1, "j": self.j + 1, "k": self.k + 1,
                "l": self.l + 1, "equation": f"a{_label(A)}*a{_label(B)} = a{_label(C)}*a{_label(D)}"}


@dataclass
class RelationSystem:
    n: int
    relations: list
    equations: frozenset = field(default=frozenset(), repr=False)

    def __post_init__(self):
        self.equations = frozenset(r.equation() for r in self.relations)

    def bases_used(self) -> frozenset:
        return frozenset(b for r in self.relations for b in r.sides())

    def covers(self, A, B, C, D) -> bool:
        """Is a(A) a(B) = a(C) a(D) one of the derived equations?"""
        key = frozenset((frozenset((frozenset(A), frozenset(B))),
                         frozenset((frozenset(C), frozenset(D)))))
        return key in self.equations

    def to_json(self) -> dict:
        return {"n": self.n, "count": len(self.relations),
                "relations": [r.to_json() for r in self.relations]}


def _require_rank3(M: Matroid):
    if M.rank != 3:
        raise ValueError(f"the obstruction pipeline needs a rank-3 matroid, got rank {M.rank}")


def key_relations(M: Matroid) -> RelationSystem:
    _require_rank3(M)
    out = []
    for s in range(M.n):
        others = [x for x in range(M.n) if x != s]
        for i, j in itertools.combinations(others, 2):
            if M.is_basis((s, i, j)):
                continue
            rest = [x for x in others if x not in (i, j)]
            for k, l in itertools.combinations(rest, 2):
                r = Relation(s, i, j, k, l)
                if all(M.is_basis(b) for b in r.sides()):
                    out.append(r)
    system = RelationSystem(M.n, out)
    assert all(M.is_basis(b) for b in system.bases_used())
    return system


# step 2: quotient graphs

@dataclass(frozen=True)
class QuotientGraph:
    pair: tuple
    vertices: tuple  # sorted pairs (i, j), i < j
    edges: tuple  # pairs of vertex indices
    connected: bool

    def to_json(self) -> dict:
        return {"pair": [self.pair[0] + 1, self.pair[1] + 1],
                "vertices": [[i + 1, j + 1] for i, j in self.vertices],
                "edges": len(self.edges), "connected": self.connected}


def _connected(nv: int, edges) -> bool:
    if nv == 0:
        return False
    adj = [[] for _ in range(nv)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == nv


def quotient_graph(M: Matroid, x: int, y: int) -> QuotientGraph:
    """Vertices {i,j} with {i,j,x} and {i,j,y} both bases; edges join intersecting pairs.

    An empty graph counts as disconnected: there is nothing to define lambda_xy on.
    """
    if x == y:
        raise ValueError("quotient graph needs x != y")
    verts = tuple(p for p in itertools.combinations(range(M.n), 2)
                  if M.is_basis((*p, x)) and M.is_basis((*p, y)))
    edges = tuple((a, b) for a, b in itertools.combinations(range(len(verts)), 2)
                  if set(verts[a]) & set(verts[b]))
    return QuotientGraph((x, y), verts, edges, _connected(len(verts), edges))


def quotient_graphs(M: Matroid) -> list[QuotientGraph]:
    return [quotient_graph(M, x, y) for x, y in itertools.combinations(range(M.n), 2)]


# step 3: lambda consistency

@dataclass
class LambdaMap:
    """lambda_xy, for x < y, is the formal quotient a(rep + x) / a(rep + y)."""

    representative: dict  # (x, y) -> (i, j)
    cases: dict  # case name -> number of edges it covered

    def to_json(self) -> dict:
        return {"representatives": {f"{x + 1},{y + 1}": [i + 1, j + 1]
                                    for (x, y), (i, j) in sorted(self.representative.items())},
                "cases": self.cases}


@dataclass
class Failure:
    step: str
    reason: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"step": self.step, "reason": self.reason, "detail": self.detail}


def _edge_case(M: Matroid, rel: RelationSystem, x, y, p, q) -> str | None:
    # p = {i, j}, q = {i, k}; need a(ijx)/a(ijy) = a(ikx)/a(iky),
    # i.e. a(ijx) a(iky) = a(ijy) a(ikx).
    (i,) = set(p) & set(q)
    (j,) = set(p) - {i}
    (k,) = set(q) - {i}
    if not rel.covers((i, j, x), (i, k, y), (i, j, y), (i, k, x)):
        return None
    if not M.is_basis((i, j, k)):
        return "ijk-dependent"
    if not M.is_basis((i, x, y)):
        return "ixy-dependent"
    return "other"


def lambda_consistency(M: Matroid, relations: RelationSystem,
                       graphs: list[QuotientGraph] | None = None
                       ) -> tuple[LambdaMap | None, Failure | None]:
    if graphs is None:
        graphs = quotient_graphs(M)
    for G in graphs:
        if not G.connected:
            raise ValueError(f"quotient graph G{_label(G.pair)} is not connected")
    cases: dict = {}
    rep = {}
    for G in graphs:
        x, y = G.pair
        for a, b in G.edges:
            case = _edge_case(M, relations, x, y, G.vertices[a], G.vertices[b])
            if case is None:
                return None, Failure("lambda_consistency", "edge not covered by any relation",
                                     {"pair": [x + 1, y + 1],
                                      "edge": [[v + 1 for v in G.vertices[a]],
                                               [v + 1 for v in G.vertices[b]]]})
            cases[case] = cases.get(case, 0) + 1
        rep[(x, y)] = G.vertices[0]
    return LambdaMap(rep, cases), None


# step 4: multiplicativity and weights

@dataclass
class WeightFactorization:
    """a(B) = C * prod_{e in B} v_e with v_e = lambda_{e,1} and v_1 = 1."""

    n: int
    triples_direct: int
    triples_routed: int
    exchange_diameter: int
    bases_reached: int

    def weights(self) -> list[str]:
        return ["1"] + [f"lambda_{e + 1},1" for e in range(1, self.n)]

    def to_json(self) -> dict:
        return {"weights": self.weights(), "normalization": "v_1 = 1",
                "triples_direct": self.triples_direct, "triples_routed": self.triples_routed,
                "exchange_diameter": self.exchange_diameter, "bases_reached": self.bases_reached}


def _common_pair(M: Matroid, triple) -> tuple | None:
    for p in itertools.combinations(range(M.n), 2):
        if all(M.is_basis((*p, t)) for t in triple):
            return p
    return None


def _exchange_distances(M: Matroid, start: frozenset) -> dict:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        A = queue.popleft()
        for a in A:
            for b in range(M.n):
                if b in A:
                    continue
                B = (A - {a}) | {b}
                if B in M.bases and B not in dist:
                    dist[B] = dist[A] + 1
                    queue.append(B)
    return dist


def weight_factorization(M: Matroid, lam: LambdaMap
                         ) -> tuple[WeightFactorization | None, Failure | None]:
    # lambda_xy * lambda_yz * lambda_zx = 1 is symmetric in the triple, so
    # unordered triples suffice.
    direct = {frozenset(t) for t in itertools.combinations(range(M.n), 3)
              if _common_pair(M, t) is not None}
    routed = 0
    for t in itertools.combinations(range(M.n), 3):
        if frozenset(t) in direct:
            continue
        x, y, z = t
        via = next((u for u in range(M.n) if u not in t
                    and frozenset((x, u, z)) in direct
                    and frozenset((x, y, u)) in direct
                    and frozenset((u, y, z)) in direct), None)
        if via is None:
            return None, Failure("weight_factorization", "multiplicativity not derivable",
                                 {"triple": [v + 1 for v in t]})
        routed += 1
    for x, y in itertools.combinations(range(M.n), 2):
        if (x, y) not in lam.representative:
            return None, Failure("weight_factorization", "lambda undefined",
                                 {"pair": [x + 1, y + 1]})
    # every exchange step A -> B = A - a + b has a(A)/a(B) = lambda_ab = v_a/v_b,
    # since A - a lies in G_ab; products telescope along any path.
    bases = M.sorted_bases()
    diameter = 0
    for A in bases:
        dist = _exchange_distances(M, frozenset(A))
        if len(dist) != len(M.bases):
            return None, Failure("weight_factorization", "basis-exchange graph disconnected",
                                 {"from": [v + 1 for v in A]})
        diameter = max(diameter, max(dist.values()))
    return WeightFactorization(M.n, len(direct), routed, diameter, len(M.bases)), None


# independent check: the relations force a(B) = C prod v_e

def _rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c] / p
                rows[r] = [u - f * v for u, v in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def relations_force_factorization(M: Matroid, relations: RelationSystem) -> bool:
    """Linear algebra on log-coefficients.

    Taking logs, each relation is a linear equation on the vector
    (log a(B))_B. The solutions of the form log C + sum_{e in B} log v_e always
    satisfy every relation; they are all the solutions iff
    rank(relations) = |bases| - rank(element incidence).
    """
    bases = M.sorted_bases()
    col = {frozenset(b): k for k, b in enumerate(bases)}
    rows = []
    for r in relations.relations:
        row = [Fraction(0)] * len(bases)
        A, B, C, D = r.sides()
        row[col[A]] += 1
        row[col[B]] += 1
        row[col[C]] -= 1
        row[col[D]] -= 1
        rows.append(row)
    incidence = [[Fraction(1 if e in b else 0) for b in bases] for e in range(M.n)]
    relation_rank = _rank(rows) if rows else 0
    return relation_rank == len(bases) - _rank(incidence)


# step 5: the uniform polynomial

def refute_uniform(M: Matroid, budget: Budget = Budget(), seed: int = 0,
                   line_trials: int = 500):
    """An exactly re-validated instability witness for sum z^B, or None."""
    f = stability.basis_polynomial(M)
    report = stability.matroid_rayleigh_check(M, ALL_REALS, budget, seed, stop_at_first=True)
    for p in report.refuted():
        if p.witness.verify(f):
            return p.witness
    w = stability.line_falsify_stability(f, line_trials, seed)
    if w is not None and w.verify(f):
        return w
    return None


# the pipeline

@dataclass
class ObstructionReport:
    matroid: Matroid
    status: str
    chain: list = field(default_factory=list)  # (step, detail) pairs that succeeded
    failure: Failure | None = None
    relations: RelationSystem | None = None
    graphs: list = field(default_factory=list)
    lambdas: LambdaMap | None = None
    factorization: WeightFactorization | None = None
    witness: RayleighWitness | LineWitness | None = None

    def revalidate(self) -> bool:
        """Recheck every certificate behind a NotHPP verdict from scratch."""
        if self.status != NOT_HPP:
            return False
        M = self.matroid
        rel = key_relations(M)
        if rel.equations != self.relations.equations or not rel.relations:
            return False
        graphs = quotient_graphs(M)
        if not all(G.connected for G in graphs):
            return False
        lam, fail = lambda_consistency(M, rel, graphs)
        if lam is None:
            return False
        wf, fail = weight_factorization(M, lam)
        if wf is None or not relations_force_factorization(M, rel):
            return False
        return self.witness is not None and self.witness.verify(stability.basis_polynomial(M))

    def to_json(self) -> dict:
        return {
            "matroid": self.matroid.to_json(),
            "status": self.status,
            "chain": [{"step": s, **d} for s, d in self.chain],
            "failure": None if self.failure is None else self.failure.to_json(),
            "quotient_graphs": [G.to_json() for G in self.graphs],
            "lambda": None if self.lambdas is None else self.lambdas.to_json(),
            "factorization": None if self.factorization is None else self.factorization.to_json(),
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def hpp_obstruction(M: Matroid, budget: Budget = Budget(), seed: int = 0) -> ObstructionReport:
    _require_rank3(M)
    report = ObstructionReport(M, INCONCLUSIVE)

    def stop(failure: Failure) -> ObstructionReport:
        report.failure = failure
        return report

    rel = key_relations(M)
    report.relations = rel
    if not rel.relations:
        return stop(Failure("key_relations", "no dependent 3-set forces a relation"))
    report.chain.append(("key_relations", {"relations": len(rel.relations)}))

    graphs = quotient_graphs(M)
    report.graphs = graphs
    bad = next((G for G in graphs if not G.connected), None)
    if bad is not None:
        return stop(Failure("quotient_graphs", "disconnected or empty quotient graph",
                            {"pair": [bad.pair[0] + 1, bad.pair[1] + 1]}))
    report.chain.append(("quotient_graphs", {"graphs": len(graphs), "connected": len(graphs)}))

    lam, fail = lambda_consistency(M, rel, graphs)
    if lam is None:
        return stop(fail)
    report.lambdas = lam
    report.chain.append(("lambda_consistency", {"pairs": len(lam.representative)}))

    wf, fail = weight_factorization(M, lam)
    if wf is None:
        return stop(fail)
    if not relations_force_factorization(M, rel):
        raise AssertionError("chain derived a factorization the relations do not force")
    report.factorization = wf
    report.chain.append(("weight_factorization", {"bases": wf.bases_reached,
                                                  "linear_check": True}))

    w = refute_uniform(M, budget, seed)
    if w is None:
        return stop(Failure("refute_uniform", "no instability witness within budget"))
    report.witness = w
    report.chain.append(("refute_uniform", {"witness": w.to_json()["kind"]}))
    report.status = NOT_HPP
    return report
