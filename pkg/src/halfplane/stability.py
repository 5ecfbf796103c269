"""Stability decisions and falsifiers for multivariate polynomials.

Verdicts are three-valued. ``CertifiedStable`` is only returned by an exact
procedure, ``RefutedWithWitness`` only with a witness that has been
re-checked in exact arithmetic, and everything else is ``Unknown``.

All sampling is driven by numpy ``SeedSequence`` objects derived from an
integer seed, so a verdict is reproducible from (input, budget, seed).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import realroot
from .combstruct import Matroid, jump_system_violation
from .gaussian import I, ONE, format_rational
from .polynomial import (
    Polynomial,
    evaluate,
    evaluate_real,
    is_multiaffine,
    partial_derivative,
    polarize,
    restrict_line_coeffs,
    scale_variables,
    support,
)

CERTIFIED = "CertifiedStable"
REFUTED = "RefutedWithWitness"
UNKNOWN = "Unknown"

METHODS = ("univariate-hb", "bivariate-determinant", "multiaffine-delta-exact", "by-construction")

GRID_REALS = (Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(0),
              Fraction(1, 2), Fraction(1), Fraction(2))
GRID_POSITIVE = (Fraction(1, 2), Fraction(1), Fraction(2))
MAX_GRID_VARS = 8

ALL_REALS = "AllReals"
POSITIVE_ORTHANT = "PositiveOrthant"


@dataclass(frozen=True)
class Budget:
    grid: bool = True
    samples: int = 10_000
    descent_iters: int = 50

    def to_json(self) -> dict:
        return asdict(self)


def _seed_sequence(seed, *path) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(seed), *[int(p) for p in path]])


def _fmt_point(x) -> list[str]:
    return [format_rational(Fraction(v)) for v in x]


# witnesses

@dataclass(frozen=True)
class RayleighWitness:
    """A rational point where Delta_ij of ``target`` is negative."""

    i: int
    j: int
    point: tuple
    value: Fraction
    target: str = "f"  # "f", "polarized" or "augmented"

    def verify(self, g: Polynomial) -> bool:
        return evaluate_real(rayleigh_difference(g, self.i, self.j), self.point) < 0

    def to_json(self) -> dict:
        return {"kind": "rayleigh", "i": self.i + 1, "j": self.j + 1,
                "point": _fmt_point(self.point), "value": format_rational(self.value),
                "target": self.target}


@dataclass(frozen=True)
class LineWitness:
    """A positively directed real line on which f is not real-rooted.

    ``restriction`` holds the coefficients of t -> f(base + t*direction),
    lowest degree first; an empty list means f vanishes identically on the
    line and hence at base + i*direction.
    """

    base: tuple
    direction: tuple
    restriction: tuple

    def verify(self, f: Polynomial) -> bool:
        if any(d <= 0 for d in self.direction):
            return False
        re, im = restrict_line_coeffs(f, self.base, self.direction)
        re, im = realroot.trim(re), realroot.trim(im)
        if im:
            return False
        return not re or not realroot.is_real_rooted(re)

    def to_json(self) -> dict:
        return {"kind": "line", "base": _fmt_point(self.base),
                "direction": _fmt_point(self.direction),
                "restriction": _fmt_point(self.restriction)}


@dataclass(frozen=True)
class SupportWitness:
    """The support is not a jump system, so no half-plane is zero-free."""

    alpha: tuple
    beta: tuple
    sigma: tuple

    def verify(self, f: Polynomial) -> bool:
        pts = support(f).points
        a, b, s = self.alpha, self.beta, self.sigma
        if a not in pts or b not in pts:
            return False
        mid = tuple(x + y for x, y in zip(a, s))
        from .combstruct import steps
        if s not in steps(a, b) or mid in pts:
            return False
        return not any(tuple(x + y for x, y in zip(mid, t)) in pts for t in steps(mid, b))

    def to_json(self) -> dict:
        return {"kind": "support", "alpha": list(self.alpha), "beta": list(self.beta),
                "sigma": list(self.sigma)}


@dataclass(frozen=True)
class RootWitness:
    """A numerical zero of a univariate f in the open upper half-plane."""

    root: complex
    residual: float
    tolerance: float

    def verify(self, f: Polynomial) -> bool:
        return self.root.imag > 0 and abs(evaluate(f, [self.root])) <= self.tolerance

    def to_json(self) -> dict:
        return {"kind": "root", "re": self.root.real, "im": self.root.imag,
                "residual": self.residual, "tolerance": self.tolerance}


@dataclass
class StabilityVerdict:
    status: str
    method: str | None = None
    witness: object = None
    seed: int = 0
    budget: Budget = field(default_factory=Budget)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status == CERTIFIED and self.method not in METHODS:
            raise ValueError(f"certified verdicts need a method tag from {METHODS}")
        if self.status == REFUTED and self.witness is None:
            raise ValueError("a refutation needs a witness")

    @property
    def stable(self) -> bool | None:
        return {CERTIFIED: True, REFUTED: False}.get(self.status)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "method": self.method,
            "witness": None if self.witness is None else self.witness.to_json(),
            "seed": self.seed,
            "budget": self.budget.to_json(),
            "details": self.details,
        }


# Rayleigh differences

def _require_real(f: Polynomial):
    if not f.is_real():
        raise ValueError("this operation needs real coefficients")


def rayleigh_difference(f: Polynomial, i: int, j: int) -> Polynomial:
    """d_i f * d_j f - d_i d_j f * f."""
    _require_real(f)
    fi = partial_derivative(f, i)
    fj = partial_derivative(f, j)
    fij = partial_derivative(fi, j)
    out = fi * fj - fij * f
    if is_multiaffine(f):
        for e in out.terms:
            if e[i] or e[j]:
                raise AssertionError("Rayleigh difference of a multi-affine polynomial "
                                     f"depends on z{i + 1} or z{j + 1}")
    return out


def bivariate_determinant(f: Polynomial) -> Fraction:
    """a00*a11 - a01*a10 for a real multi-affine f in two variables."""
    a = {e: f.coefficient(e).re for e in ((0, 0), (0, 1), (1, 0), (1, 1))}
    return a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)]


# exact nonnegativity certificates

def _psd(Q: list[list[Fraction]]) -> bool:
    # symmetric elimination; a zero pivot forces a zero row
    A = [row[:] for row in Q]
    n = len(A)
    for k in range(n):
        p = A[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(A[k][m] != 0 for m in range(k + 1, n)):
                return False
            continue
        for r in range(k + 1, n):
            if A[r][k]:
                f = A[r][k] / p
                for c in range(k + 1, n):
                    A[r][c] -= f * A[k][c]
    return True


def _gram_matrix(g: Polynomial, vars_: list[int]) -> list[list[Fraction]]:
    pos = {v: k + 1 for k, v in enumerate(vars_)}
    n = len(vars_) + 1
    Q = [[Fraction(0)] * n for _ in range(n)]
    for e, c in g.terms.items():
        idx = [pos[v] for v in vars_ for _ in range(e[v])]
        if len(idx) == 0:
            Q[0][0] += c.re
        elif len(idx) == 1:
            Q[0][idx[0]] += c.re / 2
            Q[idx[0]][0] += c.re / 2
        elif idx[0] == idx[1]:
            Q[idx[0]][idx[0]] += c.re
        else:
            Q[idx[0]][idx[1]] += c.re / 2
            Q[idx[1]][idx[0]] += c.re / 2
    return Q


def certify_nonnegative(g: Polynomial, domain: str = ALL_REALS) -> str | None:
    """Name of an exact certificate that g >= 0 on the domain, or None.

    On all of R^n: g is zero, a nonnegative combination of even monomials, or
    of degree <= 2 with a PSD Gram matrix (exact for quadratics). On the
    positive orthant: all coefficients nonnegative.
    """
    _require_real(g)
    if g.is_zero():
        return "zero"
    coeffs_ok = all(c.re >= 0 for c in g.terms.values())
    if domain == POSITIVE_ORTHANT:
        return "nonnegative-coefficients" if coeffs_ok else None
    if coeffs_ok and all(p % 2 == 0 for e in g.terms for p in e):
        return "even-monomials"
    if g.total_degree() <= 2 and _psd(_gram_matrix(g, g.used_variables())):
        return "psd-quadratic"
    return None


# nonnegativity falsifier

class _FloatPoly:
    def __init__(self, g: Polynomial, vars_: list[int]):
        items = g.sorted_terms()
        self.E = np.array([[e[v] for v in vars_] for e, _ in items], dtype=float).reshape(
            len(items), len(vars_))
        self.c = np.array([float(c.re) for _, c in items])
        self.chunk = max(1, 4_000_000 // max(1, self.E.size))

    def __call__(self, X: np.ndarray) -> np.ndarray:
        out = np.empty(len(X))
        with np.errstate(all="ignore"):
            for s in range(0, len(X), self.chunk):
                Xc = X[s:s + self.chunk]
                mons = np.prod(Xc[:, None, :] ** self.E[None, :, :], axis=2)
                out[s:s + self.chunk] = mons @ self.c
        return out


@dataclass
class SearchResult:
    witness: tuple | None
    value: Fraction | None
    worst: float  # most negative float value seen
    evaluated: int


class _Search:
    def __init__(self, g: Polynomial, budget: Budget, seed, positive: bool):
        self.g = g
        self.budget = budget
        self.positive = positive
        self.vars = g.used_variables()
        self.k = len(self.vars)
        self.fill = Fraction(1) if positive else Fraction(0)
        self.rng = np.random.default_rng(seed if isinstance(seed, np.random.SeedSequence)
                                         else _seed_sequence(seed))
        self.fpoly = _FloatPoly(g, self.vars) if self.k else None
        self.worst = math.inf
        self.best_point = None
        self.evaluated = 0

    def full(self, x) -> tuple:
        pt = [self.fill] * self.g.nvars
        for v, val in zip(self.vars, x):
            pt[v] = Fraction(val)
        return tuple(pt)

    def confirm(self, rational_points) -> tuple | None:
        for x in rational_points:
            pt = self.full(x)
            val = evaluate_real(self.g, pt)
            if val < 0:
                return pt, val
        return None

    def scan(self, X: np.ndarray, to_rational) -> tuple | None:
        vals = self.fpoly(X)
        self.evaluated += len(X)
        finite = np.where(np.isfinite(vals), vals, np.inf)
        m = int(np.argmin(finite))
        if finite[m] < self.worst:
            self.worst = float(finite[m])
            self.best_point = X[m].copy()
        neg = np.nonzero(finite < 0)[0]
        if len(neg) == 0:
            return None
        order = neg[np.lexsort((neg, finite[neg]))][:64]
        return self.confirm(to_rational(r) for r in order)

    def run(self) -> SearchResult:
        if self.k == 0:
            c = self.g.coefficient((0,) * self.g.nvars).re
            if c < 0:
                return SearchResult(self.full(()), c, float(c), 1)
            return SearchResult(None, None, float(c), 1)
        hit = None
        if self.budget.grid and self.k <= MAX_GRID_VARS:
            hit = self.grid()
        if hit is None and self.budget.samples > 0:
            hit = self.random()
        if hit is None and self.budget.descent_iters > 0 and self.best_point is not None:
            hit = self.descend()
        if hit is None:
            return SearchResult(None, None, self.worst, self.evaluated)
        return SearchResult(hit[0], hit[1], self.worst, self.evaluated)

    def grid(self):
        vals = GRID_POSITIVE if self.positive else GRID_REALS
        fvals = np.array([float(v) for v in vals])
        base = len(vals)
        total = base ** self.k
        step = 200_000
        for start in range(0, total, step):
            idx = np.arange(start, min(total, start + step))
            digits = np.stack([(idx // base ** p) % base for p in range(self.k)], axis=1)
            X = fvals[digits]
            hit = self.scan(X, lambda r: [vals[d] for d in digits[r]])
            if hit:
                return hit
        return None

    def random(self):
        n = self.budget.samples
        if self.positive:
            num = self.rng.integers(1, 33, size=(n, self.k))
        else:
            num = self.rng.integers(-16, 17, size=(n, self.k))
        den = self.rng.integers(1, 9, size=(n, self.k))
        X = num / den
        return self.scan(X, lambda r: [Fraction(int(p), int(q)) for p, q in zip(num[r], den[r])])

    def descend(self):
        x = np.array(self.best_point, dtype=float)
        fx = float(self.fpoly(x[None, :])[0])
        h = 0.5
        lo = 1e-6 if self.positive else -np.inf
        for _ in range(self.budget.descent_iters):
            improved = False
            for a in range(self.k):
                for s in (h, -h):
                    y = x.copy()
                    y[a] = max(lo, y[a] + s)
                    fy = float(self.fpoly(y[None, :])[0])
                    self.evaluated += 1
                    if fy < fx:
                        x, fx, improved = y, fy, True
            if not improved:
                h /= 2
        self.worst = min(self.worst, fx)
        cands = []
        for den in (2 ** 4, 2 ** 10, 2 ** 20):
            cand = [Fraction(v).limit_denominator(den) for v in x]
            if self.positive:
                cand = [c if c > 0 else Fraction(1, den) for c in cand]
            cands.append(cand)
        return self.confirm(cands)


def search_negative(g: Polynomial, budget: Budget = Budget(), seed=0,
                    domain: str = ALL_REALS) -> SearchResult:
    """Grid, random and descent search for a rational point with g < 0."""
    _require_real(g)
    if g.is_zero():
        return SearchResult(None, None, 0.0, 0)
    k = len(g.used_variables())
    if budget.grid and k > MAX_GRID_VARS:
        budget = Budget(False, budget.samples, budget.descent_iters)
    return _Search(g, budget, seed, domain == POSITIVE_ORTHANT).run()


def falsify_nonnegativity(g: Polynomial, budget: Budget = Budget(), seed=0,
                          domain: str = ALL_REALS) -> tuple | None:
    """A rational point x with g(x) < 0 (checked exactly), or None."""
    return search_negative(g, budget, seed, domain).witness


# the multi-affine criterion

def check_multiaffine_real_stability(f: Polynomial, budget: Budget = Budget(),
                                     seed: int = 0) -> StabilityVerdict:
    if f.is_zero():
        raise ValueError("the zero polynomial is not stable")
    _require_real(f)
    if not is_multiaffine(f):
        raise ValueError("polynomial is not multi-affine")
    n = f.nvars
    if n <= 1:
        if n == 1 and not realroot.is_real_rooted(_univariate(f)):
            raise AssertionError("a real affine polynomial is always real-rooted")
        return StabilityVerdict(CERTIFIED, "univariate-hb", seed=seed, budget=budget)
    for i in range(n):
        if rayleigh_difference(f, i, i) != partial_derivative(f, i) ** 2:
            raise AssertionError("diagonal Rayleigh identity failed")
    if n == 2:
        det = bivariate_determinant(f)
        if det <= 0:
            return StabilityVerdict(CERTIFIED, "bivariate-determinant", seed=seed,
                                    budget=budget, details={"determinant": format_rational(det)})
        w = RayleighWitness(0, 1, (Fraction(0), Fraction(0)), -det)
        assert w.verify(f)
        return StabilityVerdict(REFUTED, "bivariate-determinant", w, seed, budget,
                                {"determinant": format_rational(det)})
    pending = []
    certs = {}
    for i, j in itertools.combinations(range(n), 2):
        d = rayleigh_difference(f, i, j)
        cert = certify_nonnegative(d)
        if cert is None:
            pending.append((i, j, d))
        else:
            certs[f"{i + 1},{j + 1}"] = cert
    if not pending:
        return StabilityVerdict(CERTIFIED, "multiaffine-delta-exact", seed=seed,
                                budget=budget, details={"certificates": certs})
    for i, j, d in pending:
        res = search_negative(d, budget, _seed_sequence(seed, i, j))
        if res.witness is not None:
            w = RayleighWitness(i, j, res.witness, res.value)
            assert w.verify(f), "falsifier returned an invalid witness"
            return StabilityVerdict(REFUTED, "multiaffine-delta-exact", w, seed, budget)
    return StabilityVerdict(UNKNOWN, None, seed=seed, budget=budget,
                            details={"undecided_pairs": [[i + 1, j + 1] for i, j, _ in pending]})


def _univariate(f: Polynomial) -> list[Fraction]:
    return realroot.as_real_univariate(f)


# line falsifier

def _random_lines(rng, n: int, trials: int):
    bn = rng.integers(-8, 9, size=(trials, n))
    bd = rng.integers(1, 5, size=(trials, n))
    dn = rng.integers(1, 9, size=(trials, n))
    dd = rng.integers(1, 5, size=(trials, n))
    for t in range(trials):
        yield ([Fraction(int(p), int(q)) for p, q in zip(bn[t], bd[t])],
               [Fraction(int(p), int(q)) for p, q in zip(dn[t], dd[t])])


def line_falsify_stability(f: Polynomial, trials: int = 500, seed=0) -> LineWitness | None:
    """Search random rational lines base + t*direction (direction > 0) for a
    restriction that is not real-rooted."""
    if f.is_zero():
        raise ValueError("the zero polynomial is not stable")
    _require_real(f)
    if f.total_degree() <= 1:
        return None
    rng = np.random.default_rng(seed if isinstance(seed, np.random.SeedSequence)
                                else _seed_sequence(seed, 7))
    for base, direction in _random_lines(rng, f.nvars, trials):
        re, _ = restrict_line_coeffs(f, base, direction)
        re = realroot.trim(re)
        if not re or not realroot.is_real_rooted(re):
            w = LineWitness(tuple(base), tuple(direction), tuple(re))
            assert w.verify(f)
            return w
    return None


# half-plane rotation and supports

def rotate_halfplane(f: Polynomial, quarter_turns: int) -> Polynomial:
    """Substitute z_k <- i^(-q) * z_k in every variable.

    With q = -1 (z -> i*z) an upper-half-plane stable f becomes Hurwitz
    stable; q = 1 goes the other way.
    """
    factor = ONE
    for _ in range((-quarter_turns) % 4):
        factor = factor * I
    return scale_variables(f, [factor] * f.nvars)


def support_theorem_check(f: Polynomial, known_stable: bool | None = None) -> bool:
    """Is supp(f) a jump system? Raises if ``known_stable`` and it is not."""
    if f.is_zero():
        raise ValueError("zero polynomial has empty support")
    viol = jump_system_violation(support(f))
    if viol is not None and known_stable:
        raise AssertionError(f"support of a stable polynomial is not a jump system: {viol}")
    return viol is None


# general dispatcher

def augment(f: Polynomial) -> Polynomial:
    """h + z_{n+1} g for f = h + i g; real, and real stable iff f is stable."""
    n = f.nvars
    h, g = f.real_part(), f.imag_part()
    terms = {e + (0,): c for e, c in h.terms.items()}
    for e, c in g.terms.items():
        terms[e + (1,)] = c
    return Polynomial(n + 1, terms)


def _upper_root_witness(f: Polynomial) -> RootWitness | None:
    deg = f.total_degree()
    coeffs = [complex(f.coefficient((k,))) for k in range(deg, -1, -1)]
    roots = np.roots(coeffs)
    if len(roots) == 0:
        return None
    r = complex(roots[np.argmax(roots.imag)])
    if r.imag <= 0:
        return None
    scale = sum(abs(c) for c in coeffs) * max(1.0, abs(r)) ** deg
    res = abs(evaluate(f, [r]))
    return RootWitness(r, res, 1e-8 * scale)


def check_stability(f: Polynomial, budget: Budget = Budget(), seed: int = 0) -> StabilityVerdict:
    """Upper-half-plane stability of an arbitrary nonzero polynomial.

    Order: support jump-system test, exact Hermite-Biehler for one variable,
    otherwise reduce to a real multi-affine polynomial (augment complex
    inputs with an extra variable, then polarize) and apply the Rayleigh
    criterion.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial is not stable")
    viol = jump_system_violation(support(f))
    if viol is not None:
        w = SupportWitness(*viol)
        assert w.verify(f)
        return StabilityVerdict(REFUTED, None, w, seed, budget, {"reduction": "support"})
    if f.nvars == 1:
        h = realroot.as_real_univariate(f.real_part())
        g = realroot.as_real_univariate(f.imag_part())
        if realroot.hermite_biehler_stable(h, g):
            return StabilityVerdict(CERTIFIED, "univariate-hb", seed=seed, budget=budget)
        w = _upper_root_witness(f)
        if w is not None and w.verify(f):
            return StabilityVerdict(REFUTED, "univariate-hb", w, seed, budget)
        # exact decision stands even if the float root is too inaccurate to report
        return StabilityVerdict(UNKNOWN, None, seed=seed, budget=budget,
                                details={"hermite_biehler": "unstable", "root_witness": None})
    chain = []
    target = f
    if not f.is_real():
        target = augment(target)
        chain.append("augmented")
    if not is_multiaffine(target):
        target = polarize(target).base
        chain.append("polarized")
    verdict = check_multiaffine_real_stability(target, budget, seed)
    if chain and isinstance(verdict.witness, RayleighWitness):
        w = verdict.witness
        verdict.witness = RayleighWitness(w.i, w.j, w.point, w.value, chain[-1])
    verdict.details["reduction"] = chain
    if chain:
        verdict.details["target"] = target.to_json()
    return verdict


# matroids

@dataclass
class PairResult:
    i: int
    j: int
    status: str
    method: str | None
    witness: RayleighWitness | None
    worst: float | None

    def to_json(self) -> dict:
        return {"pair": [self.i + 1, self.j + 1], "status": self.status, "method": self.method,
                "witness": None if self.witness is None else self.witness.to_json(),
                "worst_sampled": self.worst}


@dataclass
class RayleighReport:
    matroid: str
    mode: str
    pairs: list
    seed: int = 0
    budget: Budget = field(default_factory=Budget)

    @property
    def verdict(self) -> bool | None:
        """True if every pair is certified, False if some pair is refuted."""
        if any(p.status == REFUTED for p in self.pairs):
            return False
        if all(p.status == CERTIFIED for p in self.pairs):
            return True
        return None

    def refuted(self) -> list[PairResult]:
        return [p for p in self.pairs if p.status == REFUTED]

    def to_json(self) -> dict:
        return {"matroid": self.matroid, "mode": self.mode, "verdict": self.verdict,
                "seed": self.seed, "budget": self.budget.to_json(),
                "pairs": [p.to_json() for p in self.pairs]}


def basis_polynomial(M: Matroid) -> Polynomial:
    terms = {}
    for b in M.bases:
        terms[tuple(1 if k in b else 0 for k in range(M.n))] = ONE
    return Polynomial._raw(M.n, terms)


def matroid_rayleigh_check(M: Matroid, mode: str = ALL_REALS, budget: Budget = Budget(),
                           seed: int = 0, stop_at_first: bool = False) -> RayleighReport:
    """Per-pair sign analysis of Delta_ij of the basis generating polynomial."""
    if mode not in (ALL_REALS, POSITIVE_ORTHANT):
        raise ValueError(f"unknown mode {mode!r}")
    f = basis_polynomial(M)
    pairs = []
    for i, j in itertools.combinations(range(M.n), 2):
        d = rayleigh_difference(f, i, j)
        cert = certify_nonnegative(d, mode)
        if cert is not None:
            pairs.append(PairResult(i, j, CERTIFIED, cert, None, None))
            continue
        if stop_at_first and any(p.status == REFUTED for p in pairs):
            pairs.append(PairResult(i, j, UNKNOWN, None, None, None))
            continue
        res = search_negative(d, budget, _seed_sequence(seed, i, j), mode)
        if res.witness is not None:
            w = RayleighWitness(i, j, res.witness, res.value)
            assert w.verify(f)
            pairs.append(PairResult(i, j, REFUTED, None, w, res.worst))
        else:
            pairs.append(PairResult(i, j, UNKNOWN, None, None, res.worst))
    return RayleighReport(M.name or f"matroid(n={M.n})", mode, pairs, seed, budget)


# real polynomials with the same support

def realify(f: Polynomial, alphas: Sequence | None = None) -> tuple[Polynomial, Fraction]:
    """h + alpha*g for f = h + i*g, with alpha the first choice keeping supp(f)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    h, g = f.real_part(), f.imag_part()
    target = set(f.terms)
    if alphas is None:
        alphas = range(1, len(target) + 2)
    for a in alphas:
        a = Fraction(a)
        cand = h + g.scale(a)
        if set(cand.terms) == target:
            assert cand.is_real()
            return cand, a
    raise ValueError("every supplied alpha cancels some coefficient; extend the list")
