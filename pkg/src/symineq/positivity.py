"""Nonnegativity certificates.

Univariate: exact decision of ``P(t) >= 0`` on ``t >= 0`` with Sturm chains.
Multivariate: one-sided checks on the standard simplex (coefficient signs,
successive difference substitution, random sampling).  Every negative point
reported here has been re-evaluated exactly.
"""
from __future__ import annotations

import enum
import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .errors import DomainError
from .exactpoly import MultiPoly, UniPoly, rational_str, squarefree_decomposition, uni_gcd

DEFAULT_DS_DEPTH = 8
DEFAULT_BRANCH_BUDGET = 10**6


class Status(str, enum.Enum):
    PROVED = "ProvedNonnegative"
    NEGATIVE = "NegativeWitness"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass
class Witness:
    point: tuple[Fraction, ...]
    value: Fraction

    def to_dict(self) -> dict:
        return {"point": [rational_str(x) for x in self.point], "value": rational_str(self.value)}


@dataclass
class Verdict:
    status: Status
    certificate: str | None = None
    witness: Witness | None = None
    budget: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status is Status.NEGATIVE and self.witness is None:
            raise ValueError("a NegativeWitness verdict needs a witness")
        if self.witness is not None and self.witness.value >= 0:
            raise ValueError(f"witness value {self.witness.value} is not negative")

    @property
    def proved(self) -> bool:
        return self.status is Status.PROVED

    @property
    def negative(self) -> bool:
        return self.status is Status.NEGATIVE

    def to_dict(self) -> dict:
        out = {"status": self.status.value, "certificate": self.certificate}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        out["budget"] = dict(self.budget)
        if self.notes:
            out["notes"] = self.notes
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        w = d.get("witness")
        witness = None
        if w is not None:
            witness = Witness(tuple(Fraction(x) for x in w["point"]), Fraction(w["value"]))
        return cls(Status(d["status"]), d.get("certificate"), witness, dict(d.get("budget", {})), dict(d.get("notes", {})))


# Sturm chains ---------------------------------------------------------

def _pos_scale(p: UniPoly) -> UniPoly:
    """Positive multiple of ``p`` with coprime integer coefficients (sign kept)."""
    if not p.coeffs:
        return p
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    g = math.gcd(*ints)
    return UniPoly([v // g for v in ints], p.var)


@dataclass(frozen=True)
class SturmChain:
    polynomials: tuple[UniPoly, ...]

    def __len__(self):
        return len(self.polynomials)

    def __getitem__(self, i):
        return self.polynomials[i]

    def variations(self, x) -> int:
        """Sign changes of the chain at ``x``; ``None``/``±inf`` use leading terms."""
        signs = []
        for p in self.polynomials:
            s = _sign_at(p, x)
            if s:
                signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at(p: UniPoly, x) -> int:
    if x is None or (isinstance(x, float) and math.isinf(x)):
        if x is None or x > 0:
            return _sgn(p.lc())
        return _sgn(p.lc()) * (-1 if p.degree() % 2 else 1)
    return _sgn(p(x))


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def sturm_chain(p: UniPoly) -> SturmChain:
    """Signed remainder sequence ``p, p', -rem(p, p'), ...`` up to positive scaling."""
    if p.is_zero():
        raise DomainError("Sturm chain of the zero polynomial")
    chain = [p]
    if p.degree() > 0:
        chain.append(_pos_scale(p.derivative()))
    while len(chain) > 1:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(_pos_scale(-r))
    return SturmChain(tuple(chain))


def _squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree() < 1:
        return p
    return p.exact_div(uni_gcd(p, p.derivative()))


def count_roots(p: UniPoly, a=-math.inf, b=math.inf) -> int:
    """Number of distinct real roots of ``p`` in ``(a, b]``."""
    if p.is_zero():
        raise DomainError("root count of the zero polynomial")
    lo = None if a is None or (isinstance(a, float) and math.isinf(a)) else Fraction(a)
    hi = None if b is None or (isinstance(b, float) and math.isinf(b)) else Fraction(b)
    if lo is not None and hi is not None and lo >= hi:
        raise DomainError(f"empty interval ({a}, {b}]")
    chain = sturm_chain(_squarefree_part(p))
    va = chain.variations(-math.inf if lo is None else lo)
    vb = chain.variations(math.inf if hi is None else hi)
    return va - vb


def cauchy_bound(p: UniPoly) -> Fraction:
    """Every root of ``p`` has absolute value strictly below the returned rational."""
    lead = abs(p.lc())
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def _straddle(q: UniPoly, chain: SturmChain, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink ``(a, b]`` holding exactly one root of squarefree ``q`` to ``lo < r < hi`` with q(lo), q(hi) != 0."""
    if q(b) == 0:
        step = b - a
        while chain.variations(b) != chain.variations(b + step) or q(b + step) == 0:
            step /= 2
        return (a + b) / 2, b + step
    # from here on the root is strictly inside (a, b) and q(b) != 0
    while True:
        m = (a + b) / 2
        if q(m) == 0:
            return (a + m) / 2, (m + b) / 2
        if chain.variations(a) - chain.variations(m) == 1:
            b = m
        else:
            a = m
        if q(a) != 0:
            return a, b


def _isolate_positive(q: UniPoly, chain: SturmChain, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    out = []
    stack = [(Fraction(0), hi)]
    while stack:
        a, b = stack.pop()
        k = chain.variations(a) - chain.variations(b)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    return sorted(out)


def nonneg_on_ray(p: UniPoly) -> Verdict:
    """Exact decision of ``p(t) >= 0`` for every ``t >= 0``."""
    if p.is_zero() or all(c >= 0 for c in p.coeffs):
        return Verdict(Status.PROVED, "coefficient-sign")
    if p.lc() < 0:
        t = cauchy_bound(p)
        return Verdict(Status.NEGATIVE, "leading-coefficient", Witness((t,), p(t)))
    if p[0] < 0:
        return Verdict(Status.NEGATIVE, "constant-term", Witness((Fraction(0),), p[0]))
    parts = squarefree_decomposition(p)
    notes = {"factors": [{"factor": repr(f), "multiplicity": k} for f, k in parts]}
    odd = UniPoly([1], p.var)
    for f, k in parts:
        if k % 2:
            odd = odd * f
    if odd.degree() < 1 or count_roots(odd, 0, math.inf) == 0:
        return Verdict(Status.PROVED, "sturm", notes=notes)
    # sign change at an odd-multiplicity positive root: bracket it and pick the negative side
    q = _squarefree_part(p)
    chain = sturm_chain(q)
    for a, b in _isolate_positive(q, chain, cauchy_bound(q)):
        lo, hi = _straddle(q, chain, a, b)
        for t in (lo, hi):
            v = p(t)
            if v < 0:
                return Verdict(Status.NEGATIVE, "sturm", Witness((t,), v), notes=notes)
    raise AssertionError("odd-multiplicity root found but no sign change located")


# multivariate ---------------------------------------------------------

def coeff_nonneg(p: MultiPoly) -> bool:
    """Every stored coefficient is >= 0 (sufficient for nonnegativity on the orthant)."""
    return all(c >= 0 for c in p.terms.values())


def _integer_terms(p: MultiPoly) -> dict[tuple, int]:
    den = math.lcm(*(c.denominator for c in p.terms.values())) if p.terms else 1
    ints = {e: int(c * den) for e, c in p.terms.items()}
    g = math.gcd(*ints.values()) if ints else 1
    return {e: v // g for e, v in ints.items()}


def _shift(terms: dict, i: int) -> dict:
    # x_i -> x_i + x_{i+1}
    out: dict = {}
    get = out.get
    for e, c in terms.items():
        a = e[i]
        if a == 0:
            out[e] = get(e, 0) + c
            continue
        base = list(e)
        for j in range(a + 1):
            base[i] = j
            base[i + 1] = e[i + 1] + a - j
            k = tuple(base)
            out[k] = get(k, 0) + c * comb(a, j)
    return {e: c for e, c in out.items() if c}


def _chamber_substitute(terms: dict, perm: Sequence[int], n: int) -> dict:
    """``p(x)`` with ``x[perm[i]] = y_i + ... + y_{n-1}``."""
    permuted = {tuple(e[perm[i]] for i in range(n)): c for e, c in terms.items()}
    for i in range(n - 1):
        permuted = _shift(permuted, i)
    return permuted


def _chamber_matrix(perm: Sequence[int], n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[perm[i]][j] = 1
    return a


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _is_symmetric(terms: dict, n: int) -> bool:
    if n < 2:
        return True
    for e, c in terms.items():
        swap = (e[1], e[0]) + e[2:]
        cyc = e[1:] + e[:1]
        if terms.get(swap) != c or terms.get(cyc) != c:
            return False
    return True


def _on_simplex(x: Sequence) -> tuple[Fraction, ...]:
    s = sum(x)
    return tuple(Fraction(v) / s for v in x)


def ds_nonneg_on_simplex(p: MultiPoly, depth_budget: int = DEFAULT_DS_DEPTH,
                         branch_budget: int = DEFAULT_BRANCH_BUDGET) -> Verdict:
    """Successive difference substitution on the simplex (a semidecision).

    Each level splits every open branch into the ``n!`` ordering chambers and
    substitutes ``x_sigma(i) = y_i + ... + y_n``.  A branch closes once all its
    coefficients are nonnegative.  Vertices and the chamber barycentre are
    probed for negative values at every level.
    """
    if not p.is_homogeneous():
        raise DomainError("difference substitution needs a homogeneous polynomial")
    n = len(p.vars)
    if p.is_zero() or coeff_nonneg(p):
        return Verdict(Status.PROVED, "ds-depth-0", budget={"ds_branches": 0, "ds_depth": 0})
    d = p.total_degree()
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    root = _integer_terms(p)
    perms = list(itertools.permutations(range(n)))
    first = [tuple(range(n))] if _is_symmetric(root, n) else perms
    branches = 0

    def probe(terms, mat):
        # vertices e_j (coefficient of y_j^d), then the all-ones point
        for j in range(n):
            e = tuple(d if i == j else 0 for i in range(n))
            if terms.get(e, 0) < 0:
                yield [mat[i][j] for i in range(n)]
        if sum(terms.values()) < 0:
            yield [sum(row) for row in mat]

    for x in probe(root, ident):
        val = p(_on_simplex(x))
        if val < 0:
            return Verdict(Status.NEGATIVE, "ds-depth-0", Witness(_on_simplex(x), val),
                           {"ds_branches": 0, "ds_depth": 0})

    frontier = [(root, ident)]
    for depth in range(1, depth_budget + 1):
        nxt = []
        for terms, mat in frontier:
            for perm in (first if depth == 1 else perms):
                branches += 1
                if branches > branch_budget:
                    return Verdict(Status.UNKNOWN, "ds-branch-budget",
                                   budget={"ds_branches": branches - 1, "ds_depth": depth})
                child = _chamber_substitute(terms, perm, n)
                if all(c >= 0 for c in child.values()):
                    continue
                cmat = _matmul(mat, _chamber_matrix(perm, n))
                for x in probe(child, cmat):
                    val = p(_on_simplex(x))
                    if val < 0:
                        return Verdict(Status.NEGATIVE, f"ds-depth-{depth}", Witness(_on_simplex(x), val),
                                       {"ds_branches": branches, "ds_depth": depth})
                nxt.append((child, cmat))
        if not nxt:
            return Verdict(Status.PROVED, f"ds-depth-{depth}",
                           budget={"ds_branches": branches, "ds_depth": depth})
        frontier = nxt
    return Verdict(Status.UNKNOWN, "ds-depth-budget",
                   budget={"ds_branches": branches, "ds_depth": depth_budget, "open_branches": len(frontier)})


# sampling -------------------------------------------------------------

SAMPLE_DENOMINATOR = 2**24
_CHUNK_CELLS = 4_000_000


def simplex_points(n: int, samples: int, seed: int, denominator: int = SAMPLE_DENOMINATOR):
    """Deterministic rational points on the simplex from sorted random cut points.

    Yields integer numerator tuples summing to ``denominator``.
    """
    rng = random.Random(seed)
    for _ in range(samples):
        cuts = sorted(rng.randint(0, denominator) for _ in range(n - 1))
        edges = [0] + cuts + [denominator]
        yield tuple(b - a for a, b in zip(edges, edges[1:]))


def sample_search(p: MultiPoly, samples: int = 1000, seed: int = 0,
                  denominator: int = SAMPLE_DENOMINATOR):
    """First sampled simplex point where ``p`` is exactly negative, else ``None``.

    Points are screened in floating point; any point whose float value is not
    safely positive is re-evaluated exactly, so the result matches a purely
    exact scan of the same points.
    """
    n = len(p.vars)
    if p.is_zero() or coeff_nonneg(p) or samples <= 0 or n == 0:
        return None
    exps = np.array(list(p.terms.keys()), dtype=np.int64)
    coefs = np.array([float(c) for c in p.terms.values()])
    pts = np.array(list(simplex_points(n, samples, seed, denominator)), dtype=np.int64)
    deg = int(exps.max()) if exps.size else 0
    chunk = max(1, _CHUNK_CELLS // max(1, len(exps) * n))
    for start in range(0, len(pts), chunk):
        block = pts[start:start + chunk]
        x = block.astype(float) / denominator
        pw = x[:, :, None] ** np.arange(deg + 1)[None, None, :]  # (S, n, deg+1)
        mono = np.ones((len(block), len(exps)))
        for v in range(n):
            mono *= pw[:, v, exps[:, v]]
        vals = mono @ coefs
        # relative float error is far below 1e-10 of the absolute-value sum
        slack = 1e-10 * (mono @ np.abs(coefs))
        for idx in np.nonzero(vals < slack)[0]:
            point = tuple(Fraction(int(a), denominator) for a in block[idx])
            val = p(point)
            if val < 0:
                return point, val
    return None
