"""Symmetric-function generators, term normalization and two-block reductions.

Polynomials live in variables ``x1..xn``.  A two-block point puts ``t`` in the
first ``u`` coordinates and ``1`` in the remaining ``v = n - u``.
"""
from __future__ import annotations

import enum
import threading
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb, factorial, lcm, prod

from .errors import DegenerateInputError, DomainError
from .exactpoly import MultiPoly, UniPoly, binomial_poly
from .partition import Partition, conjugate


class SymFamily(enum.Enum):
    MONOMIAL = "M"
    ELEMENTARY = "E"
    POWERSUM = "P"
    SCHUR = "S"
    COMPLETE = "H"

    @classmethod
    def parse(cls, s: "SymFamily | str") -> "SymFamily":
        """Accept ``"H"``, ``"h"``, ``"COMPLETE"`` and friends."""
        if isinstance(s, SymFamily):
            return s
        key = str(s).strip().upper().replace("-", "_")
        for fam in cls:
            if key in (fam.value, fam.name) or key in _LONG_NAMES.get(fam.value, ()):
                return fam
        raise DomainError(f"unknown symmetric family {s!r}")

    def __str__(self):
        return self.value


_LONG_NAMES = {
    "P": ("POWER_SUM",),
    "H": ("COMPLETE_HOMOGENEOUS", "COMPLETEHOMOGENEOUS"),
}

M, E, P, S, H = (SymFamily(c) for c in "MEPSH")


def xvars(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"number of variables must be a positive integer, got {n!r}")


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def multichoose(u: int, a: int) -> int:
    """Number of size-``a`` multisets from ``u`` items (1 when ``a == 0``)."""
    if a == 0:
        return 1
    if u <= 0:
        return 0
    return comb(u + a - 1, a)


# single-row generators ----------------------------------------------

@lru_cache(maxsize=None)
def h_single(n: int, m: int) -> MultiPoly:
    """Complete homogeneous polynomial of degree ``m`` in ``n`` variables."""
    _check_n(n)
    if m < 0:
        return MultiPoly.const(0, xvars(n))
    terms = {}
    for idx in combinations_with_replacement(range(n), m):
        e = [0] * n
        for i in idx:
            e[i] += 1
        terms[tuple(e)] = 1
    return MultiPoly(xvars(n), terms)


@lru_cache(maxsize=None)
def e_single(n: int, m: int) -> MultiPoly:
    _check_n(n)
    terms = {}
    for idx in combinations(range(n), m):
        e = [0] * n
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = 1
    return MultiPoly(xvars(n), terms)


@lru_cache(maxsize=None)
def p_single(n: int, m: int) -> MultiPoly:
    _check_n(n)
    if m == 0:
        return MultiPoly.const(n, xvars(n))
    return MultiPoly(xvars(n), {tuple(m if j == i else 0 for j in range(n)): 1 for i in range(n)})


def _monomial(n: int, lam: Partition) -> MultiPoly:
    if lam.length > n:
        raise DomainError(f"monomial m_{lam} needs at least {lam.length} variables, got n={n}")
    pattern = list(lam.parts) + [0] * (n - lam.length)
    terms = {}

    def rec(i, remaining):
        if i == n:
            terms[tuple(cur)] = 1
            return
        for val in sorted(set(remaining), reverse=True):
            cur.append(val)
            r = list(remaining)
            r.remove(val)
            rec(i + 1, r)
            cur.pop()

    cur: list[int] = []
    rec(0, pattern)
    return MultiPoly(xvars(n), terms)


def _det(matrix: list[list[MultiPoly]], vars) -> MultiPoly:
    # Laplace expansion along rows, memoized on the set of used columns
    size = len(matrix)
    memo: dict[tuple[int, frozenset], MultiPoly] = {}

    def minor(row: int, cols: frozenset) -> MultiPoly:
        if row == size:
            return MultiPoly.const(1, vars)
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = MultiPoly.const(0, vars)
        free = [c for c in range(size) if c not in cols]
        for pos, c in enumerate(free):
            entry = matrix[row][c]
            if entry:
                term = entry * minor(row + 1, cols | {c})
                acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, frozenset())


def _schur(n: int, lam: Partition) -> MultiPoly:
    ell = lam.length
    if ell > n:
        return MultiPoly.const(0, xvars(n))
    mat = [[h_single(n, lam[i] - i + j) for j in range(ell)] for i in range(ell)]
    return _det(mat, xvars(n))


_cache_lock = threading.Lock()
_gen_cache: dict[tuple, MultiPoly] = {}


def generate(family, n: int, lam) -> MultiPoly:
    """The (unnormalized) symmetric polynomial ``f_{n,lam}`` of the given family."""
    family = SymFamily.parse(family)
    _check_n(n)
    lam = _as_partition(lam)
    key = (family, n, lam.parts)
    hit = _gen_cache.get(key)
    if hit is not None:
        return hit
    if family is M:
        poly = _monomial(n, lam)
    elif family is S:
        poly = _schur(n, lam)
    else:
        single = {E: e_single, P: p_single, H: h_single}[family]
        poly = MultiPoly.const(1, xvars(n))
        for part in lam.parts:
            poly = poly * single(n, part)
    with _cache_lock:
        _gen_cache.setdefault(key, poly)
    return poly


def _closed_norm(family: SymFamily, n: int, lam: Partition) -> int | None:
    if family is H:
        return prod(comb(n + p - 1, p) for p in lam.parts)
    if family is E:
        return prod(comb(n, p) for p in lam.parts)
    if family is P:
        return n ** lam.length
    if family is M:
        if lam.length > n:
            return None
        mult: dict[int, int] = {}
        for p in list(lam.parts) + [0] * (n - lam.length):
            mult[p] = mult.get(p, 0) + 1
        return factorial(n) // prod(factorial(c) for c in mult.values())
    return None


def norm_const(family, n: int, lam) -> Fraction:
    """``f_{n,lam}(1,...,1)``, the divisor that term-normalizes the family member."""
    family = SymFamily.parse(family)
    lam = _as_partition(lam)
    _check_n(n)
    if family is M and lam.length > n:
        raise DomainError(f"monomial m_{lam} needs at least {lam.length} variables, got n={n}")
    closed = _closed_norm(family, n, lam)
    if closed is None:
        value = sum(generate(family, n, lam).terms.values(), Fraction(0))
    else:
        value = Fraction(closed)
    if value == 0:
        raise DegenerateInputError(f"{family.value}_{{{n},{lam}}} vanishes at (1,...,1)")
    return value


def normalized_diff(family, n: int, mu, lam) -> tuple[MultiPoly, Fraction]:
    """``(N, D)`` with ``F_mu - F_lam == N / D`` and ``D > 0``.

    ``D`` is the lcm of the two (integer) normalizers, so ``N`` has integer
    coefficients and carries the sign of the difference.
    """
    family = SymFamily.parse(family)
    mu, lam = _as_partition(mu), _as_partition(lam)
    if mu.weight != lam.weight:
        raise DomainError(f"weights differ: {mu.weight} vs {lam.weight}")
    c_mu, c_lam = norm_const(family, n, mu), norm_const(family, n, lam)
    den = Fraction(lcm(int(c_mu), int(c_lam)))
    num = generate(family, n, mu).scale(den / c_mu) - generate(family, n, lam).scale(den / c_lam)
    return num, den


# two-block reductions -----------------------------------------------

def _check_u(n: int, u: int) -> None:
    if not 0 <= u <= n:
        raise DomainError(f"block size u={u} out of range 0..{n}")


def h_block(n: int, m: int, u: int, var: str = "t") -> UniPoly:
    """``h_{n,m}(t_u, 1_v)``: coefficient of ``t^a`` is multichoose(u,a)*multichoose(v,m-a)."""
    v = n - u
    return UniPoly([multichoose(u, a) * multichoose(v, m - a) for a in range(m + 1)], var)


def e_block(n: int, m: int, u: int, var: str = "t") -> UniPoly:
    v = n - u
    return UniPoly([comb(u, a) * comb(v, m - a) if m - a >= 0 else 0 for a in range(m + 1)], var)


def p_block(n: int, m: int, u: int, var: str = "t") -> UniPoly:
    v = n - u
    return UniPoly([v] + [0] * (m - 1) + [u], var) if m else UniPoly([n], var)


def substitute_two_block(poly: MultiPoly, u: int, var: str = "t") -> UniPoly:
    """Direct substitution ``x1..xu -> t`` and the rest ``-> 1``."""
    coeffs: dict[int, Fraction] = {}
    for e, c in poly.terms.items():
        a = sum(e[:u])
        coeffs[a] = coeffs.get(a, 0) + c
    deg = max(coeffs, default=-1)
    return UniPoly([coeffs.get(a, 0) for a in range(deg + 1)], var)


def two_block(family, n: int, lam, u: int, var: str = "t") -> UniPoly:
    """``f_{n,lam}(t_u, 1_{n-u})`` as a polynomial in ``t``."""
    family = SymFamily.parse(family)
    lam = _as_partition(lam)
    _check_n(n)
    _check_u(n, u)
    block = {H: h_block, E: e_block, P: p_block}.get(family)
    if block is None:
        return substitute_two_block(generate(family, n, lam), u, var)
    out = UniPoly([1], var)
    for part in lam.parts:
        out = out * block(n, part, u, var)
    return out


def two_block_diff(family, n: int, mu, lam, u: int, var: str = "t") -> UniPoly:
    """Numerator of ``F_mu - F_lam`` at ``(t_u, 1_v)``, scaled as in ``normalized_diff``."""
    family = SymFamily.parse(family)
    mu, lam = _as_partition(mu), _as_partition(lam)
    if mu.weight != lam.weight:
        raise DomainError(f"weights differ: {mu.weight} vs {lam.weight}")
    c_mu, c_lam = norm_const(family, n, mu), norm_const(family, n, lam)
    den = Fraction(lcm(int(c_mu), int(c_lam)))
    return two_block(family, n, mu, u, var) * (den / c_mu) - two_block(family, n, lam, u, var) * (den / c_lam)


SYMBOLIC_VARS = ("k", "l", "t")


def _h_block_symbolic(m: int) -> MultiPoly:
    k, l, t = MultiPoly.gens(*SYMBOLIC_VARS)
    out = MultiPoly.const(0, SYMBOLIC_VARS)
    for a in range(m + 1):
        out = out + binomial_poly(k + a, a) * binomial_poly(l + (m - a), m - a) * t ** a
    return out


def two_block_symbolic_H(lam) -> MultiPoly:
    """``h_{n,lam}(t_{k+1}, 1_{l+1})`` with ``n = k + l + 2`` as a polynomial in ``k, l, t``."""
    lam = _as_partition(lam)
    if not lam.parts:
        raise DomainError("empty partition")
    out = MultiPoly.const(1, SYMBOLIC_VARS)
    for part in lam.parts:
        out = out * _h_block_symbolic(part)
    return out


def expected_degree(family, lam, u: int) -> int:
    """Degree in ``t`` of ``f_{n,lam}(t_u, 1_v)`` for ``u >= 1``."""
    family = SymFamily.parse(family)
    lam = _as_partition(lam)
    if u < 1:
        raise DomainError(f"u must be at least 1, got {u}")
    if family in (M, S):
        return sum(lam.parts[:u])
    if family is E:
        return sum(conjugate(lam).parts[:u])
    return lam.weight
