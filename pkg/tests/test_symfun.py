from fractions import Fraction
from itertools import product
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from symineq import DegenerateInputError, DomainError, MultiPoly, Partition, SymFamily, enumerate_partitions
from symineq import expected_degree, generate, norm_const, normalized_diff, two_block, two_block_symbolic_H
from symineq.symfun import E, H, M, P, S, multichoose, two_block_diff, xvars

FAMILIES = list(SymFamily)

small_partitions = st.integers(1, 6).flatmap(lambda d: st.sampled_from(enumerate_partitions(d)))


def _to_sympy(p: MultiPoly):
    syms = sympy.symbols(p.vars)
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** k for s, k in zip(syms, e)])
                       for e, c in p.terms.items()])


def test_family_parse():
    assert SymFamily.parse("h") is H
    assert SymFamily.parse("complete_homogeneous") is H
    assert SymFamily.parse("power-sum") is P
    assert SymFamily.parse("SCHUR") is S
    with pytest.raises(DomainError):
        SymFamily.parse("Q")


def test_small_generators_by_hand():
    x1, x2 = MultiPoly.gens(*xvars(2))
    assert generate(H, 2, [2]) == x1 ** 2 + x1 * x2 + x2 ** 2
    assert generate(E, 2, [1, 1]) == (x1 + x2) ** 2
    assert generate(P, 2, [2, 1]) == (x1 ** 2 + x2 ** 2) * (x1 + x2)
    assert generate(M, 2, [2, 1]) == x1 ** 2 * x2 + x1 * x2 ** 2
    assert generate(S, 2, [2]) == generate(H, 2, [2])
    assert generate(E, 2, [3]).is_zero()
    assert generate(S, 2, [1, 1, 1]).is_zero()
    with pytest.raises(DomainError):
        generate(M, 2, [1, 1, 1])


def test_h_counts_monomials():
    for n in range(1, 5):
        for m in range(0, 6):
            h = generate(H, n, [m]) if m else MultiPoly.const(1, xvars(n))
            assert len(h) == comb(n + m - 1, m)
            assert set(h.terms.values()) <= {Fraction(1)}


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_schur_matches_bialternant(n, d):
    xs = sympy.symbols(xvars(n))
    vand = sympy.Matrix(n, n, lambda i, j: xs[j] ** (n - 1 - i)).det()
    for lam in enumerate_partitions(d):
        s = generate(S, n, lam)
        if lam.length > n:
            assert s.is_zero()
            continue
        parts = list(lam.parts) + [0] * (n - lam.length)
        alt = sympy.Matrix(n, n, lambda i, j: xs[j] ** (parts[i] + n - 1 - i)).det()
        oracle = sympy.cancel(alt / vand)
        assert sympy.expand(oracle - _to_sympy(s)) == 0


def test_schur_kostka_small():
    # s_{21} = m_{21} + 2 m_{111} in three variables
    assert generate(S, 3, [2, 1]) == generate(M, 3, [2, 1]) + 2 * generate(M, 3, [1, 1, 1])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_newton_identities(n):
    # m * e_m = sum_{i=1}^m (-1)^{i-1} e_{m-i} p_i
    one = MultiPoly.const(1, xvars(n))
    e = lambda k: one if k == 0 else generate(E, n, [k])
    p = lambda k: generate(P, n, [k])
    for m in range(1, 5):
        rhs = MultiPoly.const(0, xvars(n))
        for i in range(1, m + 1):
            rhs = rhs + (-1) ** (i - 1) * e(m - i) * p(i)
        assert m * e(m) == rhs
    # sum (-1)^i e_i h_{m-i} = 0
    h = lambda k: one if k == 0 else generate(H, n, [k])
    for m in range(1, 5):
        total = MultiPoly.const(0, xvars(n))
        for i in range(m + 1):
            total = total + (-1) ** i * e(i) * h(m - i)
        assert total.is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_norm_const_is_value_at_ones_and_schur_nonnegative(n, d):
    for lam in enumerate_partitions(d):
        for fam in FAMILIES:
            if fam is M and lam.length > n:
                with pytest.raises(DomainError):
                    norm_const(fam, n, lam)
                continue
            f = generate(fam, n, lam)
            if f.is_zero():
                with pytest.raises(DegenerateInputError):
                    norm_const(fam, n, lam)
                continue
            assert norm_const(fam, n, lam) == f((1,) * n)
        assert all(c > 0 for c in generate(S, n, lam).terms.values())


def test_normalized_diff_value_at_ones_is_zero():
    N, D = normalized_diff(H, 3, [4, 4], [5, 2, 1])
    assert N((1, 1, 1)) == 0 and D > 0
    assert all(c.denominator == 1 for c in N.terms.values())
    with pytest.raises(DomainError):
        normalized_diff(H, 3, [2], [1])


def test_multichoose():
    assert multichoose(3, 2) == 6
    assert multichoose(0, 0) == 1 and multichoose(0, 2) == 0


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(1, 6), small_partitions, st.data())
def test_two_block_matches_direct_substitution(fam, n, lam, data):
    u = data.draw(st.integers(0, n))
    if fam is M and lam.length > n:
        return
    f = generate(fam, n, lam)
    r = two_block(fam, n, lam, u)
    for t in (Fraction(0), Fraction(1), Fraction(2), Fraction(-3, 2), Fraction(7, 5)):
        assert r(t) == f([t] * u + [1] * (n - u))
    if 1 <= u and not f.is_zero() and lam.length <= n and (fam is not E or lam.parts[0] <= n):
        assert r.degree() == expected_degree(fam, lam, u)


@settings(max_examples=40, deadline=None)
@given(small_partitions, st.integers(0, 4), st.integers(0, 4))
def test_symbolic_h_specializes(lam, k, l):
    sym = two_block_symbolic_H(lam)
    n = k + l + 2
    direct = two_block(H, n, lam, k + 1)
    for t in range(4):
        assert sym((k, l, t)) == direct(t)


def test_two_block_diff_scaling():
    mu, lam = Partition([2, 2, 2, 2]), Partition([3, 1, 1, 1, 1, 1])
    N, D = normalized_diff(H, 4, mu, lam)
    for u in range(5):
        r = two_block_diff(H, 4, mu, lam, u)
        assert r(Fraction(3)) == N([3] * u + [1] * (4 - u))
        assert r(Fraction(1)) == 0


def test_domain_errors():
    with pytest.raises(DomainError):
        two_block(H, 3, [2], 4)
    with pytest.raises(DomainError):
        generate(H, 0, [1])
    with pytest.raises(DomainError):
        expected_degree(H, [2], 0)
