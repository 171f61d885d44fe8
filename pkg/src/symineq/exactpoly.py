"""Exact rational scalars and polynomials.

``MultiPoly`` is a sparse map from exponent vectors to nonzero ``Fraction``
coefficients over an ordered tuple of variable names.  ``UniPoly`` is a dense
coefficient tuple, constant term first.  Nothing here ever rounds.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

from .errors import DivisibilityError, DomainError

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Fraction``; reject floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def rational_str(x) -> str:
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def _grlex(e: tuple[int, ...]):
    return (sum(e), e)


class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise DomainError(f"duplicate variable names in {self.vars}")
        clean: dict[tuple[int, ...], Fraction] = {}
        nv = len(self.vars)
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nv:
                raise DomainError(f"exponent {e} does not match variables {self.vars}")
            c = as_rational(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    @classmethod
    def _raw(cls, vars, terms):
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    @classmethod
    def const(cls, c, vars: Sequence[str] = ()) -> "MultiPoly":
        c = as_rational(c)
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None) -> "MultiPoly":
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            raise DomainError(f"{name!r} not among {vars}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {e: Fraction(1)})

    @classmethod
    def gens(cls, *names: str) -> tuple["MultiPoly", ...]:
        return tuple(cls.var(n, names) for n in names)

    # structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def coefficient(self, exps: Sequence[int] | Mapping[str, int]) -> Fraction:
        if isinstance(exps, Mapping):
            exps = tuple(exps.get(v, 0) for v in self.vars)
        return self.terms.get(tuple(exps), Fraction(0))

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise DomainError(f"{var!r} not among {self.vars}") from None

    def embed(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over ``vars``, which must contain every variable in use."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        for i, v in enumerate(self.vars):
            if v not in pos and any(e[i] for e in self.terms):
                raise DomainError(f"variable {v!r} in use but missing from {vars}")
        idx = [(pos[v], i) for i, v in enumerate(self.vars) if v in pos]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for j, i in idx:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return MultiPoly._raw(vars, out)

    def _align(self, other) -> tuple["MultiPoly", "MultiPoly"]:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars)
        if other.vars == self.vars:
            return self, other
        union = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.embed(union), other.embed(union)

    # arithmetic ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, UniPoly):
            return NotImplemented
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, UniPoly):
            return NotImplemented
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = as_rational(c)
        if not c:
            return MultiPoly._raw(self.vars, {})
        return MultiPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            return NotImplemented
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        a, b = self._align(other)
        out: dict = {}
        get = out.get
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._raw(a.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError(f"power must be a nonnegative integer, got {k!r}")
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        # only scalar division; polynomial quotients go through exact_div
        if isinstance(other, MultiPoly):
            return exact_div(self, other)
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self.scale(1 / c)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            other = other.to_multi()
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        used = self.used_vars()
        p = self.embed(tuple(sorted(used)))
        return hash(frozenset(p.terms.items()))

    # evaluation & substitution ---------------------------------------

    def eval(self, point) -> Fraction:
        """Exact value at ``point`` (a sequence in variable order, or a name->value map)."""
        if isinstance(point, Mapping):
            missing = [v for v in self.used_vars() if v not in point]
            if missing:
                raise DomainError(f"no value for {missing}")
            point = [point.get(v, 0) for v in self.vars]
        if len(point) != len(self.vars):
            raise DomainError(f"point has {len(point)} coordinates, expected {len(self.vars)}")
        xs = [as_rational(x) for x in point]
        powers = [dict() for _ in xs]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = powers[i][k] = xs[i] ** k
                    term *= pw
            total += term
        return total

    __call__ = eval

    def substitute(self, var: str, value) -> "MultiPoly":
        """Replace ``var`` by a constant or another polynomial."""
        i = self._index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        if not isinstance(value, MultiPoly):
            v = as_rational(value)
            out: dict = {}
            for e, c in self.terms.items():
                ne = e[:i] + e[i + 1:]
                out[ne] = out.get(ne, 0) + c * v ** e[i]
            return MultiPoly._raw(rest, {e: c for e, c in out.items() if c})
        result = MultiPoly.const(0, rest)
        cache: dict[int, MultiPoly] = {}
        for k, coef in enumerate(self.as_univariate(var)):
            if coef:
                pw = cache.setdefault(k, value ** k)
                result = result + coef * pw
        return result

    def as_univariate(self, var: str) -> list["MultiPoly"]:
        """Coefficients (polynomials free of ``var``) indexed by the power of ``var``."""
        i = self._index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        deg = self.degree(var)
        buckets: list[dict] = [dict() for _ in range(max(deg, 0) + 1)]
        for e, c in self.terms.items():
            buckets[e[i]][e[:i] + e[i + 1:]] = c
        return [MultiPoly._raw(rest, b) for b in buckets]

    def to_uni(self, var: str | None = None) -> "UniPoly":
        """Convert a polynomial in at most one variable to ``UniPoly``."""
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise DomainError(f"polynomial uses several variables {used}")
            var = used[0] if used else (self.vars[0] if self.vars else "t")
        elif set(used) - {var}:
            raise DomainError(f"polynomial uses variables other than {var!r}: {used}")
        if not self.terms:
            return UniPoly((), var)
        i = self.vars.index(var) if var in self.vars else None
        coeffs = [Fraction(0)] * (max((e[i] if i is not None else 0) for e in self.terms) + 1)
        for e, c in self.terms.items():
            coeffs[e[i] if i is not None else 0] += c
        return UniPoly(coeffs, var)

    def leading_term(self):
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    # serialization ---------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    def to_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"e": list(e), "c": rational_str(c)} for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "MultiPoly":
        return cls(data["vars"], {tuple(t["e"]): Fraction(t["c"]) for t in data["terms"]})

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Quotient ``r`` with ``r * q == p``; raises ``DivisibilityError`` otherwise.

    Plain multivariate division with respect to graded-lex order.  A single
    divisor divides exactly iff this division leaves no remainder.
    """
    if not isinstance(q, MultiPoly):
        q = MultiPoly.const(q, p.vars)
    if not isinstance(p, MultiPoly):
        p = MultiPoly.const(p, q.vars)
    if q.is_zero():
        raise ZeroDivisionError("exact_div by the zero polynomial")
    p, q = p._align(q)
    lq_e, lq_c = q.leading_term()
    rem = dict(p.terms)
    quot: dict = {}
    leftover: dict = {}
    q_items = list(q.terms.items())
    while rem:
        e = max(rem, key=_grlex)
        c = rem[e]
        if all(a >= b for a, b in zip(e, lq_e)):
            qe = tuple(a - b for a, b in zip(e, lq_e))
            qc = c / lq_c
            quot[qe] = qc
            for e2, c2 in q_items:
                k = tuple(a + b for a, b in zip(qe, e2))
                s = rem.get(k, 0) - qc * c2
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        else:
            leftover[e] = c
            del rem[e]
    if leftover:
        raise DivisibilityError(MultiPoly._raw(p.vars, leftover))
    return MultiPoly._raw(p.vars, quot)


def binomial_poly(top: MultiPoly, r: int) -> MultiPoly:
    """C(top, r) expanded as a polynomial: top(top-1)...(top-r+1)/r!."""
    if r < 0:
        raise DomainError(f"binomial with negative lower index {r}")
    out = MultiPoly.const(1, top.vars)
    for j in range(r):
        out = out * (top - j)
    return out.scale(Fraction(1, _factorial(r)))


def _factorial(r: int) -> int:
    f = 1
    for j in range(2, r + 1):
        f *= j
    return f


class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``var**i``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        cs = [as_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "t", lead=1) -> "UniPoly":
        p = cls([lead], var)
        for r in roots:
            p = p * cls([-as_rational(r), 1], var)
        return p

    @classmethod
    def x(cls, var: str = "t") -> "UniPoly":
        return cls([0, 1], var)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, MultiPoly):
            return other.to_uni(self.var)
        return UniPoly([other], self.var)

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self[i] + o[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError(f"power must be a nonnegative integer, got {k!r}")
        result, base = UniPoly([1], self.var), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.to_multi() == other
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == UniPoly([other]).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    eval = __call__

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return repr(self.to_multi())

    def to_multi(self) -> MultiPoly:
        return MultiPoly((self.var,), {(i,): c for i, c in enumerate(self.coeffs) if c})

    def to_dict(self) -> dict:
        return self.to_multi().to_dict()

    # calculus & division ---------------------------------------------

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def mirror(self) -> tuple["UniPoly", int]:
        """``(t**deg * p(1/t), s)`` after stripping the factor ``t**s`` from ``p``."""
        s = 0
        while s < len(self.coeffs) and not self.coeffs[s]:
            s += 1
        return UniPoly(reversed(self.coeffs[s:]), self.var), s

    def shift(self, a) -> "UniPoly":
        """``p(t + a)`` via Taylor shift."""
        a = as_rational(a)
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if c:
                for j in range(i + 1):
                    out[j] += c * comb(i, j) * a ** (i - j)
        return UniPoly(out, self.var)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return UniPoly((), self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lead = o.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(o.coeffs) - 1] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[i + j] -= c * b
        return UniPoly(quot, self.var), UniPoly(rem[: len(o.coeffs) - 1], self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = self.divmod(other)
        if r:
            raise DivisibilityError(r)
        return q

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return UniPoly([c / lead for c in self.coeffs], self.var)

    def primitive(self) -> "UniPoly":
        """Rational multiple with coprime integer coefficients and a positive leading coefficient."""
        if not self.coeffs:
            return self
        from math import gcd, lcm

        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = gcd(*ints)
        sign = 1 if ints[-1] > 0 else -1
        return UniPoly([sign * v // g for v in ints], self.var)


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (the zero polynomial if both are zero)."""
    while b:
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: ``p = lc * prod(f_i ** i)`` with squarefree, coprime monic ``f_i``."""
    if p.degree() < 1:
        return []
    out = []
    dp = p.derivative()
    a = uni_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = uni_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        if a.degree() > 0:
            out.append((a.monic(), i))
        d = c - b.derivative()
        i += 1
    return out
