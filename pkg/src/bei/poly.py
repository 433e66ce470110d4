"""Immutable multivariate polynomials over a :class:`~bei.ring.PolyRing`.

Internally a polynomial is a ``dict`` mapping packed monomials to nonzero
coefficients.  The module-level ``_``-prefixed helpers work on those raw
dicts and take the characteristic ``p`` (0 for the rationals); the
Groebner and resolution kernels use them directly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Iterable

from .ring import PolyRing


class RingMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


# raw dict helpers --------------------------------------------------------


def _add_into(acc: dict, b: dict, p: int, scale=1, shift: int = 0) -> None:
    """``acc += scale * x^shift * b`` in place."""
    for m, c in b.items():
        m += shift
        v = acc.get(m)
        if v is None:
            v = c * scale
            if p:
                v %= p
            acc[m] = v
        else:
            v += c * scale
            if p:
                v %= p
            if v:
                acc[m] = v
            else:
                del acc[m]


def _mul(a: dict, b: dict, p: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for m, c in a.items():
        _add_into(out, b, p, c, m)
    return out


def _scale(a: dict, c, p: int) -> dict:
    if p:
        return {m: v * c % p for m, v in a.items()}
    return {m: v * c for m, v in a.items()}


def _monic(a: dict, p: int) -> dict:
    if not a:
        return a
    lc = a[max(a)]
    if lc == 1:
        return dict(a)
    inv = pow(lc, -1, p) if p else Fraction(1) / lc
    return _scale(a, inv, p)


def _divide_exact(a: dict, f: dict, ring: PolyRing) -> dict:
    p = ring.field.p
    guard = ring.guard
    lm = max(f)
    lc = f[lm]
    inv = pow(lc, -1, p) if p else Fraction(1) / lc
    tail = {m: c for m, c in f.items() if m != lm}
    rem = dict(a)
    heap = [-m for m in rem]
    heapify(heap)
    q: dict = {}
    while heap:
        m = -heappop(heap)
        c = rem.pop(m, None)
        if c is None:
            continue
        if (m - lm) & guard:
            raise NotDivisible("nonzero remainder in exact division")
        t = m - lm
        qc = c * inv
        if p:
            qc %= p
        q[t] = qc
        for fm, fc in tail.items():
            mm = fm + t
            v = rem.get(mm)
            d = qc * fc
            if v is None:
                v = -d
                if p:
                    v %= p
                rem[mm] = v
                heappush(heap, -mm)
            else:
                v -= d
                if p:
                    v %= p
                if v:
                    rem[mm] = v
                else:
                    del rem[mm]
    return q


# the value type --------------------------------------------------------------


class Polynomial:
    """An element of ``ring``; treat instances as immutable values."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: PolyRing, terms: dict | None = None):
        self.ring = ring
        self._t = terms if terms is not None else {}
        self._hash = None

    @classmethod
    def from_dict(cls, ring: PolyRing, terms: dict) -> "Polynomial":
        """Build from ``{monomial: coefficient}``, coercing and dropping zeros."""
        f = ring.field
        t = {}
        for m, c in terms.items():
            c = f(c)
            if c:
                t[m] = c
        return cls(ring, t)

    @classmethod
    def from_exponents(cls, ring: PolyRing, terms: Iterable) -> "Polynomial":
        """Build from ``[(coeff, exponent_vector), ...]``."""
        acc: dict = {}
        f = ring.field
        for c, exps in terms:
            c = f(c)
            if c:
                _add_into(acc, {ring.monomial(exps): c}, f.p)
        return cls(ring, acc)

    @classmethod
    def constant(cls, ring: PolyRing, c=1) -> "Polynomial":
        c = ring.field(c)
        return cls(ring, {0: c} if c else {})

    @classmethod
    def variable(cls, ring: PolyRing, i: int) -> "Polynomial":
        return cls(ring, {ring.var_monomial(i): 1})

    @classmethod
    def parse(cls, ring: PolyRing, text: str) -> "Polynomial":
        return _Parser(ring, text).parse()

    # inspection -----------------------------------------------------------

    @property
    def terms(self) -> dict:
        """The raw ``{monomial: coefficient}`` map (do not mutate)."""
        return self._t

    def items(self) -> list[tuple[int, object]]:
        """Terms sorted descending in the monomial order."""
        return sorted(self._t.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    @property
    def lead_monomial(self) -> int:
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        return max(self._t)

    @property
    def lead_coefficient(self):
        return self._t[self.lead_monomial]

    def lead_exponents(self) -> tuple[int, ...]:
        return self.ring.exponents(self.lead_monomial)

    def total_degree(self) -> int:
        if not self._t:
            return -1
        return max(self.ring.degree(m) for m in self._t)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.degree(m) for m in self._t}
        return len(degs) <= 1

    def monic(self) -> "Polynomial":
        return Polynomial(self.ring, _monic(self._t, self.ring.field.p))

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.ring != self.ring:
            raise RingMismatch("polynomials live in different rings")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        _add_into(t, other._t, self.ring.field.p)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        return Polynomial(self.ring, _scale(self._t, -1, p))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        _add_into(t, other._t, self.ring.field.p, -1)
        return Polynomial(self.ring, t)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.ring.field(other)
            if not c:
                return Polynomial(self.ring)
            return Polynomial(self.ring, _scale(self._t, c, self.ring.field.p))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _mul(self._t, other._t, self.ring.field.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, mon: int, c=1) -> "Polynomial":
        return Polynomial(self.ring, _scale({m + mon: v for m, v in self._t.items()}, c, self.ring.field.p))

    def divide_exact(self, f: "Polynomial") -> "Polynomial":
        """The quotient ``q`` with ``q * f == self``; raises :class:`NotDivisible`."""
        self._check(f)
        if not f:
            raise ZeroDivisionError("division by the zero polynomial")
        return Polynomial(self.ring, _divide_exact(self._t, f._t, self.ring))

    def substitute(self, perm: list[int]) -> "Polynomial":
        """Rename variables: variable ``i`` becomes variable ``perm[i]``."""
        ring = self.ring
        acc: dict = {}
        for m, c in self._t.items():
            e = ring.exponents(m)
            new = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    new[perm[i]] += k
            acc[ring.monomial(new)] = c
        return Polynomial(ring, acc)

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-encode in a ring with the same variables (other order or field)."""
        if ring is self.ring:
            return self
        if ring.field != self.ring.field:
            acc = {}
            lift = ring.field.is_rational and not self.ring.field.is_rational
            for m, c in self._t.items():
                c = ring.field(self.ring.field.lift(c) if lift else c)
                if c:
                    acc[ring.convert_monomial(m, self.ring)] = c
            return Polynomial(ring, acc)
        return Polynomial(ring, {ring.convert_monomial(m, self.ring): c for m, c in self._t.items()})

    # comparison / hashing -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.ring, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # text -------------------------------------------------------------------

    def __str__(self) -> str:
        if not self._t:
            return "0"
        field = self.ring.field
        out = []
        for k, (m, c) in enumerate(self.items()):
            c = field.symmetric(c)
            neg = c < 0
            a = -c if neg else c
            mon = self.ring.monomial_str(m)
            if mon == "1":
                body = str(a)
            elif a == 1:
                body = mon
            else:
                body = f"{a}*{mon}"
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.toks = []
        for num, name, op in _TOKEN.findall(text):
            if num:
                self.toks.append(("num", int(num)))
            elif name:
                self.toks.append(("var", name))
            elif op.strip():
                self.toks.append(("op", op))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, val=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val and tok[1] != val):
            raise ValueError(f"parse error near token {self.i}: {tok}")
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input at token {self.i}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            t = self.term()
            acc = acc - t if op == "-" else acc + t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            c = Fraction(val)
            if self.peek() == ("op", "/"):
                self.take()
                c /= self.take("num")[1]
            base = Polynomial.constant(self.ring, c)
        elif kind == "var":
            self.take()
            try:
                idx = self.ring.var_index(val)
            except KeyError:
                raise ValueError(f"unknown variable {val!r}") from None
            base = Polynomial.variable(self.ring, idx)
        elif (kind, val) == ("op", "("):
            self.take()
            base = self.expr()
            self.take("op", ")")
        else:
            raise ValueError(f"unexpected token {val!r}")
        if self.peek() == ("op", "^"):
            self.take()
            base = base ** self.take("num")[1]
        return base
