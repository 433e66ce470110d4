"""Polynomial rings, monomial orders and the packed monomial encoding.

A monomial is a single Python ``int`` laid out as::

    [ order key rows ... | total degree | e_1 | e_2 | ... | e_N ]
      high bits                                          low bits

Each exponent occupies an 8-bit field whose top bit is a guard, so
exponents must stay below 128.  Every part of the layout is linear in the
exponent vector, hence

* multiplication is integer addition and exact division is subtraction;
* comparing two packed ints compares the monomials in the ring's order
  (the key rows form a full-rank weight matrix);
* ``b`` divides ``a`` iff ``(a - b) & guard_mask == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .field import CoefficientField

EXP_BITS = 8
KEY_BITS = 12
_EXP_MASK = (1 << EXP_BITS) - 1
_KEY_MASK = (1 << KEY_BITS) - 1
MAX_EXPONENT = (1 << (EXP_BITS - 1)) - 1


@dataclass(frozen=True)
class MonomialOrder:
    """``degrevlex``, ``lex`` or ``elim`` (first ``block`` variables eliminated)."""

    kind: str = "degrevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs block >= 1")

    @classmethod
    def parse(cls, spec: str) -> "MonomialOrder":
        return cls(spec.strip().lower())

    def weight_rows(self, nvars: int) -> list[list[int]]:
        if self.kind == "lex":
            return [[int(i == r) for i in range(nvars)] for r in range(nvars)]
        # degrevlex as lex on (deg, e_1+..+e_{N-1}, ..., e_1)
        rows = [[1] * nvars]
        rows += [[int(i < nvars - r) for i in range(nvars)] for r in range(1, nvars)]
        if self.kind == "elim":
            if self.block > nvars:
                raise ValueError("elimination block larger than the ring")
            rows.insert(0, [int(i < self.block) for i in range(nvars)])
        return rows

    def __str__(self) -> str:
        return f"elim({self.block})" if self.kind == "elim" else self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


@dataclass(frozen=True)
class PolyRing:
    """A polynomial ring over a coefficient field with a fixed monomial order."""

    names: tuple[str, ...]
    field: CoefficientField = CoefficientField()
    order: MonomialOrder = DEGREVLEX
    n_vertices: int | None = None
    _tables: dict = dc_field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if self.n_vertices is not None and len(self.names) != 2 * self.n_vertices:
            raise ValueError("a graph ring has exactly 2n variables")
        nv = len(self.names)
        rows = self.order.weight_rows(nv)
        deg_shift = nv * EXP_BITS
        key_shifts = [deg_shift + KEY_BITS * (len(rows) - r) for r in range(len(rows))]
        var_mons = []
        for i in range(nv):
            m = (1 << (EXP_BITS * i)) | (1 << deg_shift)
            for r, row in enumerate(rows):
                if row[i]:
                    m += row[i] << key_shifts[r]
            var_mons.append(m)
        guard = 0
        for i in range(nv):
            guard |= 1 << (EXP_BITS * i + EXP_BITS - 1)
        t = dict(
            var_mons=var_mons,
            guard=guard,
            deg_shift=deg_shift,
            index={nm: i for i, nm in enumerate(self.names)},
        )
        object.__setattr__(self, "_tables", t)

    # constructors -------------------------------------------------------

    @classmethod
    def for_graph(
        cls,
        n: int,
        field: CoefficientField | None = None,
        order: MonomialOrder | None = None,
    ) -> "PolyRing":
        """``k[x_1..x_n, y_1..y_n]``."""
        if n < 1:
            raise ValueError("need at least one vertex")
        names = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(
            f"y{i}" for i in range(1, n + 1)
        )
        return cls(names, field or CoefficientField(), order or DEGREVLEX, n)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.names, self.field, order, self.n_vertices)

    def with_field(self, field: CoefficientField) -> "PolyRing":
        return PolyRing(self.names, field, self.order, self.n_vertices)

    def with_elimination_variable(self, name: str = "t") -> "PolyRing":
        """Ring with one extra variable first, under an order eliminating it."""
        return PolyRing((name,) + self.names, self.field, MonomialOrder("elim", 1))

    # variables ------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.names)

    def var_index(self, name: str) -> int:
        return self._tables["index"][name]

    def x(self, i: int) -> int:
        """Index of ``x_i`` (vertices are 1-based)."""
        self._check_vertex(i)
        return i - 1

    def y(self, i: int) -> int:
        self._check_vertex(i)
        return self.n_vertices + i - 1

    def _check_vertex(self, i: int) -> None:
        if not 1 <= i <= self.n_vertices:
            raise ValueError(f"vertex {i} outside 1..{self.n_vertices}")

    # monomials -------------------------------------------------------------

    @property
    def guard(self) -> int:
        return self._tables["guard"]

    def var_monomial(self, i: int) -> int:
        return self._tables["var_mons"][i]

    def monomial(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        vm = self._tables["var_mons"]
        m = 0
        for i, e in enumerate(exps):
            if e:
                if e < 0 or e > MAX_EXPONENT:
                    raise ValueError(f"exponent {e} out of range")
                m += e * vm[i]
        return m

    def exponents(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (EXP_BITS * i)) & _EXP_MASK for i in range(self.nvars))

    def degree(self, m: int) -> int:
        return (m >> self._tables["deg_shift"]) & _KEY_MASK

    def divides(self, a: int, b: int) -> bool:
        """True iff monomial ``a`` divides ``b``."""
        return not ((b - a) & self._tables["guard"])

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.exponents(a), self.exponents(b)
        return self.monomial([x if x > y else y for x, y in zip(ea, eb)])

    def gcd(self, a: int, b: int) -> int:
        ea, eb = self.exponents(a), self.exponents(b)
        return self.monomial([x if x < y else y for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.exponents(a), self.exponents(b)
        return not any(x and y for x, y in zip(ea, eb))

    def monomial_str(self, m: int) -> str:
        parts = []
        for nm, e in zip(self.names, self.exponents(m)):
            if e == 1:
                parts.append(nm)
            elif e:
                parts.append(f"{nm}^{e}")
        return "*".join(parts) if parts else "1"

    def convert_monomial(self, m: int, other: "PolyRing") -> int:
        """Re-encode a monomial of ``other`` (same variables) in this ring."""
        if other.names != self.names:
            raise ValueError("rings have different variables")
        return self.monomial(other.exponents(m))

    def describe(self) -> dict:
        return {
            "variables": list(self.names),
            "field": str(self.field),
            "order": str(self.order),
            "n_vertices": self.n_vertices,
        }

    @classmethod
    def from_description(cls, d: dict) -> "PolyRing":
        order = d["order"]
        if order.startswith("elim("):
            mo = MonomialOrder("elim", int(order[5:-1]))
        else:
            mo = MonomialOrder(order)
        return cls(
            tuple(d["variables"]), CoefficientField.parse(d["field"]), mo, d.get("n_vertices")
        )
