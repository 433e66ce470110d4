"""Ideals and the ideal-level algebra built on Groebner bases."""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from .groebner import GroebnerBasis, groebner_raw, monomials_of_degree
from .linalg import SparseEchelon
from .poly import Polynomial, RingMismatch, _divide_exact, _mul
from .ring import PolyRing


class Ideal:
    """A finitely generated ideal with a write-once Groebner basis cache."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = (), provenance: str = ""):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatch("generator lives in another ring")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self.provenance = provenance
        self._gb: GroebnerBasis | None = None

    # Groebner machinery -------------------------------------------------

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = GroebnerBasis(self.ring, groebner_raw([g.terms for g in self.generators], self.ring))
        return self._gb

    def check_gb_cache(self) -> bool:
        """The cached basis and the generators reduce to zero against each other."""
        gb = self.gb()
        if any(gb.reduce_raw(g.terms) for g in self.generators):
            return False
        mine = Ideal(self.ring, self.generators).gb()
        return all(not mine.reduce_raw(g) for g in gb.raw)

    def contains(self, f: Polynomial) -> bool:
        return self.gb().contains(f)

    def __contains__(self, f: Polynomial) -> bool:
        return self.contains(f)

    def is_subset(self, other: "Ideal") -> bool:
        gb = other.gb()
        return all(gb.contains(g) for g in self.generators)

    def equals(self, other: "Ideal") -> bool:
        return ideal_equal(self, other)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.gb().is_unit_ideal()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.gb().normal_form(f)

    # algebra -------------------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, s: int) -> "Ideal":
        return ideal_power(self, s)

    def colon(self, f: Polynomial) -> "Ideal":
        return ideal_colon_element(self, f)

    def intersect(self, other: "Ideal") -> "Ideal":
        return ideal_intersect(self, other)

    def minimal_generators(self) -> list[Polynomial]:
        return minimal_generators(self)

    def with_provenance(self, tag: str) -> "Ideal":
        out = Ideal(self.ring, self.generators, tag)
        out._gb = self._gb
        return out

    def to_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.generators], self.provenance)

    # serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ring": self.ring.describe(),
            "generators": [str(g) for g in self.generators],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, d: dict | str) -> "Ideal":
        if isinstance(d, str):
            d = json.loads(d)
        ring = PolyRing.from_description(d["ring"])
        gens = [Polynomial.parse(ring, s) for s in d["generators"]]
        return cls(ring, gens, d.get("provenance", ""))

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators[:4])
        more = ", ..." if len(self.generators) > 4 else ""
        tag = f" [{self.provenance}]" if self.provenance else ""
        return f"Ideal<{gens}{more}>{tag}"


def _same_ring(a: Ideal, b: Ideal) -> None:
    if a.ring != b.ring:
        raise RingMismatch("ideals live in different rings")


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    """Decided by comparing reduced Groebner bases."""
    _same_ring(a, b)
    return a.gb() == b.gb()


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    return Ideal(a.ring, a.generators + b.generators)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    seen = {}
    p = a.ring.field.p
    for f in a.generators:
        for g in b.generators:
            h = Polynomial(a.ring, _mul(f.terms, g.terms, p))
            seen.setdefault(h, None)
    return Ideal(a.ring, list(seen))


def ideal_power(a: Ideal, s: int) -> Ideal:
    if s < 1:
        raise ValueError("power must be at least 1")
    out = a
    for _ in range(s - 1):
        out = ideal_product(out, a)
    return out if s > 1 else Ideal(a.ring, a.generators, a.provenance)


def _embed(f: dict, src: PolyRing, dst: PolyRing, shift: int) -> dict:
    vm = [dst.var_monomial(i + shift) for i in range(src.nvars)]
    out = {}
    for m, c in f.items():
        e = src.exponents(m)
        out[sum(k * v for k, v in zip(e, vm) if k)] = c
    return out


def _restrict(f: dict, src: PolyRing, dst: PolyRing, shift: int) -> dict | None:
    out = {}
    for m, c in f.items():
        e = src.exponents(m)
        if any(e[:shift]):
            return None
        out[dst.monomial(e[shift:])] = c
    return out


def intersect_raw(a: Sequence[dict], b: Sequence[dict], ring: PolyRing) -> list[dict]:
    """Generators of ``<a> & <b>`` by eliminating ``t`` from ``t*a + (1-t)*b``."""
    if not a or not b:
        return []
    ext = ring.with_elimination_variable()
    p = ring.field.p
    t = ext.var_monomial(0)
    gens = []
    for f in a:
        gens.append({m + t: c for m, c in _embed(f, ring, ext, 1).items()})
    for g in b:
        e = _embed(g, ring, ext, 1)
        h = dict(e)
        for m, c in e.items():
            h[m + t] = (-c % p) if p else -c
        gens.append(h)
    out = []
    for g in groebner_raw(gens, ext):
        r = _restrict(g, ext, ring, 1)
        if r is not None:
            out.append(r)
    return out


def ideal_intersect(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    gens = intersect_raw([g.terms for g in a.generators], [g.terms for g in b.generators], a.ring)
    return Ideal(a.ring, [Polynomial(a.ring, g) for g in gens])


def colon_raw(a: Sequence[dict], f: dict, ring: PolyRing) -> list[dict]:
    """Generators of ``<a> : f`` (a reduced Groebner basis)."""
    if not f:
        raise ValueError("colon by the zero polynomial")
    if not a:
        return []
    gb = groebner_raw(list(a), ring)
    if gb == [{0: 1}]:
        return [{0: 1}]
    # f in a gives the unit ideal
    from .groebner import _reduce

    if not _reduce(dict(f), [max(g) for g in gb], gb, ring.field.p, ring.guard):
        return [{0: 1}]
    inter = intersect_raw(gb, [f], ring)
    return groebner_raw([_divide_exact(h, f, ring) for h in inter], ring)


def ideal_colon_element(a: Ideal, f: Polynomial) -> Ideal:
    """``{g : g*f in a}`` via ``(a & <f>) / f``."""
    if f.ring != a.ring:
        raise RingMismatch("polynomial lives in another ring")
    if not f:
        raise ValueError("colon by the zero polynomial")
    gens = colon_raw([g.terms for g in a.generators], f.terms, a.ring)
    out = Ideal(a.ring, [Polynomial(a.ring, g) for g in gens])
    out._gb = GroebnerBasis(a.ring, gens)
    return out


def minimal_generators(a: Ideal) -> list[Polynomial]:
    """A minimal homogeneous generating set, chosen among the given generators.

    Works degree by degree: a generator of degree ``d`` is kept iff it is not
    in the degree-``d`` span of the lower-degree and already kept generators.
    """
    if not a.is_homogeneous():
        raise ValueError("minimal_generators needs a homogeneous ideal")
    ring = a.ring
    p = ring.field.p
    by_deg: dict[int, list[Polynomial]] = {}
    for g in a.generators:
        by_deg.setdefault(g.total_degree(), []).append(g)
    kept: list[Polynomial] = []
    for d in sorted(by_deg):
        ech = SparseEchelon(p)
        for h in kept:
            for m in monomials_of_degree(ring, d - h.total_degree()):
                ech.add({k + m: c for k, c in h.terms.items()})
        for g in by_deg[d]:
            if ech.add(dict(g.terms)):
                kept.append(g)
    return kept


def colon_power_stability_check(a: Ideal, g: Polynomial, n_max: int) -> bool:
    """True iff ``a : g == a : g^n`` for every ``2 <= n <= n_max``."""
    base = ideal_colon_element(a, g)
    gn = g
    for _ in range(2, n_max + 1):
        gn = gn * g
        if not ideal_equal(base, ideal_colon_element(a, gn)):
            return False
    return True


def truncated_colon_complete(a: Ideal, f: Polynomial, colon: Ideal, D: int) -> bool:
    """Degree-truncated completeness check for a colon ideal.

    Every homogeneous ``h`` of degree ``<= D`` with ``h*f in a`` must lie in
    ``colon``.  Such ``h`` form the kernel of ``h -> h*f`` modulo the
    degree-``(d + deg f)`` part of ``a``, found by plain linear algebra on
    monomial multiples of the generators.
    """
    ring = a.ring
    p = ring.field.p
    df = f.total_degree()
    gb = colon.gb()
    for d in range(0, D + 1):
        span = SparseEchelon(p)
        for g in a.generators:
            for m in monomials_of_degree(ring, d + df - g.total_degree()):
                span.add({k + m: c for k, c in g.terms.items()})
        # augmented rows: image columns (1, k) dominate tag columns (0, m)
        aug = SparseEchelon(p)
        for m in monomials_of_degree(ring, d):
            img = span.reduce({k + m: c for k, c in f.terms.items()})
            row = {(1, k): c for k, c in img.items()}
            row[(0, m)] = 1
            aug.add(row)
        for piv, row in aug.rows.items():
            if piv[0] == 0 and gb.reduce_raw({k: c for (_, k), c in row.items()}):
                return False
    return True
