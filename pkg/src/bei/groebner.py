"""Buchberger's algorithm with the Gebauer-Moeller criteria, normal forms and
ideal membership / equality decided through reduced Groebner bases."""

from __future__ import annotations

import random
from fractions import Fraction
from heapq import heapify, heappop, heappush
from itertools import combinations_with_replacement

from .linalg import SparseEchelon
from .poly import Polynomial, RingMismatch, _monic
from .ring import PolyRing


def _reduce(f: dict, leads: list, polys: list, p: int, guard: int, full: bool = True) -> dict:
    """Normal form of ``f`` modulo monic ``polys`` with leading monomials ``leads``.

    With ``full=False`` only the leading term is reduced (top reduction).
    ``f`` is consumed.
    """
    heap = [-m for m in f]
    heapify(heap)
    rem = {}
    nl = len(leads)
    while heap:
        m = -heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        k = 0
        while k < nl:
            if not ((m - leads[k]) & guard):
                break
            k += 1
        if k == nl:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
            continue
        t = m - leads[k]
        lm = leads[k]
        for gm, gc in polys[k].items():
            if gm == lm:
                continue
            mm = gm + t
            v = f.get(mm)
            d = c * gc
            if v is None:
                v = -d
                if p:
                    v %= p
                f[mm] = v
                heappush(heap, -mm)
            else:
                v -= d
                if p:
                    v %= p
                if v:
                    f[mm] = v
                else:
                    del f[mm]
    return rem


def _spoly(a: dict, la: int, b: dict, lb: int, lcm: int, p: int) -> dict:
    ta, tb = lcm - la, lcm - lb
    out = {m + ta: c for m, c in a.items() if m != la}
    for m, c in b.items():
        if m == lb:
            continue
        m += tb
        v = out.get(m)
        if v is None:
            out[m] = (-c % p) if p else -c
        else:
            v -= c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def groebner_raw(polys: list[dict], ring: PolyRing, stats: dict | None = None) -> list[dict]:
    """Reduced Groebner basis of raw polynomial dicts, sorted by leading monomial."""
    p = ring.field.p
    guard = ring.guard
    gens = [_monic(f, p) for f in polys if f]
    if not gens:
        return []
    for f in gens:
        if len(f) == 1 and 0 in f:
            return [{0: 1}]
    gens.sort(key=lambda f: (ring.degree(max(f)), max(f)))

    G: list[dict] = []
    L: list[int] = []
    live: list[bool] = []
    pairs: set = set()
    heap: list = []
    lcms: dict = {}
    n_spairs = 0

    def update(h: dict) -> None:
        lh = max(h)
        k = len(G)
        # Gebauer-Moeller: new pairs (i, k)
        cand = []
        for i in range(k):
            if live[i]:
                cand.append((i, ring.lcm(L[i], lh)))
        keep = []
        for idx, (i, l) in enumerate(cand):
            copr = l == L[i] + lh
            if copr:
                keep.append((i, l, True))
                continue
            dominated = False
            for jdx, (j, l2) in enumerate(cand):
                if jdx != idx and not ((l - l2) & guard) and (l2 != l or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                keep.append((i, l, False))
        new = [(i, l) for i, l, copr in keep if not copr]
        # prune old pairs
        dead = []
        for (i, j) in pairs:
            l = lcms[(i, j)]
            if not ((l - lh) & guard):
                if ring.lcm(L[i], lh) != l and ring.lcm(L[j], lh) != l:
                    dead.append((i, j))
        for pr in dead:
            pairs.discard(pr)
        for i in range(k):
            if live[i] and not ((L[i] - lh) & guard):
                live[i] = False
        G.append(h)
        L.append(lh)
        live.append(True)
        for i, l in new:
            pairs.add((i, k))
            lcms[(i, k)] = l
            heappush(heap, (ring.degree(l), l, i, k))

    for f in gens:
        h = _reduce(dict(f), L, G, p, guard, full=True) if G else dict(f)
        if h:
            h = _monic(h, p)
            if len(h) == 1 and 0 in h:
                return [{0: 1}]
            update(h)

    while heap:
        _, l, i, j = heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        n_spairs += 1
        s = _spoly(G[i], L[i], G[j], L[j], l, p)
        h = _reduce(s, L, G, p, guard, full=True)
        if h:
            h = _monic(h, p)
            if len(h) == 1 and 0 in h:
                return [{0: 1}]
            update(h)

    if stats is not None:
        stats["spairs"] = stats.get("spairs", 0) + n_spairs
        stats["gb_calls"] = stats.get("gb_calls", 0) + 1
    return _interreduce([g for g, ok in zip(G, live) if ok], ring)


def _interreduce(G: list[dict], ring: PolyRing) -> list[dict]:
    p = ring.field.p
    guard = ring.guard
    items = sorted(((max(g), g) for g in G), key=lambda t: t[0])
    # minimal basis: drop elements whose leading monomial is divisible by another's
    mins = []
    for lm, g in items:
        if any(not ((lm - l2) & guard) for l2, _ in mins):
            continue
        mins.append((lm, g))
    leads = [lm for lm, _ in mins]
    out = []
    for k, (lm, g) in enumerate(mins):
        others_l = leads[:k] + leads[k + 1:]
        others_g = [h for _, h in mins[:k]] + [h for _, h in mins[k + 1:]]
        tail = {m: c for m, c in g.items() if m != lm}
        r = _reduce(tail, others_l, others_g, p, guard, full=True)
        r[lm] = 1
        out.append(r)
    # tails reduced against pre-reduction basis; leading terms unchanged, so
    # one pass suffices for a reduced basis
    return out


class GroebnerBasis:
    """A reduced, monic Groebner basis (the canonical form of an ideal)."""

    __slots__ = ("ring", "_polys", "_leads")

    def __init__(self, ring: PolyRing, polys: list[dict]):
        self.ring = ring
        self._polys = polys
        self._leads = [max(g) for g in polys]

    @property
    def generators(self) -> list[Polynomial]:
        return [Polynomial(self.ring, g) for g in self._polys]

    @property
    def order(self):
        return self.ring.order

    @property
    def raw(self) -> list[dict]:
        return self._polys

    @property
    def leading_monomials(self) -> list[int]:
        return list(self._leads)

    def __len__(self) -> int:
        return len(self._polys)

    def is_zero_ideal(self) -> bool:
        return not self._polys

    def is_unit_ideal(self) -> bool:
        return self._polys == [{0: 1}]

    def reduce_raw(self, f: dict, full: bool = True) -> dict:
        return _reduce(dict(f), self._leads, self._polys, self.ring.field.p, self.ring.guard, full)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch("polynomial and basis live in different rings")
        return Polynomial(self.ring, self.reduce_raw(f.terms))

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce_raw(f.terms)

    def key(self) -> tuple:
        return tuple(tuple(sorted(g.items())) for g in self._polys)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_strings(self) -> list[str]:
        return [str(g) for g in self.generators]

    def __repr__(self) -> str:
        return f"GroebnerBasis({self.to_strings()})"


def buchberger(gens: list[Polynomial], ring: PolyRing | None = None, stats: dict | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch("generators live in different rings")
    return GroebnerBasis(ring, groebner_raw([g.terms for g in gens], ring, stats))


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(p)


def reduce_randomized(p: Polynomial, gens: list[Polynomial], rng: random.Random) -> Polynomial:
    """Full reduction choosing a random eligible divisor at every step.

    Used to test confluence: against a Groebner basis every strategy must
    reach the same normal form.
    """
    ring = p.ring
    guard = ring.guard
    fp = ring.field.p
    G = [_monic(g.terms, fp) for g in gens if g]
    leads = [max(g) for g in G]
    f = dict(p.terms)
    rem = {}
    while f:
        m = max(f)
        c = f.pop(m)
        cands = [k for k, l in enumerate(leads) if not ((m - l) & guard)]
        if not cands:
            rem[m] = c
            continue
        k = rng.choice(cands)
        t = m - leads[k]
        for gm, gc in G[k].items():
            if gm == leads[k]:
                continue
            mm = gm + t
            v = f.get(mm, 0) - c * gc
            if fp:
                v %= fp
            if v:
                f[mm] = v
            else:
                f.pop(mm, None)
    return Polynomial(ring, rem)


def monomials_of_degree(ring: PolyRing, d: int) -> list[int]:
    if d < 0:
        return []
    vm = [ring.var_monomial(i) for i in range(ring.nvars)]
    return [sum(c) for c in combinations_with_replacement(vm, d)] if d else [0]


def truncated_span(gens: list[Polynomial], D: int) -> SparseEchelon:
    """Echelon form of ``{m * g : deg(m * g) <= D}`` for homogeneous ``gens``."""
    ring = gens[0].ring
    ech = SparseEchelon(ring.field.p)
    for g in gens:
        if not g:
            continue
        dg = g.total_degree()
        for d in range(0, D - dg + 1):
            for m in monomials_of_degree(ring, d):
                ech.add({k + m: c for k, c in g.terms.items()})
    return ech


def truncated_membership(f: Polynomial, gens: list[Polynomial], D: int) -> bool:
    """Linear-algebra membership oracle, independent of Buchberger.

    For homogeneous ``gens`` and homogeneous ``f`` of degree <= D this decides
    ``f in <gens>`` exactly.
    """
    gens = [g for g in gens if g]
    if not f:
        return True
    if not gens:
        return False
    return truncated_span(gens, D).contains(f.terms)


def ideal_equal_raw(a: list[dict], b: list[dict], ring: PolyRing) -> bool:
    return _key(groebner_raw(a, ring)) == _key(groebner_raw(b, ring))


def _key(G):
    return tuple(tuple(sorted(g.items())) for g in G)
