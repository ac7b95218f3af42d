"""Buchberger's algorithm with the Gebauer--Moeller pair criteria and the
sugar selection strategy, normal forms, and cofactor-tracking lifts.

Internally polynomials are plain dicts ``{exponent tuple: coefficient}``;
the public surface speaks :class:`~satnorm.poly.Poly`.
"""

from __future__ import annotations

import heapq
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import RingMismatch
from .order import GREVLEX, MonomialOrder
from .poly import Poly, PolyRing


@dataclass
class GBStats:
    computations: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    largest_basis: int = 0

    def as_dict(self):
        return {
            "computations": self.computations,
            "pairs_reduced": self.pairs_reduced,
            "zero_reductions": self.zero_reductions,
            "largest_basis": self.largest_basis,
        }


_STATS: ContextVar = ContextVar("satnorm_gb_stats", default=None)


@contextmanager
def collect_stats():
    """Count Groebner work done inside the ``with`` block."""
    stats = GBStats()
    token = _STATS.set(stats)
    try:
        yield stats
    finally:
        _STATS.reset(token)


# -- exponent helpers --------------------------------------------------------


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _axpy(target, c, shift, src, p):
    """target -= c * x^shift * src (in place)."""
    for m, v in src.items():
        mm = _add(m, shift)
        old = target.get(mm)
        nv = -c * v if old is None else old - c * v
        if p:
            nv %= p
        if nv:
            target[mm] = nv
        elif old is not None:
            del target[mm]


def _scale(d, c, p):
    if p:
        return {m: v * c % p for m, v in d.items()}
    return {m: v * c for m, v in d.items()}


def _inv(c, p):
    return pow(c, -1, p) if p else 1 / c


class _Entry:
    __slots__ = ("lm", "poly", "sugar", "cof")

    def __init__(self, lm, poly, sugar, cof):
        self.lm = lm
        self.poly = poly
        self.sugar = sugar
        self.cof = cof


def _reduce(f, basis, order, p, cof=None, tail=True):
    """Fully reduce dict ``f`` by ``basis`` (monic entries).

    Returns ``(remainder, cofactors)``; when ``cof`` is given it is the
    representation of ``f`` over the original inputs and is updated so that
    the returned cofactors represent the remainder.
    """
    if not f:
        return {}, cof
    f = dict(f)
    hk = order.heapkey
    heap = [(hk(m), m) for m in f]
    heapq.heapify(heap)
    queued = set(f)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        queued.discard(m)
        c = f.pop(m, None)
        if c is None:
            continue
        for g in basis:
            if _divides(g.lm, m):
                shift = _sub(m, g.lm)
                for gm, gv in g.poly.items():
                    if gm == g.lm:
                        continue
                    mm = _add(gm, shift)
                    old = f.get(mm)
                    nv = -c * gv if old is None else old - c * gv
                    if p:
                        nv %= p
                    if nv:
                        f[mm] = nv
                        if mm not in queued:
                            queued.add(mm)
                            heapq.heappush(heap, (hk(mm), mm))
                    elif old is not None:
                        del f[mm]
                if cof is not None:
                    for k, gc in enumerate(g.cof):
                        if gc:
                            _axpy(cof[k], c, shift, gc, p)
                break
        else:
            rem[m] = c
            if not tail:
                rem.update(f)
                return rem, cof
    return rem, cof


def _sugar_degree(d):
    return max((sum(m) for m in d), default=0)


def _buchberger(polys, order, p, nvars, *, stop_on_unit=False, track=False, interreduce=True):
    stats = _STATS.get()
    key = order.key
    unit_exp = (0,) * nvars
    entries: list[_Entry] = []
    G: list[int] = []
    B: list[tuple] = []
    nin = len(polys)

    one = 1 if p else Fraction(1)

    def unit_cof(k):
        return [({unit_exp: one} if i == k else {}) for i in range(nin)]

    def update(h):
        nonlocal G, B
        lm_h = entries[h].lm
        C = list(G)
        D = []
        while C:
            g1 = C.pop(0)
            l1 = _lcm(lm_h, entries[g1].lm)
            if _coprime(lm_h, entries[g1].lm) or not (
                any(_divides(_lcm(lm_h, entries[g2].lm), l1) for g2 in C)
                or any(_divides(_lcm(lm_h, entries[g2].lm), l1) for g2 in D)
            ):
                D.append(g1)
        new_pairs = []
        for g in D:
            lm_g = entries[g].lm
            if _coprime(lm_h, lm_g):
                continue
            l = _lcm(lm_h, lm_g)
            sugar = max(
                entries[h].sugar + sum(l) - sum(lm_h), entries[g].sugar + sum(l) - sum(lm_g)
            )
            new_pairs.append((sugar, key(l), g, h, l))
        kept = []
        for pair in B:
            l, i, j = pair[4], pair[2], pair[3]
            if (
                _divides(lm_h, l)
                and _lcm(entries[i].lm, lm_h) != l
                and _lcm(entries[j].lm, lm_h) != l
            ):
                continue
            kept.append(pair)
        B = kept + new_pairs
        G = [g for g in G if not _divides(lm_h, entries[g].lm)] + [h]

    def add(poly, sugar, cof):
        lm = max(poly, key=key)
        inv = _inv(poly[lm], p)
        poly = _scale(poly, inv, p)
        if cof is not None:
            cof = [_scale(c, inv, p) for c in cof]
        entries.append(_Entry(lm, poly, sugar, cof))
        update(len(entries) - 1)
        if stats is not None:
            stats.largest_basis = max(stats.largest_basis, len(G))
        return lm == unit_exp

    def unit_result():
        e = entries[-1]
        return [e]

    for k, f in enumerate(polys):
        if not f:
            continue
        r, rc = _reduce(f, [entries[g] for g in G], order, p, unit_cof(k) if track else None)
        if r and add(r, _sugar_degree(f), rc) and stop_on_unit:
            return unit_result()

    while B:
        pair = min(B)
        B.remove(pair)
        sugar, _, i, j, l = pair
        ei, ej = entries[i], entries[j]
        si, sj = _sub(l, ei.lm), _sub(l, ej.lm)
        s = {}
        _axpy(s, p - 1 if p else -1, si, ei.poly, p)
        _axpy(s, 1, sj, ej.poly, p)
        scof = None
        if track:
            scof = [dict() for _ in range(nin)]
            for k in range(nin):
                _axpy(scof[k], p - 1 if p else -1, si, ei.cof[k], p)
                _axpy(scof[k], 1, sj, ej.cof[k], p)
        r, rc = _reduce(s, [entries[g] for g in G], order, p, scof)
        if stats is not None:
            stats.pairs_reduced += 1
            if not r:
                stats.zero_reductions += 1
        if r and add(r, sugar, rc) and stop_on_unit:
            return unit_result()

    basis = [entries[g] for g in G]
    if interreduce:
        basis.sort(key=lambda e: key(e.lm))
        out = []
        for idx, e in enumerate(basis):
            others = basis[:idx] + basis[idx + 1 :]
            poly = {e.lm: e.poly[e.lm]}
            tail = {m: v for m, v in e.poly.items() if m != e.lm}
            r, _ = _reduce(tail, others, order, p)
            poly.update(r)
            out.append(_Entry(e.lm, poly, e.sugar, None))
        basis = out
    return basis


# -- public surface ------------------------------------------------------------


class GroebnerBasis:
    """Reduced, monic Groebner basis sorted by descending leading monomial."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, generators, source=()):
        self.ring = ring
        self.order = order
        self.generators = tuple(generators)
        self.source = tuple(source)
        self._entries = [
            _Entry(g.leading_term(order)[0], g.terms, 0, None) for g in self.generators
        ]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def is_zero(self) -> bool:
        return not self.generators

    def leading_monomials(self):
        return [e.lm for e in self._entries]

    def is_monomial_ideal(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def reduce(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        r, _ = _reduce(f.terms, self._entries, self.order, self.ring.p)
        return Poly(self.ring, r)

    def contains(self, f: Poly) -> bool:
        return not self.reduce(f)

    def verify(self) -> bool:
        """S-pairs reduce to zero and every source generator has NF zero."""
        p = self.ring.p
        es = self._entries
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                l = _lcm(es[i].lm, es[j].lm)
                s = {}
                _axpy(s, p - 1 if p else -1, _sub(l, es[i].lm), es[i].poly, p)
                _axpy(s, 1, _sub(l, es[j].lm), es[j].poly, p)
                if _reduce(s, es, self.order, p)[0]:
                    return False
        return all(self.contains(g) for g in self.source)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(map(str, self.generators))}], {self.order})"


def groebner_basis(
    gens: Sequence[Poly], order: MonomialOrder = GREVLEX, *, ring=None, stop_on_unit=False
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    With ``stop_on_unit`` the computation ends as soon as a nonzero constant
    appears (the result is then the unit basis ``{1}``).
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"{g.ring} vs {ring}")
    stats = _STATS.get()
    if stats is not None:
        stats.computations += 1
    entries = _buchberger([g.terms for g in gens], order, ring.p, ring.nvars, stop_on_unit=stop_on_unit)
    if any(e.lm == (0,) * ring.nvars for e in entries):
        return GroebnerBasis(ring, order, [ring.one()], gens)
    polys = [Poly(ring, e.poly) for e in entries]
    polys.sort(key=lambda g: order.key(g.leading_term(order)[0]), reverse=True)
    return GroebnerBasis(ring, order, polys, gens)


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    return gb.reduce(f)


def lift(f: Poly, gens: Sequence[Poly], order: MonomialOrder = GREVLEX):
    """Cofactors ``c`` with ``f == sum(c[i] * gens[i])``, or ``None`` if ``f``
    is not in the ideal."""
    ring = f.ring
    gens = list(gens)
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"{g.ring} vs {ring}")
    if not f:
        return [ring.zero() for _ in gens]
    stats = _STATS.get()
    if stats is not None:
        stats.computations += 1
    p = ring.p
    basis = _buchberger(
        [g.terms for g in gens], order, p, ring.nvars, track=True, interreduce=False
    )
    # starting from zero, cof accumulates (remainder - f) over the inputs
    cof = [dict() for _ in gens]
    r, cof = _reduce(f.terms, basis, order, p, cof)
    if r:
        return None
    return [-Poly(ring, c) for c in cof]
