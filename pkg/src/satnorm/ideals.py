"""Ideals of (quotients of) polynomial rings and the decision procedures
built on Groebner bases: membership, radical membership, elimination,
intersections, morphism kernels, nil-ideal and subalgebra membership.

An :class:`Ideal` may live in a quotient ring ``k[y]/J``; it then carries
the relations ``J`` and every answer is computed modulo them.
"""

from __future__ import annotations

import threading
from itertools import combinations_with_replacement
from typing import Sequence

from .errors import AmbientMismatch, RingMismatch
from .groebner import GroebnerBasis, groebner_basis
from .order import GREVLEX, MonomialOrder, elimination
from .poly import Poly, PolyRing

RADICAL_EXPONENT_BOUND = 32


def _dedupe(polys):
    seen = set()
    out = []
    for f in polys:
        if f and f not in seen:
            seen.add(f)
            out.append(f)
    return tuple(out)


class Ideal:
    """Finitely generated ideal, optionally inside the quotient by ``relations``."""

    def __init__(self, ring: PolyRing, gens: Sequence[Poly] = (), relations: Sequence[Poly] = ()):
        self.ring = ring
        for f in (*gens, *relations):
            if f.ring != ring:
                raise RingMismatch(f"generator {f} is not in {ring}")
        self.gens = _dedupe(gens)
        self.relations = _dedupe(relations)
        self._gbs: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, ring: PolyRing, gens: Sequence[str], relations: Sequence[str] = ()) -> Ideal:
        return cls(ring, [ring.parse(g) for g in gens], [ring.parse(r) for r in relations])

    @property
    def all_gens(self) -> tuple:
        return self.gens + self.relations

    def with_gens(self, gens) -> Ideal:
        return Ideal(self.ring, gens, self.relations)

    def ambient_ideal(self) -> Ideal:
        """The zero ideal of the same quotient ring."""
        return Ideal(self.ring, (), self.relations)

    def gb(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        with self._lock:
            gb = self._gbs.get(order)
            if gb is None:
                gb = groebner_basis(self.all_gens, order, ring=self.ring)
                self._gbs[order] = gb
            return gb

    def reduce(self, f: Poly) -> Poly:
        return self.gb().reduce(f)

    def contains(self, f: Poly) -> bool:
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        return not self.reduce(f)

    __contains__ = contains

    def contains_ideal(self, other: Ideal) -> bool:
        _check_ambient(self, other)
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: Ideal) -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        """True when every generator vanishes in the ambient quotient."""
        amb = self.ambient_ideal()
        return all(amb.contains(g) for g in self.gens)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __pow__(self, n):
        return ideal_power(self, n)

    def __repr__(self):
        body = ", ".join(map(str, self.gens)) or "0"
        rel = f" mod ({', '.join(map(str, self.relations))})" if self.relations else ""
        return f"Ideal({body}){rel} in {self.ring}"


def _check_ambient(I: Ideal, J: Ideal):
    if I.ring != J.ring or set(I.relations) != set(J.relations):
        raise AmbientMismatch(f"{I!r} and {J!r} live in different rings")


# -- ideal arithmetic ----------------------------------------------------------


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_ambient(I, J)
    return I.with_gens(I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check_ambient(I, J)
    return I.with_gens([f * g for f in I.gens for g in J.gens])


def power_generators(gens: Sequence[Poly], n: int) -> list:
    """Generators of the n-th power: all products of n generators (with repetition)."""
    if not gens:
        return []
    ring = gens[0].ring
    if n == 0:
        return [ring.one()]
    # each product extends the product of its prefix, which sorts earlier
    memo = {(): ring.one()}
    for size in range(1, n + 1):
        for combo in combinations_with_replacement(range(len(gens)), size):
            memo[combo] = memo[combo[:-1]] * gens[combo[-1]]
    return [memo[c] for c in combinations_with_replacement(range(len(gens)), n)]


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("ideal power must be non-negative")
    if n == 0:
        return I.with_gens([I.ring.one()])
    return I.with_gens(power_generators(I.gens, n))


def ideal_combine(op: str, I: Ideal, J: Ideal | int | None = None) -> Ideal:
    """``op`` is ``"sum"``, ``"product"`` or ``"power"`` (then ``J`` is the exponent)."""
    if op == "sum":
        return ideal_sum(I, J)
    if op == "product":
        return ideal_product(I, J)
    if op == "power":
        return ideal_power(I, J)
    raise ValueError(f"unknown ideal operation {op!r}")


# -- elimination -------------------------------------------------------------


def _extend_front(ring: PolyRing, names) -> tuple:
    """Ring with fresh variables in front, plus positions of the old ones."""
    big = ring.extend(names, front=True)
    return big, [len(names) + i for i in range(ring.nvars)]


def _drop_front(f: Poly, k: int, target: PolyRing) -> Poly:
    return Poly(target, {e[k:]: c for e, c in f.terms.items()})


def elimination_ideal(I: Ideal, drop: Sequence[str]) -> Ideal:
    """I (relations included) intersected with k[remaining variables].

    The result lives in the polynomial ring on the remaining variables (in
    their original order) and carries no relations of its own: eliminated
    relations are part of its generators.
    """
    drop = list(drop)
    for v in drop:
        I.ring.index(v)
    if not drop:
        return I
    keep = [v for v in I.ring.vars if v not in drop]
    order = elimination(range(len(drop)))
    big = PolyRing(I.ring.field, tuple(drop) + tuple(keep))
    positions = [big.index(v) for v in I.ring.vars]
    gens = [g.relabel(big, positions) for g in I.all_gens]
    gb = groebner_basis(gens, order, ring=big)
    k = len(drop)
    sub = PolyRing(I.ring.field, tuple(keep))
    out = [_drop_front(g, k, sub) for g in gb if not any(any(e[:k]) for e in g.terms)]
    return Ideal(sub, out)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via (t*I + (1-t)*J) ∩ k[x]."""
    _check_ambient(I, J)
    ring = I.ring
    big, pos = _extend_front(ring, ["_t"])
    t = big.var("_t")
    gens = [t * g.relabel(big, pos) for g in I.all_gens]
    gens += [(1 - t) * g.relabel(big, pos) for g in J.all_gens]
    gb = groebner_basis(gens, elimination([0]), ring=big)
    out = [_drop_front(g, 1, ring) for g in gb if not any(e[0] for e in g.terms)]
    amb = I.ambient_ideal()
    return I.with_gens([g for g in out if not amb.contains(g)])


# -- radicals ----------------------------------------------------------------


def radical_membership(f: Poly, I: Ideal) -> bool:
    """Decide f ∈ √I by Rabinowitsch: 1 ∈ I + (1 - z*f) in one more variable."""
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    if I.contains(f):
        return True
    big, pos = _extend_front(I.ring, ["_z"])
    z = big.var("_z")
    gens = [g.relabel(big, pos) for g in I.all_gens]
    gens.append(1 - z * f.relabel(big, pos))
    return groebner_basis(gens, GREVLEX, ring=big, stop_on_unit=True).is_unit()


def radical_exponent(f: Poly, I: Ideal, bound: int = RADICAL_EXPONENT_BOUND) -> int | None:
    """Smallest n <= bound with f^n ∈ I, else None."""
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    gb = I.gb()
    r = gb.reduce(f)
    n = 1
    while n <= bound:
        if not r:
            return n
        r = gb.reduce(r * f)
        n += 1
    return None


def is_nil_ideal(N: Ideal) -> bool:
    """Every element of N is nilpotent in the ambient quotient ring."""
    zero = N.ambient_ideal()
    return all(radical_membership(g, zero) for g in N.gens)


def is_idempotent(e: Poly, relations: Sequence[Poly] = ()) -> bool:
    return Ideal(e.ring, (), relations).contains(e * e - e)


# -- morphism kernels and subalgebras ---------------------------------------------


def graph_kernel(
    source: PolyRing, images: Sequence[Poly], target_relations: Sequence[Poly] = ()
) -> list:
    """Generators of the kernel of k[x] -> k[y]/J, x_i -> images[i]."""
    if len(images) != source.nvars:
        raise RingMismatch("one image per source variable required")
    if not images:
        tgt = None
    else:
        tgt = images[0].ring
    if tgt is None:
        # k -> k[y]/J: the kernel is the unit ideal exactly when J is.
        return []
    m = tgt.nvars
    names = [f"_y{i}" for i in range(m)] + [f"_x{i}" for i in range(source.nvars)]
    big = PolyRing(source.field, tuple(names))
    ypos = list(range(m))
    gens = [r.relabel(big, ypos) for r in target_relations]
    for i, F in enumerate(images):
        xi = Poly(big, {tuple(1 if k == m + i else 0 for k in range(len(names))): source.field.one})
        gens.append(xi - F.relabel(big, ypos))
    gb = groebner_basis(gens, elimination(range(m)), ring=big)
    return [_drop_front(g, m, source) for g in gb if not any(any(e[:m]) for e in g.terms)]


def kernel_of_morphism(psi) -> Ideal:
    """Kernel of an algebra morphism, as an ideal of its source algebra.

    ``psi`` needs ``source``/``target`` (with ``ring`` and ``relations``)
    and ``images``.
    """
    src, tgt = psi.source, psi.target
    if src.ring.nvars == 0:
        # k -> T: kernel is everything iff T is the zero ring
        unit = Ideal(tgt.ring, (), tgt.relations).is_unit()
        return Ideal(src.ring, [src.ring.one()] if unit else [], src.relations)
    gens = graph_kernel(src.ring, psi.images, tgt.relations)
    amb = Ideal(src.ring, (), src.relations)
    return Ideal(src.ring, [g for g in gens if not amb.contains(g)], src.relations)


def tag_ring(field, m: int) -> PolyRing:
    return PolyRing(field, tuple(f"w{j + 1}" for j in range(m)))


def subalgebra_membership(
    f: Poly, gens: Sequence[Poly], relations: Sequence[Poly] = ()
) -> Poly | None:
    """Express f as a polynomial in ``gens`` modulo ``relations``.

    Returns the representation as a polynomial in tag variables ``w1..wm``
    (``wj`` standing for ``gens[j-1]``), or ``None`` when f is not in the
    generated subalgebra.
    """
    ring = f.ring
    for g in (*gens, *relations):
        if g.ring != ring:
            raise RingMismatch(f"{g.ring} vs {ring}")
    n, m = ring.nvars, len(gens)
    big = PolyRing(ring.field, tuple(f"_y{i}" for i in range(n)) + tuple(f"_w{j}" for j in range(m)))
    ypos = list(range(n))
    polys = [r.relabel(big, ypos) for r in relations]
    for j, g in enumerate(gens):
        wj = Poly(big, {tuple(1 if k == n + j else 0 for k in range(n + m)): ring.field.one})
        polys.append(wj - g.relabel(big, ypos))
    if not polys:
        return None if not f.is_constant() else Poly(tag_ring(ring.field, m), {(): f.constant_coeff()} if f else {})
    gb = groebner_basis(polys, elimination(range(n)) if n else GREVLEX, ring=big)
    r = gb.reduce(f.relabel(big, ypos))
    if any(any(e[:n]) for e in r.terms):
        return None
    return _drop_front(r, n, tag_ring(ring.field, m))

