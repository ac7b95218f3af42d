"""Finitely presented algebras, their morphisms, and the tensor-square
constructions attached to a sequence R -> A -> B.

Tensor products are presented in doubled variables: each variable ``y`` of
B gets a right-hand copy named ``y_r``; ``b ⊗ 1`` is ``b(y)`` and
``1 ⊗ b`` is ``b(y_r)``.
"""

from __future__ import annotations

import typing
from dataclasses import dataclass
from dataclasses import field as dc_field

from .errors import (
    CompositionMismatch,
    InvalidMorphism,
    InvalidSequence,
    NonCommuting,
    RingMismatch,
)
from .field import QQ, FieldSpec
from .ideals import Ideal
from .poly import Poly, PolyRing

RIGHT_SUFFIX = "_r"


@dataclass(frozen=True)
class PresentedAlgebra:
    """k[vars]/(relations).  A base field is the algebra with no variables."""

    name: str = dc_field(compare=False)
    ring: PolyRing
    relations: tuple = ()
    _zero: list = dc_field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(r for r in self.relations if r))
        for r in self.relations:
            if r.ring != self.ring:
                raise RingMismatch(f"relation {r} is not in {self.ring}")

    @classmethod
    def from_strings(cls, name, vars, relations=(), field: FieldSpec = QQ) -> PresentedAlgebra:
        ring = PolyRing(field, tuple(vars))
        return cls(name, ring, tuple(ring.parse(r) for r in relations))

    @classmethod
    def base_field(cls, field: FieldSpec = QQ, name: str = "k") -> PresentedAlgebra:
        return cls(name, PolyRing(field, ()))

    @property
    def vars(self) -> tuple:
        return self.ring.vars

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def zero_ideal(self) -> Ideal:
        if not self._zero:
            self._zero.append(Ideal(self.ring, (), self.relations))
        return self._zero[0]

    def ideal(self, gens: typing.Sequence) -> Ideal:
        return Ideal(self.ring, [self(g) for g in gens], self.relations)

    def __call__(self, value) -> Poly:
        """Coerce ``value`` (text, number or Poly) into canonical reduced form."""
        return self.reduce(self.ring(value))

    def reduce(self, f: Poly) -> Poly:
        if not self.relations:
            if f.ring != self.ring:
                raise RingMismatch(f"{f.ring} vs {self.ring}")
            return f
        return self.zero_ideal.reduce(f)

    def equal(self, a: Poly, b: Poly) -> bool:
        return not self.reduce(a - b)

    def is_zero_ring(self) -> bool:
        return self.zero_ideal.is_unit()

    def gens(self) -> list:
        return self.ring.gens()

    def __str__(self):
        if not self.relations:
            return f"{self.name} = {self.ring}"
        return f"{self.name} = {self.ring}/({', '.join(map(str, self.relations))})"


@dataclass(frozen=True)
class AlgebraMorphism:
    """Morphism given by the image of each source variable in the target."""

    source: PresentedAlgebra
    target: PresentedAlgebra
    images: tuple
    name: str = dc_field(default="", compare=False)

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source.ring.nvars:
            raise InvalidMorphism(
                f"{self.name or 'morphism'}: {len(images)} images for "
                f"{self.source.ring.nvars} source variables"
            )
        for im in images:
            if im.ring != self.target.ring:
                raise RingMismatch(f"image {im} is not in {self.target.ring}")
        if self.source.field != self.target.field:
            raise RingMismatch("source and target have different coefficient fields")

    @classmethod
    def from_strings(cls, source, target, images: dict, name="") -> AlgebraMorphism:
        missing = [v for v in source.vars if v not in images]
        extra = [v for v in images if v not in source.vars]
        if missing or extra:
            raise InvalidMorphism(
                f"{name or 'morphism'}: images must cover {list(source.vars)} exactly"
                f" (missing {missing}, unexpected {extra})"
            )
        return cls(source, target, tuple(target(images[v]) for v in source.vars), name)

    def __call__(self, f: Poly) -> Poly:
        if f.ring != self.source.ring:
            raise RingMismatch(f"{f.ring} vs {self.source.ring}")
        return self.target.reduce(f.subs(self.images, self.target.ring))

    def image_map(self) -> dict:
        return {v: str(im) for v, im in zip(self.source.vars, self.images)}

    def __str__(self):
        body = ", ".join(f"{v} -> {im}" for v, im in zip(self.source.vars, self.images))
        return f"{self.name or 'psi'}: {self.source.name} -> {self.target.name} ({body})"


def failing_relations(psi: AlgebraMorphism) -> list:
    """Source relations that do not map to zero in the target."""
    return [r for r in psi.source.relations if psi(r)]


def validate_morphism(psi: AlgebraMorphism) -> bool:
    return not failing_relations(psi)


def identity(A: PresentedAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, tuple(A.gens()), f"id_{A.name}")


def compose(psi2: AlgebraMorphism, psi1: AlgebraMorphism, name="") -> AlgebraMorphism:
    """psi2 ∘ psi1."""
    if psi1.target != psi2.source:
        raise CompositionMismatch(
            f"cannot compose {psi2.name or 'psi2'} after {psi1.name or 'psi1'}: "
            f"{psi1.target.name} is not {psi2.source.name}"
        )
    images = tuple(psi2(im) for im in psi1.images)
    return AlgebraMorphism(psi1.source, psi2.target, images, name or f"{psi2.name}∘{psi1.name}")


def morphisms_agree(a: AlgebraMorphism, b: AlgebraMorphism) -> bool:
    if a.source != b.source or a.target != b.target:
        return False
    return all(a.target.equal(x, y) for x, y in zip(a.images, b.images))


@dataclass(frozen=True)
class Sequence:
    """R --tau--> A --g--> B."""

    base: PresentedAlgebra
    mid: PresentedAlgebra
    top: PresentedAlgebra
    tau: AlgebraMorphism
    g: AlgebraMorphism
    name: str = dc_field(default="", compare=False)

    def __post_init__(self):
        if self.tau.source != self.base or self.tau.target != self.mid:
            raise InvalidSequence(f"{self.name}: tau must map {self.base.name} -> {self.mid.name}")
        if self.g.source != self.mid or self.g.target != self.top:
            raise InvalidSequence(f"{self.name}: g must map {self.mid.name} -> {self.top.name}")
        for psi in (self.tau, self.g):
            bad = failing_relations(psi)
            if bad:
                raise InvalidSequence(f"{self.name}: {psi.name} does not respect {bad[0]}")

    @property
    def structure(self) -> AlgebraMorphism:
        """The R-algebra structure of B, g ∘ tau."""
        return compose(self.g, self.tau, "g∘tau")


@dataclass(frozen=True)
class Tensor:
    """Presentation of T ⊗_S T with its two coprojections."""

    algebra: PresentedAlgebra
    left: AlgebraMorphism
    right: AlgebraMorphism

    def diagonal(self, x: Poly) -> Poly:
        return self.algebra.reduce(self.left(x) - self.right(x))


def right_name(v: str) -> str:
    return v + RIGHT_SUFFIX


def tensor_over(base: PresentedAlgebra, T: PresentedAlgebra, structure: AlgebraMorphism) -> Tensor:
    """T ⊗_base T for the base-algebra structure ``structure: base -> T``."""
    if structure.source != base or structure.target != T:
        raise InvalidMorphism("structure morphism must map base -> T")
    bad = failing_relations(structure)
    if bad:
        raise InvalidMorphism(f"structure morphism does not respect {bad[0]}")
    doubled = T.vars + tuple(right_name(v) for v in T.vars)
    if len(set(doubled)) != len(doubled):
        raise InvalidMorphism(f"variable names of {T.name} clash with their '{RIGHT_SUFFIX}' copies")
    ring = PolyRing(T.field, doubled)
    n = T.ring.nvars
    lpos = list(range(n))
    rpos = [n + i for i in range(n)]
    rels = [r.relabel(ring, lpos) for r in T.relations]
    rels += [r.relabel(ring, rpos) for r in T.relations]
    for h in structure.images:
        rels.append(h.relabel(ring, lpos) - h.relabel(ring, rpos))
    name = f"{T.name}⊗_{base.name}{T.name}"
    alg = PresentedAlgebra(name, ring, tuple(rels))
    left = AlgebraMorphism(T, alg, tuple(alg(g.relabel(ring, lpos)) for g in T.gens()), "left")
    right = AlgebraMorphism(T, alg, tuple(alg(g.relabel(ring, rpos)) for g in T.gens()), "right")
    return Tensor(alg, left, right)


@dataclass(frozen=True)
class TensorSquare:
    """The tensor data of one sequence: B⊗_R B, B⊗_A B, phi and ker phi."""

    seq: Sequence
    rr: Tensor
    aa: Tensor
    phi: AlgebraMorphism
    phi_kernel: Ideal

    @property
    def tensor_rr(self) -> PresentedAlgebra:
        return self.rr.algebra

    @property
    def tensor_aa(self) -> PresentedAlgebra:
        return self.aa.algebra

    def diagonal(self, x: Poly) -> Poly:
        return diagonal(self, x)


def diagonal(square: TensorSquare, x: Poly) -> Poly:
    """Δ(x) = x⊗1 - 1⊗x, reduced in B⊗_R B."""
    if x.ring != square.seq.top.ring:
        raise RingMismatch(f"{x.ring} vs {square.seq.top.ring}")
    return square.rr.diagonal(x)


def build_tensor_square(seq: Sequence) -> TensorSquare:
    rr = tensor_over(seq.base, seq.top, seq.structure)
    aa = tensor_over(seq.mid, seq.top, seq.g)
    phi = AlgebraMorphism(rr.algebra, aa.algebra, tuple(aa.algebra.gens()), "phi")
    if not validate_morphism(phi):
        raise InvalidSequence(f"{seq.name}: canonical map B⊗_R B -> B⊗_A B is not well defined")
    for r_image in seq.tau.images:
        if rr.diagonal(seq.g(r_image)):
            raise InvalidSequence(f"{seq.name}: Δ of a base element does not vanish")
    gens = [rr.diagonal(im) for im in seq.g.images]
    kernel = Ideal(rr.algebra.ring, gens, rr.algebra.relations)
    return TensorSquare(seq, rr, aa, phi, kernel)


@dataclass(frozen=True)
class Bridge:
    """Vertical maps of the tensor diagram for f: B -> B'.

    ``middle`` is B'⊗_R B', ``f_tensor`` is f⊗_R f, ``p`` the canonical
    surjection onto B'⊗_R' B', ``fbar = p ∘ (f⊗_R f)`` and ``ker_p`` the
    ideal of ``middle`` generated by Δ of the images of R'.
    """

    middle: Tensor
    f_tensor: AlgebraMorphism
    p: AlgebraMorphism
    fbar: AlgebraMorphism
    ker_p: Ideal


def build_bridge(top: TensorSquare, bottom: TensorSquare, f: AlgebraMorphism) -> Bridge:
    B, Bp = top.seq.top, bottom.seq.top
    if f.source != B or f.target != Bp:
        raise InvalidMorphism(f"f must map {B.name} -> {Bp.name}")
    bad = failing_relations(f)
    if bad:
        raise InvalidMorphism(f"f does not respect {bad[0]}")
    middle = tensor_over(top.seq.base, Bp, compose(f, top.seq.structure))
    mid_alg = middle.algebra
    images = [middle.left(im) for im in f.images] + [middle.right(im) for im in f.images]
    f_tensor = AlgebraMorphism(top.tensor_rr, mid_alg, tuple(images), "f⊗f")
    if not validate_morphism(f_tensor):
        raise InvalidMorphism("f⊗_R f is not well defined")
    p = AlgebraMorphism(mid_alg, bottom.tensor_rr, tuple(bottom.tensor_rr.gens()), "p")
    if not validate_morphism(p):
        raise NonCommuting("R-structures of B' do not factor through R': p is undefined")
    fbar = compose(p, f_tensor, "fbar")
    for y in B.gens():
        if not bottom.tensor_rr.equal(fbar(top.diagonal(y)), bottom.diagonal(f(y))):
            raise NonCommuting(f"fbar∘Δ differs from Δ'∘f on {y}")
    ker_gens = [middle.diagonal(im) for im in bottom.seq.structure.images]
    ker_p = Ideal(mid_alg.ring, ker_gens, mid_alg.relations)
    return Bridge(middle, f_tensor, p, fbar, ker_p)
