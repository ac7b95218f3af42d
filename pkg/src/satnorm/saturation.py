"""Membership in the relative weak normalization (radical of ker phi) and
the relative Lipschitz saturation (integral closure of ker phi).

Weak-normalization membership is decided exactly.  Lipschitz membership is
answered with a three-valued :class:`Verdict3`: ``Yes`` and ``No`` carry a
checkable certificate, ``Unknown`` records the exhausted bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import TensorSquare, diagonal
from .errors import NotMonomial, RingMismatch
from .groebner import lift
from .ideals import RADICAL_EXPONENT_BOUND, Ideal, power_generators, radical_exponent, radical_membership
from .poly import Poly

__all__ = [
    "DEFAULT_DEPENDENCE_BOUND",
    "Answer",
    "Verdict3",
    "WNMembership",
    "DependenceCertificate",
    "wn_member",
    "dependence_search",
    "minimal_dependence",
    "newton_witness",
    "monomial_closure_member",
    "lip_member",
    "closure_verdict",
]

DEFAULT_DEPENDENCE_BOUND = 6


class Answer(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict3:
    answer: Answer
    certificate: dict | None = None

    @classmethod
    def yes(cls, certificate):
        return cls(Answer.YES, certificate)

    @classmethod
    def no(cls, certificate):
        return cls(Answer.NO, certificate)

    @classmethod
    def unknown(cls, bound, **extra):
        return cls(Answer.UNKNOWN, {"bound": bound, **extra})

    @property
    def is_yes(self) -> bool:
        return self.answer is Answer.YES

    @property
    def is_no(self) -> bool:
        return self.answer is Answer.NO

    def to_json(self):
        return {"answer": self.answer.value, "certificate": self.certificate}


@dataclass(frozen=True)
class WNMembership:
    """Outcome of a weak-normalization query; truthy iff ``member``."""

    member: bool
    delta: Poly
    exponent: int | None = None

    def __bool__(self):
        return self.member

    def to_json(self):
        return {"member": self.member, "delta": str(self.delta), "radical_exponent": self.exponent}


@dataclass(frozen=True)
class DependenceCertificate:
    """x^n + a_1 x^(n-1) + ... + a_n = 0 modulo ``relations``, a_i ∈ I^i.

    ``combinations[i-1]`` lists ``(cofactor, generator of I^i)`` pairs whose
    sum is ``coefficients[i-1]``.
    """

    element: Poly
    degree: int
    coefficients: tuple
    combinations: tuple
    relations: tuple = ()

    def equation(self) -> Poly:
        x, n = self.element, self.degree
        out = x**n
        for i, a in enumerate(self.coefficients, start=1):
            out = out + a * x ** (n - i)
        return out

    def verify(self, ideal: Ideal | None = None) -> bool:
        ring = self.element.ring
        if len(self.coefficients) != self.degree or len(self.combinations) != self.degree:
            return False
        for i, (a, combo) in enumerate(zip(self.coefficients, self.combinations), start=1):
            total = ring.zero()
            for cof, gen in combo:
                total = total + cof * gen
            if total != a:
                return False
            if ideal is not None:
                allowed = set(power_generators(ideal.gens, i))
                if any(gen not in allowed for _, gen in combo):
                    return False
        return Ideal(ring, (), self.relations).contains(self.equation())

    def to_json(self):
        return {
            "kind": "dependence",
            "degree": self.degree,
            "coefficients": [str(a) for a in self.coefficients],
            "combinations": [
                [{"cofactor": str(c), "generator": str(g)} for c, g in combo]
                for combo in self.combinations
            ],
        }


# -- weak normalization ------------------------------------------------------------


def wn_member(square: TensorSquare, x: Poly, bound: int = RADICAL_EXPONENT_BOUND) -> WNMembership:
    """x ∈ Ã_{B,R}  ⟺  Δ(x) ∈ √(ker φ); exact.

    Members also get the smallest n <= ``bound`` with Δ(x)^n ∈ ker φ.
    """
    d = diagonal(square, x)
    K = square.phi_kernel
    if not radical_membership(d, K):
        return WNMembership(False, d)
    return WNMembership(True, d, radical_exponent(d, K, bound))


# -- integral dependence ---------------------------------------------------------------


def dependence_search(x: Poly, I: Ideal, n: int) -> DependenceCertificate | None:
    """Find an integral-dependence equation of x over I of degree exactly n.

    Such an equation exists iff x^n lies in the ideal generated by
    x^(n-i) * (generators of I^i), i = 1..n, modulo the ambient relations.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    if x.ring != I.ring:
        raise RingMismatch(f"{x.ring} vs {I.ring}")
    amb = I.ambient_ideal()
    reduce = amb.reduce if I.relations else (lambda f: f)
    layers = [power_generators(I.gens, i) for i in range(1, n + 1)]
    powers = [I.ring.one()]
    for _ in range(n):
        powers.append(reduce(powers[-1] * x))
    # reducing modulo the relations keeps the Groebner basis input small;
    # the difference lies in the relation ideal, which lift also sees
    shifted = []
    for i, gens in enumerate(layers, start=1):
        shifted.extend(reduce(powers[n - i] * m) for m in gens)
    target = powers[n]
    if not Ideal(I.ring, shifted, I.relations).contains(target):
        return None
    cof = lift(target, shifted + list(I.relations))
    if cof is None:  # pragma: no cover - membership was just established
        return None
    coefficients, combinations = [], []
    k = 0
    for gens in layers:
        combo = []
        a = I.ring.zero()
        for m in gens:
            c = -cof[k]
            k += 1
            if c:
                combo.append((c, m))
                a = a + c * m
        coefficients.append(a)
        combinations.append(tuple(combo))
    return DependenceCertificate(x, n, tuple(coefficients), tuple(combinations), I.relations)


def minimal_dependence(x: Poly, I: Ideal, bound: int) -> DependenceCertificate | None:
    """Lowest-degree equation up to ``bound``.

    Degrees are tried in increasing order: the cost of one search grows
    quickly with n, and members usually have low-degree equations.
    """
    for n in range(1, bound + 1):
        cert = dependence_search(x, I, n)
        if cert is not None:
            return cert
    return None


# -- monomial ideals -----------------------------------------------------------------


def _fm_eliminate(rows, k):
    pos, neg, rest = [], [], []
    for coeffs, rhs in rows:
        c = coeffs[k]
        (pos if c > 0 else neg if c < 0 else rest).append((coeffs, rhs))
    out = list(rest)
    for pc, pr in pos:
        for nc, nr in neg:
            a, b = pc[k], -nc[k]
            coeffs = tuple(b * u + a * v for u, v in zip(pc, nc))
            out.append((coeffs, b * pr + a * nr))
    seen, uniq = set(), []
    for row in out:
        if row not in seen:
            seen.add(row)
            uniq.append(row)
    return uniq


def newton_witness(exponent: Sequence[int], generators: Sequence[Sequence[int]]) -> list | None:
    """Convex weights λ on ``generators`` with exponent ≥ Σ λ_j g_j, or None.

    Exact Fourier--Motzkin elimination over the rationals, followed by back
    substitution to produce the witness.
    """
    m = len(generators)
    if m == 0:
        return None
    d = len(exponent)
    rows = []
    for j in range(m):
        rows.append((tuple(Fraction(-1) if i == j else Fraction(0) for i in range(m)), Fraction(0)))
    rows.append((tuple(Fraction(1) for _ in range(m)), Fraction(1)))
    rows.append((tuple(Fraction(-1) for _ in range(m)), Fraction(-1)))
    for i in range(d):
        rows.append((tuple(Fraction(g[i]) for g in generators), Fraction(exponent[i])))
    stages = [rows]
    for k in range(m):
        rows = _fm_eliminate(rows, k)
        stages.append(rows)
    if any(rhs < 0 for _, rhs in rows):
        return None
    lam = [Fraction(0)] * m
    for k in range(m - 1, -1, -1):
        lo, hi = None, None
        for coeffs, rhs in stages[k]:
            c = coeffs[k]
            if not c:
                continue
            slack = rhs - sum(coeffs[j] * lam[j] for j in range(k + 1, m))
            bound = slack / c
            if c > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        lam[k] = lo if lo is not None else (hi if hi is not None and hi < 0 else Fraction(0))
    return lam


def _monomial_exponents(I) -> list:
    gens = I.gens if isinstance(I, Ideal) else I
    out = []
    for g in gens:
        if isinstance(g, Poly):
            if not g.is_monomial():
                raise NotMonomial(f"{g} is not a monomial")
            out.append(next(iter(g.terms)))
        else:
            out.append(tuple(g))
    return out


def monomial_closure_member(exponent: Sequence[int], I) -> bool:
    """x^exponent ∈ closure(I) for a monomial ideal I (Newton polyhedron test)."""
    return newton_witness(exponent, _monomial_exponents(I)) is not None


# -- Lipschitz saturation --------------------------------------------------------------


def _newton_verdict(d: Poly, gb_monomials) -> Verdict3:
    exps = [next(iter(g.terms)) for g in gb_monomials]
    witnesses = []
    for e, _ in d.sorted_terms():
        lam = newton_witness(e, exps)
        if lam is None:
            return Verdict3.no(
                {"kind": "newton", "exponent": list(e), "generators": [list(g) for g in exps]}
            )
        witnesses.append({"exponent": list(e), "weights": [str(v) for v in lam]})
    return Verdict3.yes({"kind": "newton", "generators": [list(g) for g in exps], "terms": witnesses})


def lip_member(square: TensorSquare, x: Poly, bound: int = DEFAULT_DEPENDENCE_BOUND) -> Verdict3:
    """x ∈ A*_{B,R}  ⟺  Δ(x) ∈ closure(ker φ); sound but incomplete.

    1. Δ(x) outside √ker φ  -> No (closure lies inside the radical).
    2. Δ(x) ∈ ker φ         -> Yes, degree-one equation.
    3. ker φ monomial in a polynomial ring -> exact Newton-polyhedron test.
    4. otherwise search dependence equations of degree <= bound.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    wn = wn_member(square, x)
    if not wn:
        return Verdict3.no({"kind": "radical", "delta": str(wn.delta)})
    return closure_verdict(wn.delta, square.phi_kernel, bound)


def closure_verdict(d: Poly, K: Ideal, bound: int = DEFAULT_DEPENDENCE_BOUND) -> Verdict3:
    """Three-valued test of d ∈ closure(K), assuming d ∈ √K."""
    if K.contains(d):
        return Verdict3.yes(dependence_search(d, K, 1).to_json())
    gb = K.gb()
    if not K.relations and gb.is_monomial_ideal() and not gb.is_zero():
        return _newton_verdict(d, gb.generators)
    cert = minimal_dependence(d, K, bound)
    if cert is None:
        return Verdict3.unknown(bound)
    return Verdict3.yes(cert.to_json())
