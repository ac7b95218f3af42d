"""Sparse multivariate polynomials with exact coefficients.

A :class:`PolyRing` is a (field, variable names) context; a :class:`Poly`
maps dense exponent tuples to nonzero coefficients.  Polynomials are
immutable; all arithmetic returns new objects.

Text form follows a small grammar without implicit multiplication::

    expression := term (("+"|"-") term)*
    term       := coeff | coeff "*" mono | mono
    mono       := var ("^" uint)? ("*" var ("^" uint)?)*
    coeff      := int | int "/" uint
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import PolySyntaxError, RingMismatch, UnknownVariable
from .field import QQ, FieldSpec
from .order import GREVLEX

VAR_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*/^])|(?P<bad>\S))"
)


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring k[vars] over a :class:`FieldSpec`."""

    field: FieldSpec
    vars: tuple

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def p(self) -> int:
        return self.field.p

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, c) -> Poly:
        c = self.field.coerce(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> Poly:
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> list:
        return [self.var(v) for v in self.vars]

    def monomial(self, exp, coeff=1) -> Poly:
        c = self.field.coerce(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def parse(self, text: str) -> Poly:
        return poly_parse(text, self)

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} is not {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def extend(self, names: Iterable[str], *, front: bool = False) -> PolyRing:
        names = tuple(names)
        new = names + self.vars if front else self.vars + names
        return PolyRing(self.field, new)

    def __str__(self):
        return f"{self.field}[{', '.join(self.vars)}]"


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Mapping) -> Poly:
        f = ring.field
        out = {}
        for e, c in terms.items():
            c = f.coerce(c)
            if c:
                out[tuple(e)] = c
        return cls(ring, out)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> set:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return {self.ring.vars[i] for i in used}

    def leading_term(self, order=GREVLEX):
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        if p:
            return Poly(self.ring, {e: (p - c) % p for e, c in self.terms.items()})
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                v = out.get(e)
                out[e] = c if v is None else v + c
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> Poly:
        c = self.ring.field.coerce(c)
        if not c:
            return self.ring.zero()
        p = self.ring.p
        if p:
            return Poly(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def monic(self, order=GREVLEX) -> Poly:
        if not self.terms:
            return self
        _, lc = self.leading_term(order)
        return self.scale(self.ring.field.inv(lc))

    # -- maps between rings -----------------------------------------------
    def subs(self, images: Sequence[Poly], target: PolyRing) -> Poly:
        """Ring map sending variable i to ``images[i]`` (polys in ``target``)."""
        if len(images) != self.ring.nvars:
            raise RingMismatch("image count does not match variable count")
        if target.field != self.ring.field:
            raise RingMismatch(f"cannot map {self.ring} into {target}")
        result = target.zero()
        powers = [dict() for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        for e, c in self.terms.items():
            term = Poly(target, {(0,) * target.nvars: c})
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def relabel(self, target: PolyRing, positions: Sequence[int]) -> Poly:
        """Embed into ``target`` sending variable i to variable ``positions[i]``."""
        n = target.nvars
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    new[positions[i]] += k
            out[tuple(new)] = c
        return Poly(target, out)

    def embed(self, target: PolyRing) -> Poly:
        """Embed into a ring containing all of this ring's variables (by name)."""
        return self.relabel(target, [target.index(v) for v in self.ring.vars])

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self, order=GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __str__(self):
        return poly_print(self)

    def __repr__(self):
        return f"Poly({poly_print(self)!r} in {self.ring})"


# -- text I/O ---------------------------------------------------------------


def _format_coeff(c, p):
    if p:
        return str(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def poly_print(f: Poly, order=GREVLEX) -> str:
    """Canonical text form; terms in descending ``order``."""
    if not f.terms:
        return "0"
    names = f.ring.vars
    parts = []
    for e, c in f.sorted_terms(order):
        neg = not f.ring.p and c < 0
        mag = -c if neg else c
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        if not mono:
            body = _format_coeff(mag, f.ring.p)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag, f.ring.p)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group("bad"):
            raise PolySyntaxError(f"unexpected character {m.group('bad')!r} at {m.start('bad')}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def poly_parse(text: str, ring: PolyRing) -> Poly:
    """Parse ``text`` into a canonical :class:`Poly` of ``ring``.

    A single leading sign is accepted so that printed output re-parses.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolySyntaxError("empty polynomial")
    pos = 0
    field = ring.field

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def expect(kind, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise PolySyntaxError(f"expected {want} at {tok[2]}, found {tok[1]!r}")
        pos += 1
        return tok[1]

    def parse_mono():
        exp = [0] * ring.nvars
        while True:
            name = expect("var")
            i = ring.index(name)
            k = 1
            if peek()[1] == "^":
                expect("op", "^")
                k = int(expect("num"))
            exp[i] += k
            if peek()[1] == "*" and pos + 1 < len(tokens) and tokens[pos + 1][0] == "var":
                expect("op", "*")
                continue
            return tuple(exp)

    def parse_term():
        nonlocal pos
        kind, value, _ = peek()
        coeff = Fraction(1)
        if kind == "num":
            pos += 1
            coeff = Fraction(int(value))
            if peek()[1] == "/":
                expect("op", "/")
                den = int(expect("num"))
                if den == 0:
                    raise PolySyntaxError("zero denominator")
                coeff = Fraction(int(value), den)
            if peek()[1] == "*":
                expect("op", "*")
                return coeff, parse_mono()
            return coeff, (0,) * ring.nvars
        if kind == "var":
            return coeff, parse_mono()
        raise PolySyntaxError(f"expected term at {peek()[2]}, found {value!r}")

    sign = 1
    if peek()[1] in ("+", "-"):
        sign = -1 if peek()[1] == "-" else 1
        pos += 1
    acc = {}
    while True:
        coeff, exp = parse_term()
        acc[exp] = acc.get(exp, 0) + sign * coeff
        tok = peek()
        if tok[0] is None:
            break
        if tok[1] not in ("+", "-"):
            raise PolySyntaxError(f"unexpected {tok[1]!r} at {tok[2]}")
        sign = -1 if tok[1] == "-" else 1
        pos += 1
    out = {}
    for e, c in acc.items():
        c = field.coerce(c)
        if c:
            out[e] = c
    return Poly(ring, out)


def poly_op(op: str, a: Poly, b=None) -> Poly:
    """Dispatch ``add``/``sub``/``mul``/``pow`` (``b`` is an int for pow)."""
    if op == "pow":
        return a**b
    if not isinstance(b, Poly) or a.ring != b.ring:
        raise RingMismatch("operands live in different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def ring(vars: Iterable[str] | str, field: FieldSpec = QQ) -> PolyRing:
    """Convenience constructor: ``ring("u v")`` or ``ring(["u", "v"])``."""
    if isinstance(vars, str):
        vars = vars.replace(",", " ").split()
    vars = tuple(vars)
    for v in vars:
        if not VAR_RE.match(v):
            raise ValueError(f"invalid variable name {v!r}")
    return PolyRing(field, vars)
