"""Monomial orders on dense exponent tuples.

Every order exposes ``key(exp)``: a tuple of ints such that Python tuple
comparison realises the order (bigger key = bigger monomial).
"""

from __future__ import annotations

from dataclasses import dataclass


class MonomialOrder:
    name = "order"

    def key(self, exp):
        raise NotImplementedError

    def heapkey(self, exp):
        # min-heap friendly: the largest monomial gets the smallest key
        return tuple(-k for k in self.key(exp))

    def cmp(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Lex(MonomialOrder):
    name = "lex"

    def key(self, exp):
        return exp


@dataclass(frozen=True)
class GrevLex(MonomialOrder):
    name = "grevlex"

    def key(self, exp):
        return (sum(exp),) + tuple(-e for e in reversed(exp))


@dataclass(frozen=True)
class BlockOrder(MonomialOrder):
    """Product of grevlex orders on consecutive variable blocks.

    ``blocks`` is a tuple of index tuples; a monomial is compared on the
    first block, ties broken on the second, and so on.  Indices not named
    in any block form an implicit final block.
    """

    blocks: tuple

    name = "block"

    def key(self, exp):
        out = []
        covered = set()
        for block in self.blocks:
            part = [exp[i] for i in block]
            covered.update(block)
            out.append(sum(part))
            out.extend(-e for e in reversed(part))
        rest = [exp[i] for i in range(len(exp)) if i not in covered]
        if rest:
            out.append(sum(rest))
            out.extend(-e for e in reversed(rest))
        return tuple(out)

    def __str__(self):
        return "block" + "".join(str(list(b)) for b in self.blocks)


def elimination(drop) -> BlockOrder:
    """Order ranking any monomial containing a ``drop`` variable above all
    monomials free of them (grevlex inside both blocks)."""
    return BlockOrder((tuple(sorted(drop)),))


LEX = Lex()
GREVLEX = GrevLex()


def order_from_name(name: str) -> MonomialOrder:
    try:
        return {"lex": LEX, "grevlex": GREVLEX}[name]
    except KeyError:
        raise ValueError(f"unknown monomial order {name!r}") from None
