"""Generalized quantifiers over finite universes.

Subsets of a universe are coded as integer bitmasks over the universe's
element order, so ``0`` is the empty set and ``(1 << len(u)) - 1`` is ``U``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

MAX_UNIVERSE = 16


class QuantifierError(ValueError):
    pass


@dataclass(frozen=True)
class Universe:
    """An ordered finite reference set of named elements."""

    elements: tuple[str, ...]

    def __post_init__(self):
        if len(self.elements) > MAX_UNIVERSE:
            raise QuantifierError(
                f"universe has {len(self.elements)} elements, limit is {MAX_UNIVERSE}")
        if len(set(self.elements)) != len(self.elements):
            raise QuantifierError("universe element names must be unique")

    @classmethod
    def of_size(cls, n: int) -> Universe:
        return cls(tuple(f"e{i}" for i in range(n)))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def subsets(self) -> range:
        """All subset masks, in increasing numeric order."""
        return range(1 << len(self.elements))

    def mask(self, names: Iterable[str]) -> int:
        index = {e: i for i, e in enumerate(self.elements)}
        m = 0
        for name in names:
            try:
                m |= 1 << index[name]
            except KeyError:
                raise QuantifierError(f"{name!r} is not an element of the universe") from None
        return m

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(e for i, e in enumerate(self.elements) if mask >> i & 1)

    def show(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"

    def check(self, mask: int) -> int:
        if not 0 <= mask <= self.full:
            raise QuantifierError(f"mask {mask} out of range for |U|={len(self)}")
        return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Quantifier:
    """A determiner meaning: ``kind`` plus an integer parameter where needed.

    ``most`` is strict majority, ``few`` is ``|X & A| <= param``.
    """

    kind: str
    param: int = 0

    KINDS = ("some", "every", "no", "exactly", "atleast", "most", "few")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise QuantifierError(f"unknown quantifier kind {self.kind!r}")
        if self.param < 0:
            raise QuantifierError("quantifier parameter must be >= 0")

    def holds(self, a: int, x: int) -> bool:
        """Is ``x`` a member of the family this quantifier assigns to ``a``?"""
        k = self.kind
        if k == "some":
            return x & a != 0
        if k == "every":
            return a & ~x == 0
        if k == "no":
            return x & a == 0
        common = popcount(x & a)
        if k == "exactly":
            return common == self.param
        if k == "atleast":
            return common >= self.param
        if k == "most":
            return 2 * common > popcount(a)
        return common <= self.param  # few

    def __str__(self) -> str:
        if self.kind in ("exactly", "atleast", "few"):
            return f"{self.kind}:{self.param}"
        return self.kind


_SYNTAX = re.compile(r"^(some|every|no|most|exactly|atleast|few)(?::(\d+))?$")


def parse_quantifier(text: str) -> Quantifier:
    """Read the model-file syntax: ``some``, ``exactly:2``, ``few:1`` ..."""
    m = _SYNTAX.match(text.strip())
    if not m:
        raise QuantifierError(f"cannot read quantifier {text!r}")
    kind, param = m.group(1), m.group(2)
    needs_param = kind in ("exactly", "atleast", "few")
    if needs_param != (param is not None):
        raise QuantifierError(f"quantifier {text!r}: parameter "
                              + ("required" if needs_param else "not allowed"))
    return Quantifier(kind, int(param) if param else 0)


def builtin_quantifiers(max_param: int) -> list[Quantifier]:
    """Every built-in kind, parameterized ones for 0..max_param."""
    qs = [Quantifier("some"), Quantifier("every"), Quantifier("no"), Quantifier("most")]
    for kind in ("exactly", "atleast", "few"):
        qs.extend(Quantifier(kind, n) for n in range(max_param + 1))
    return qs


@lru_cache(maxsize=None)
def _family(q: Quantifier, size: int, a: int) -> frozenset[int]:
    return frozenset(x for x in range(1 << size) if q.holds(a, x))


def family(q: Quantifier, u: Universe, a: int) -> frozenset[int]:
    """The set of subsets ``q`` assigns to ``a``."""
    return _family(q, len(u), u.check(a))


def iter_family(q: Quantifier, u: Universe, a: int) -> Iterator[int]:
    return iter(sorted(family(q, u, a)))


def is_conservative(q, u: Universe) -> bool:
    """Exhaustively check that ``q(A)`` lives on ``A`` for every ``A``.

    ``q`` may be any object with a ``holds(a, x)`` method, which lets tests
    feed in deliberately broken quantifiers.
    """
    for a in u.subsets():
        for x in u.subsets():
            if q.holds(a, x) != q.holds(a, x & a):
                return False
    return True
