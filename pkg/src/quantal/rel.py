"""Sets-and-relations backend: ``W`` is the powerset of ``U``, ``S`` is ``{*}``.

Basis elements of ``W`` are subset masks; the single element of ``S`` is 0.
"""

from __future__ import annotations

from functools import lru_cache

from .oracle import RelModel, forward_image
from .quantifiers import Universe, family, parse_quantifier
from .sparse import BOOLEAN, Morphism, SparseBackend
from .term import S, W

STAR = 0


class RelBackend(SparseBackend):
    semiring = BOOLEAN

    def __init__(self, universe: Universe):
        self.universe = universe
        self._powerset = tuple(universe.subsets())

    def carrier(self, wire):
        return self._powerset if wire is W else (STAR,)

    # bialgebra on W
    def delta(self):
        return self.morphism((W,), (W, W), lambda x: {(x[0], x[0]): True})

    def iota(self):
        return self.morphism((W,), (), lambda x: {(): True})

    def mu(self):
        return self.morphism((W, W), (W,), lambda x: {(x[0] & x[1],): True})

    def zeta(self):
        full = {(self.universe.full,): True}
        return self.morphism((), (W,), lambda x: full)

    # words
    def state(self, word, role, lexicon: RelModel):
        if role in ("N", "NP"):
            return self.state_from((W,), {(lexicon.set_of(word),): True})
        if role == "VP":
            return self.state_from((W, S), {(lexicon.set_of(word), STAR): True})
        if role == "V":
            rel = lexicon.relation(word)
            return self.state_from(
                (W, S, W), {(a, STAR, forward_image(rel, a)): True for a in self._powerset})
        raise ValueError(f"no Rel interpretation for role {role!r}")

    def det(self, word, lexicon: RelModel, builtin=False):
        q = parse_quantifier(word) if builtin else lexicon.quantifier(word)
        return self._det(q)

    @lru_cache(maxsize=None)
    def _det(self, q) -> Morphism:
        rows = {a: {(b,): True for b in family(q, self.universe, a)} for a in self._powerset}
        return self.morphism((W,), (W,), lambda x: rows[x[0]])


def rel_pairs(m: Morphism) -> set:
    """The relation as an explicit set of (domain tuple, codomain tuple)."""
    return set(m.matrix())


def rel_truth(value: Morphism) -> bool:
    """Is ``*`` related to ``*``?  ``value`` must be closed with only ``S``
    wires (each ``S`` being the unit ``{*}``)."""
    if value.dom or any(w is not S for w in value.cod):
        raise TypeError("truth needs a value from * to *: got " + repr(value))
    return bool(value(()))
