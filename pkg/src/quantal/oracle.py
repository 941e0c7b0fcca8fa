"""Set-theoretic truth for the quantified fragment, with no category theory.

This is the ground truth the categorical backends are checked against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .grammar import ParsedSentence, Shape
from .quantifiers import Quantifier, Universe, parse_quantifier

Relation = frozenset  # of (x, y) element-index pairs


class ModelError(LookupError):
    pass


class OracleUnsupported(ValueError):
    pass


def forward_image(r: Iterable[tuple[int, int]], a: int) -> int:
    """``{y | (x, y) in r, x in a}`` as a mask."""
    out = 0
    for x, y in r:
        if a >> x & 1:
            out |= 1 << y
    return out


@dataclass(frozen=True)
class RelModel:
    """A universe plus interpretations: N/NP/VP words name subsets, verbs
    name binary relations, determiners name quantifiers."""

    universe: Universe
    sets: Mapping[str, int] = field(default_factory=dict)
    verbs: Mapping[str, Relation] = field(default_factory=dict)
    dets: Mapping[str, Quantifier] = field(default_factory=dict)

    def __post_init__(self):
        u = self.universe
        for word, mask in self.sets.items():
            u.check(mask)
        for word, rel in self.verbs.items():
            if any(not (0 <= x < len(u) and 0 <= y < len(u)) for x, y in rel):
                raise ModelError(f"verb {word!r} relates elements outside the universe")

    def set_of(self, word: str) -> int:
        try:
            return self.sets[word]
        except KeyError:
            raise ModelError(f"no set interpretation for {word!r}") from None

    def relation(self, word: str) -> Relation:
        try:
            return self.verbs[word]
        except KeyError:
            raise ModelError(f"no relation interpretation for {word!r}") from None

    def quantifier(self, word: str) -> Quantifier:
        try:
            return self.dets[word]
        except KeyError:
            raise ModelError(f"no quantifier interpretation for {word!r}") from None

    @cached_property
    def _images(self) -> dict[str, list[int]]:
        n = len(self.universe)
        images = {}
        for word, rel in self.verbs.items():
            succ = [0] * n
            for x, y in rel:
                succ[x] |= 1 << y
            table = [0] * (1 << n)
            for a in range(1, 1 << n):
                low = a & -a
                table[a] = table[a ^ low] | succ[low.bit_length() - 1]
            images[word] = table
        return images

    def image(self, verb: str, a: int) -> int:
        """Forward image of ``verb`` on ``a`` (tabulated)."""
        self.relation(verb)
        return self._images[verb][a]

    def lexicon(self) -> dict[str, list[str]]:
        """Categories implied by the interpretations, for parsing."""
        lex = {w: ["N", "NP", "VP"] for w in self.sets}
        lex.update({w: ["V"] for w in self.verbs})
        lex.update({w: ["Det"] for w in self.dets})
        return lex

    @classmethod
    def from_dict(cls, data: Mapping) -> RelModel:
        try:
            u = Universe(tuple(data["universe"]))
            index = {e: i for i, e in enumerate(u.elements)}
            sets = {w.lower(): u.mask(members) for w, members in data.get("sets", {}).items()}
            verbs = {w.lower(): frozenset((index[x], index[y]) for x, y in pairs)
                     for w, pairs in data.get("verbs", {}).items()}
            dets = {w.lower(): parse_quantifier(q) for w, q in data.get("dets", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(f"malformed model: {exc}") from exc
        return cls(u, sets, verbs, dets)

    def to_dict(self) -> dict:
        u = self.universe
        return {
            "universe": list(u.elements),
            "sets": {w: list(u.names(m)) for w, m in sorted(self.sets.items())},
            "verbs": {w: sorted([u.elements[x], u.elements[y]] for x, y in rel)
                      for w, rel in sorted(self.verbs.items())},
            "dets": {w: str(q) for w, q in sorted(self.dets.items())},
        }

    @classmethod
    def load(cls, path) -> RelModel:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def truth_bc(parsed: ParsedSentence, m: RelModel) -> bool:
    """Barwise-Cooper truth of a parsed sentence in ``m``."""
    shape = parsed.shape
    if shape is Shape.NP_VP:
        return m.set_of(parsed.word("VP")) & m.set_of(parsed.word("NP")) != 0
    if shape is Shape.DET_N_VP:
        n = m.set_of(parsed.word("N"))
        q = m.quantifier(parsed.word("Det"))
        return q.holds(n, m.set_of(parsed.word("VP")) & n)
    if shape is Shape.NP_V_NP:
        subj, obj = m.set_of(parsed.word("NP", 0)), m.set_of(parsed.word("NP", 1))
        return m.image(parsed.word("V"), subj) & obj != 0
    if shape is Shape.NP_V_DET_N:
        n = m.set_of(parsed.word("N"))
        q = m.quantifier(parsed.word("Det"))
        return q.holds(n, m.image(parsed.word("V"), m.set_of(parsed.word("NP"))) & n)
    raise OracleUnsupported(f"no set-theoretic truth condition for shape {shape}")
