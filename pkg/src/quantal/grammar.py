"""Pregroup types, the CFG-to-pregroup translation and reduction search."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence

DATA = Path(__file__).parent / "data"


class GrammarError(ValueError):
    pass


class TranslationError(GrammarError):
    pass


class LexiconError(GrammarError):
    pass


class UngrammaticalError(GrammarError):
    def __init__(self, message, attempted=()):
        super().__init__(message)
        self.attempted = list(attempted)


@dataclass(frozen=True, order=True)
class SimpleType:
    """An atom with an adjoint order: ``z < 0`` left adjoints, ``z > 0`` right."""

    atom: str
    z: int = 0

    @property
    def l(self) -> SimpleType:
        return SimpleType(self.atom, self.z - 1)

    @property
    def r(self) -> SimpleType:
        return SimpleType(self.atom, self.z + 1)

    def contracts_with(self, other: SimpleType) -> bool:
        """``self . other <= 1`` by a single contraction."""
        return self.atom == other.atom and other.z == self.z + 1

    def __str__(self) -> str:
        if self.z < 0:
            return self.atom + "^" + "l" * -self.z
        if self.z > 0:
            return self.atom + "^" + "r" * self.z
        return self.atom


@dataclass(frozen=True)
class PregroupType:
    """A product of simple types; the empty product is the unit."""

    factors: tuple[SimpleType, ...] = ()

    @classmethod
    def atom(cls, name: str) -> PregroupType:
        return cls((SimpleType(name),))

    @classmethod
    def parse(cls, text: str) -> PregroupType:
        """Read ``p^r.s.p^l`` style notation (``1`` is the unit)."""
        text = text.strip()
        if text in ("", "1"):
            return cls()
        factors = []
        for part in text.replace("·", ".").split("."):
            name, _, adj = part.strip().partition("^")
            if not name or set(adj) - {"l", "r"} or ("l" in adj and "r" in adj):
                raise GrammarError(f"bad simple type {part!r}")
            factors.append(SimpleType(name, len(adj) if adj.startswith("r") else -len(adj)))
        return cls(tuple(factors))

    def __mul__(self, other: PregroupType) -> PregroupType:
        return PregroupType(self.factors + other.factors)

    @property
    def l(self) -> PregroupType:
        return PregroupType(tuple(f.l for f in reversed(self.factors)))

    @property
    def r(self) -> PregroupType:
        return PregroupType(tuple(f.r for f in reversed(self.factors)))

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return "·".join(map(str, self.factors)) if self.factors else "1"


class Direction(str, Enum):
    LEFT_TO_RIGHT = "left-to-right"
    RIGHT_TO_LEFT = "right-to-left"


@dataclass(frozen=True)
class BinaryRule:
    lhs: str
    rhs: tuple[str, str]
    direction: Direction


@dataclass
class CfgSpec:
    """A CFG with direction-tagged binary rules and an atomic lexicon.

    ``lexicon`` maps each terminal to the nonterminals that produce it, in
    preference order.
    """

    atoms: tuple[str, ...]
    start: str
    atomic_assignments: dict[str, str]
    binary_rules: list[BinaryRule]
    lexicon: dict[str, list[str]] = field(default_factory=dict)

    @property
    def nonterminals(self) -> set[str]:
        nts = {self.start, *self.atomic_assignments}
        for rule in self.binary_rules:
            nts.add(rule.lhs)
            nts.update(rule.rhs)
        for cats in self.lexicon.values():
            nts.update(cats)
        return nts

    @classmethod
    def from_dict(cls, data: Mapping) -> CfgSpec:
        try:
            rules = [BinaryRule(r["lhs"], tuple(r["rhs"]), Direction(r["direction"]))
                     for r in data["binaryRules"]]
            atoms = tuple(data["atoms"])
            assignments = dict(data["atomicAssignments"])
        except (KeyError, ValueError, TypeError) as exc:
            raise GrammarError(f"malformed grammar file: {exc}") from exc
        for rule in rules:
            if len(rule.rhs) != 2:
                raise GrammarError(f"rule for {rule.lhs} must have two daughters")
        for nt, a in assignments.items():
            if a not in atoms:
                raise GrammarError(f"{nt} assigned undeclared atom {a!r}")
        lexicon = {tok.lower(): list(cats) for tok, cats in data.get("lexicon", {}).items()}
        return cls(atoms, data.get("start", "S"), assignments, rules, lexicon)

    @classmethod
    def load(cls, path) -> CfgSpec:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    @classmethod
    def fragment(cls) -> CfgSpec:
        """The quantified fragment shipped with the package."""
        return cls.load(DATA / "fragment.json")


def sigma_translate(cfg: CfgSpec, atom_assignment: Mapping[str, str] | None = None
                    ) -> dict[str, PregroupType]:
    """Assign a pregroup type to every nonterminal of ``cfg``.

    In a right-to-left rule ``A -> B C`` the right daughter is the functor and
    gets ``sigma(B)^r . sigma(A)``; in a left-to-right rule the left daughter
    gets ``sigma(A) . sigma(C)^l``.
    """
    assignment = cfg.atomic_assignments if atom_assignment is None else atom_assignment
    sigma = {nt: PregroupType.atom(a) for nt, a in assignment.items()}

    def put(nt, t, rule):
        if nt in sigma and sigma[nt] != t:
            raise TranslationError(
                f"nonterminal {nt} gets conflicting types {sigma[nt]} and {t} (via {rule.lhs})")
        sigma[nt] = t

    pending = list(cfg.binary_rules)
    while pending:
        progress = []
        for rule in pending:
            b, c = rule.rhs
            if rule.direction is Direction.RIGHT_TO_LEFT and rule.lhs in sigma and b in sigma:
                put(c, sigma[b].r * sigma[rule.lhs], rule)
            elif rule.direction is Direction.LEFT_TO_RIGHT and rule.lhs in sigma and c in sigma:
                put(b, sigma[rule.lhs] * sigma[c].l, rule)
            else:
                continue
            progress.append(rule)
        if not progress:
            stuck = sorted({r.rhs[1] if r.direction is Direction.RIGHT_TO_LEFT else r.rhs[0]
                            for r in pending})
            raise TranslationError(f"cannot derive a type for {', '.join(stuck)}")
        pending = [r for r in pending if r not in progress]

    missing = sorted(cfg.nonterminals - sigma.keys())
    if missing:
        raise TranslationError(f"no type for nonterminal {', '.join(missing)}")
    return sigma


@dataclass(frozen=True)
class TypeDictionary:
    """Token -> ordered (nonterminal, type) alternatives."""

    entries: dict[str, tuple[tuple[str, PregroupType], ...]]
    sentence: PregroupType

    def types(self, token: str) -> tuple[tuple[str, PregroupType], ...]:
        try:
            return self.entries[token]
        except KeyError:
            raise LexiconError(f"unknown token {token!r}") from None


def type_dictionary(cfg: CfgSpec, atom_assignment: Mapping[str, str] | None = None,
                    extra: Mapping[str, Sequence[str]] | None = None) -> TypeDictionary:
    """Translate ``cfg`` and type its lexicon (plus ``extra`` entries)."""
    sigma = sigma_translate(cfg, atom_assignment)
    lexicon = dict(cfg.lexicon)
    for tok, cats in (extra or {}).items():
        lexicon.setdefault(tok.lower(), list(cats))
    entries = {}
    for tok, cats in lexicon.items():
        if not cats:
            raise LexiconError(f"token {tok!r} has no category")
        try:
            entries[tok] = tuple((c, sigma[c]) for c in cats)
        except KeyError as exc:
            raise LexiconError(f"token {tok!r} uses unknown category {exc}") from None
    return TypeDictionary(entries, sigma[cfg.start])


# -- reductions --------------------------------------------------------------

@dataclass(frozen=True)
class ReductionDiagram:
    links: tuple[tuple[int, int], ...]
    survivors: tuple[int, ...]

    def is_planar(self) -> bool:
        return not any(i < k < j < l for (i, j) in self.links for (k, l) in self.links)

    def replay(self, factors: Sequence[SimpleType]) -> PregroupType:
        """Apply the links as contractions, innermost first."""
        seq = list(enumerate(factors))
        for i, j in sorted(self.links, key=lambda link: link[1] - link[0]):
            pos = [p for p, _ in seq]
            a, b = pos.index(i), pos.index(j)
            if b != a + 1 or not seq[a][1].contracts_with(seq[b][1]):
                raise GrammarError(f"link {(i, j)} is not a contraction")
            del seq[a:b + 1]
        return PregroupType(tuple(f for _, f in seq))


def reduce(types: Sequence[PregroupType], target: PregroupType) -> ReductionDiagram | None:
    """Find a contraction-only reduction of ``types`` to ``target``.

    Dynamic programming over well-nested matchings; among all diagrams the
    one with the lexicographically least sorted link list is returned.
    """
    if not types:
        raise GrammarError("cannot reduce an empty sequence")
    factors = tuple(f for t in types for f in t.factors)
    goal = target.factors
    n = len(factors)

    @lru_cache(maxsize=None)
    def full(i: int, j: int):
        # least link list contracting factors[i:j] to the unit, or None
        if i == j:
            return ()
        best = None
        for k in range(i + 1, j, 2):
            if not factors[i].contracts_with(factors[k]):
                continue
            inner, outer = full(i + 1, k), full(k + 1, j)
            if inner is not None and outer is not None:
                best = ((i, k),) + inner + outer
                break  # smallest partner of i wins outright
        return best

    @lru_cache(maxsize=None)
    def top(i: int, t: int):
        # least link list reducing factors[i:] to goal[t:]
        if i == n:
            return () if t == len(goal) else None
        options = []
        if t < len(goal) and factors[i] == goal[t]:
            rest = top(i + 1, t + 1)
            if rest is not None:
                options.append(rest)
        for k in range(i + 1, n, 2):
            if factors[i].contracts_with(factors[k]):
                inner = full(i + 1, k)
                outer = top(k + 1, t) if inner is not None else None
                if outer is not None:
                    options.append(((i, k),) + inner + outer)
                    break
        return min(options) if options else None

    links = top(0, 0)
    if links is None:
        return None
    linked = {p for link in links for p in link}
    return ReductionDiagram(links, tuple(p for p in range(n) if p not in linked))


# -- sentences ---------------------------------------------------------------

class Shape(str, Enum):
    NP_VP = "NP-VP"
    DET_N_VP = "Det-N-VP"
    NP_V_NP = "NP-V-NP"
    NP_V_DET_N = "NP-V-Det-N"
    DET_N_V_DET_N = "Det-N-V-Det-N"
    DET_N = "Det-N"


SHAPES = {
    ("NP", "VP"): Shape.NP_VP,
    ("Det", "N", "VP"): Shape.DET_N_VP,
    ("NP", "V", "NP"): Shape.NP_V_NP,
    ("NP", "V", "Det", "N"): Shape.NP_V_DET_N,
    ("Det", "N", "V", "Det", "N"): Shape.DET_N_V_DET_N,
    ("Det", "N"): Shape.DET_N,
}


@dataclass(frozen=True)
class ParsedSentence:
    words: tuple[str, ...]
    categories: tuple[str, ...]
    types: tuple[PregroupType, ...]
    target: PregroupType
    diagram: ReductionDiagram
    shape: Shape | None

    def word(self, category: str, nth: int = 0) -> str:
        hits = [w for w, c in zip(self.words, self.categories) if c == category]
        return hits[nth]


def tokenize(sentence: str | Sequence[str]) -> tuple[str, ...]:
    if isinstance(sentence, str):
        return tuple(sentence.lower().split())
    return tuple(t.lower() for t in sentence)


def parse_sentence(words: str | Sequence[str], dictionary: TypeDictionary,
                   noun_phrase: PregroupType | None = None) -> ParsedSentence:
    """Type ``words`` and reduce them to a sentence (or, failing that, to a
    noun phrase ``p``).

    Type assignments are tried in dictionary order; the first that reduces
    wins.
    """
    tokens = tokenize(words)
    if not tokens:
        raise UngrammaticalError("empty sentence")
    options = [dictionary.types(t) for t in tokens]
    targets = [dictionary.sentence, noun_phrase or PregroupType.atom("p")]
    attempted = []
    for target in targets:
        for choice in itertools.product(*options):
            cats = tuple(c for c, _ in choice)
            types = tuple(t for _, t in choice)
            if target is targets[0]:
                attempted.append(" ".join(f"{w}:{t}" for w, t in zip(tokens, types)))
            diagram = reduce(types, target)
            if diagram is not None:
                return ParsedSentence(tokens, cats, types, target, diagram, SHAPES.get(cats))
    raise UngrammaticalError(
        f"no type assignment of {' '.join(tokens)!r} reduces to {targets[0]}", attempted)


def brute_force_reduces(types: Iterable[PregroupType], target: PregroupType) -> bool:
    """Search every order of adjacent contractions (exponential; tests only)."""
    start = tuple(f for t in types for f in t.factors)
    seen = set()
    stack = [start]
    while stack:
        seq = stack.pop()
        if seq == target.factors:
            return True
        if seq in seen:
            continue
        seen.add(seq)
        for i in range(len(seq) - 1):
            if seq[i].contracts_with(seq[i + 1]):
                stack.append(seq[:i] + seq[i + 2:])
    return False
