"""Finite-dimensional vector space backends.

``W`` is the free vector space on the subsets of an alphabet (``U`` for the
boolean instantiation, a feature alphabet for the distributional one), with
the subset masks as its orthonormal basis.  ``S`` has a declared basis
``s_1 .. s_k``; the scalar space is the one-dimensional case.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .grammar import ParsedSentence, Shape
from .oracle import ModelError, RelModel, forward_image
from .quantifiers import Quantifier, Universe, family, parse_quantifier
from .sparse import REAL, Morphism, SparseBackend
from .term import S, W, compile_sentence, evaluate


@dataclass(frozen=True)
class SentenceSpace:
    names: tuple[str, ...] = ("*",)

    def __post_init__(self):
        if not self.names:
            raise ValueError("a sentence space needs at least one dimension")

    @classmethod
    def scalar(cls) -> SentenceSpace:
        return cls()

    @property
    def is_scalar(self) -> bool:
        return len(self.names) == 1

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ModelError(f"unknown sentence dimension {name!r}") from None


@dataclass(frozen=True)
class WeightedVector:
    """A sparse vector; ``labels`` name the basis indices and identify the space."""

    labels: tuple[str, ...]
    weights: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "weights",
                           {i: float(w) for i, w in self.weights.items() if w != 0})

    def __getitem__(self, i: int) -> float:
        return self.weights.get(i, 0.0)

    def dense(self) -> list[float]:
        return [self[i] for i in range(len(self.labels))]

    def nonzero(self) -> bool:
        return bool(self.weights)

    def as_dict(self) -> dict[str, float]:
        return {self.labels[i]: w for i, w in sorted(self.weights.items())}


def pointwise_entails(v: WeightedVector, w: WeightedVector) -> bool:
    """``v |- w`` under the coordinatewise order."""
    if v.labels != w.labels:
        raise ValueError("vectors live in different spaces")
    return all(v[i] <= w[i] for i in set(v.weights) | set(w.weights))


@dataclass(frozen=True)
class QuantifierMatrix:
    """Weights ``c(A, B)`` of a determiner box ``|A> -> sum_B c(A, B) |B>``.

    With no ``table`` this is the membership policy: weight 1 on every
    ``B`` in the quantifier's family.  With a table the weights are read
    from it (missing entries are 0) and, when ``quantifier`` is given,
    restricted to the family.
    """

    alphabet: Universe
    quantifier: Quantifier | None = None
    table: Mapping[tuple[int, int], float] | None = None

    def __post_init__(self):
        if self.quantifier is None and self.table is None:
            raise ValueError("a quantifier matrix needs a quantifier or a table")
        rows = {}
        for (a, b), w in (self.table or {}).items():
            if w != 0 and (self.quantifier is None or self.quantifier.holds(a, b)):
                rows.setdefault(a, {})[b] = float(w)
        object.__setattr__(self, "_rows", rows)

    def row(self, a: int) -> dict[int, float]:
        if self.table is None:
            return {b: 1.0 for b in family(self.quantifier, self.alphabet, a)}
        return dict(self._rows.get(a, {}))

    def weight(self, a: int, b: int) -> float:
        return self.row(a).get(b, 0.0)


@dataclass
class DistModel:
    """Word meanings in ``V_P(Sigma)`` and ``Z``.

    ``vectors`` hold N/NP words (and VP words when ``Z`` is scalar), ``vps``
    intransitive verbs over ``W (x) Z``, ``verbs`` transitive verbs over
    ``W (x) Z (x) W``; all keyed by basis tuples.
    """

    alphabet: Universe
    sentence_space: SentenceSpace = field(default_factory=SentenceSpace)
    features: dict[str, int] = field(default_factory=dict)
    vectors: dict[str, dict[int, float]] = field(default_factory=dict)
    vps: dict[str, dict[tuple[int, int], float]] = field(default_factory=dict)
    verbs: dict[str, dict[tuple[int, int, int], float]] = field(default_factory=dict)
    dets: dict[str, QuantifierMatrix] = field(default_factory=dict)

    def noun(self, word: str) -> dict[int, float]:
        try:
            return self.vectors[word]
        except KeyError:
            raise ModelError(f"no vector for {word!r}") from None

    def verb_phrase(self, word: str) -> dict[tuple[int, int], float]:
        if word in self.vps:
            return self.vps[word]
        if word in self.vectors and self.sentence_space.is_scalar:
            return {(a, 0): w for a, w in self.vectors[word].items()}
        raise ModelError(f"no verb-phrase matrix for {word!r}")

    def verb(self, word: str) -> dict[tuple[int, int, int], float]:
        try:
            return self.verbs[word]
        except KeyError:
            raise ModelError(f"no verb cube for {word!r}") from None

    def quantifier(self, word: str) -> QuantifierMatrix:
        try:
            return self.dets[word]
        except KeyError:
            raise ModelError(f"no quantifier matrix for {word!r}") from None

    def lexicon(self) -> dict[str, list[str]]:
        lex = {w: ["N", "NP", "VP"] for w in self.vectors}
        lex.update({w: ["VP"] for w in self.vps})
        lex.update({w: ["V"] for w in self.verbs})
        lex.update({w: ["Det"] for w in self.dets})
        return lex

    # -- naming of basis elements

    def subset(self, ref: str) -> int:
        """A feature-set name, or a literal token set like ``{cats,kittens}``."""
        ref = ref.strip()
        if ref in self.features:
            return self.features[ref]
        if ref.startswith("{") and ref.endswith("}"):
            toks = [t.strip() for t in ref[1:-1].split(",") if t.strip()]
            try:
                return self.alphabet.mask(toks)
            except ValueError as exc:
                raise ModelError(str(exc)) from None
        raise ModelError(f"unknown feature set {ref!r}")

    def label(self, mask: int) -> str:
        names = {m: n for n, m in self.features.items()}
        return names.get(mask, self.alphabet.show(mask))

    def powerset_labels(self) -> tuple[str, ...]:
        return tuple(self.label(m) for m in self.alphabet.subsets())

    # -- file format

    @classmethod
    def from_dict(cls, data: Mapping) -> DistModel:
        try:
            return cls._from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(f"malformed distributional model: {exc!r}") from exc

    @classmethod
    def _from_dict(cls, data: Mapping) -> DistModel:
        feats = [(f["name"], [t.lower() for t in f["tokens"]]) for f in data.get("features", [])]
        tokens = list(data.get("alphabet", []))
        for _, toks in feats:
            tokens.extend(t for t in toks if t not in tokens)
        for ref in _literal_refs(data):
            tokens.extend(t for t in ref if t not in tokens)
        alphabet = Universe(tuple(tokens))
        space = data.get("sentenceSpace", "scalar")
        space = SentenceSpace() if space == "scalar" else SentenceSpace(tuple(space))
        model = cls(alphabet, space, {name: alphabet.mask(toks) for name, toks in feats})

        for word, weights in data.get("vectors", {}).items():
            model.vectors[word.lower()] = _accumulate(
                (model.subset(ref), w) for ref, w in weights.items())
        for word, entries in data.get("verbs", {}).items():
            rows = []
            for e in entries:
                s = space.index(e["s"]) if "s" in e else 0
                if "col" in e:
                    rows.append(((model.subset(e["row"]), s, model.subset(e["col"])), e["weight"]))
                else:
                    rows.append(((model.subset(e["row"]), s), e["weight"]))
            arity = {len(k) for k, _ in rows}
            if len(arity) > 1:
                raise ModelError(f"verb {word!r} mixes intransitive and transitive entries")
            target = model.verbs if arity == {3} else model.vps
            target[word.lower()] = _accumulate(rows)
        for word, spec in data.get("dets", {}).items():
            model.dets[word.lower()] = model._det_matrix(spec)
        return model

    def _det_matrix(self, spec) -> QuantifierMatrix:
        if isinstance(spec, str):
            return QuantifierMatrix(self.alphabet, parse_quantifier(spec))
        policy = spec.get("policy", "membership")
        q = parse_quantifier(spec["quantifier"]) if spec.get("quantifier") else None
        if policy == "membership":
            if q is None:
                raise ModelError("membership policy needs a quantifier")
            return QuantifierMatrix(self.alphabet, q)
        if policy == "cooccurrence":
            table = _accumulate(((self.subset(a), self.subset(b)), w)
                                for a, row in spec["table"].items() for b, w in row.items())
            return QuantifierMatrix(self.alphabet, q, table)
        raise ModelError(f"unknown quantifier policy {policy!r}")

    @classmethod
    def load(cls, path) -> DistModel:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


_BRACES = re.compile(r"^\{([^}]*)\}$")


def _literal_refs(data):
    refs = []

    def see(ref):
        m = _BRACES.match(ref.strip())
        if m:
            refs.append([t.strip().lower() for t in m.group(1).split(",") if t.strip()])

    for weights in data.get("vectors", {}).values():
        for ref in weights:
            see(ref)
    for entries in data.get("verbs", {}).values():
        for e in entries:
            see(e["row"])
            if "col" in e:
                see(e["col"])
    for spec in data.get("dets", {}).values():
        if isinstance(spec, Mapping):
            for a, row in spec.get("table", {}).items():
                see(a)
                for b in row:
                    see(b)
    return refs


def _accumulate(pairs):
    out = {}
    for key, w in pairs:
        out[key] = out.get(key, 0.0) + float(w)
    return {k: w for k, w in out.items() if w != 0}


class VectBackend(SparseBackend):
    """Distributional instantiation over ``V_P(Sigma)`` and ``Z``."""

    semiring = REAL

    def __init__(self, alphabet: Universe, sentence_space: SentenceSpace | None = None):
        self.alphabet = alphabet
        self.sentence_space = sentence_space or SentenceSpace()
        self._powerset = tuple(alphabet.subsets())
        self._sentence = tuple(range(len(self.sentence_space)))

    @classmethod
    def for_model(cls, model: DistModel) -> VectBackend:
        return cls(model.alphabet, model.sentence_space)

    def carrier(self, wire):
        return self._powerset if wire is W else self._sentence

    def delta(self):
        return self.morphism((W,), (W, W), lambda x: {(x[0], x[0]): 1.0})

    def iota(self):
        return self.morphism((W,), (), lambda x: {(): 1.0})

    def mu(self):
        return self.morphism((W, W), (W,), lambda x: {(x[0] & x[1],): 1.0})

    def zeta(self):
        full = {(self.alphabet.full,): 1.0}
        return self.morphism((), (W,), lambda x: full)

    def state(self, word, role, lexicon: DistModel):
        if role in ("N", "NP"):
            return self.state_from((W,), {(a,): w for a, w in lexicon.noun(word).items()})
        if role == "VP":
            return self.state_from((W, S), lexicon.verb_phrase(word))
        if role == "V":
            return self.state_from((W, S, W), lexicon.verb(word))
        raise ValueError(f"no vector interpretation for role {role!r}")

    def det(self, word, lexicon, builtin=False):
        if builtin:
            matrix = QuantifierMatrix(self.alphabet, parse_quantifier(word))
        else:
            matrix = lexicon.quantifier(word)
        return self._det(matrix)

    def _det(self, matrix: QuantifierMatrix) -> Morphism:
        rows = {a: {(b,): w for b, w in matrix.row(a).items()} for a in self._powerset}
        return self.morphism((W,), (W,), lambda x: rows[x[0]])


class BooleanVectBackend(VectBackend):
    """Boolean instantiation: the Rel model embedded with all weights 1."""

    def __init__(self, universe: Universe):
        super().__init__(universe, SentenceSpace())

    def state(self, word, role, lexicon: RelModel):
        if role in ("N", "NP"):
            return self.state_from((W,), {(lexicon.set_of(word),): 1.0})
        if role == "VP":
            return self.state_from((W, S), {(lexicon.set_of(word), 0): 1.0})
        if role == "V":
            rel = lexicon.relation(word)
            return self.state_from(
                (W, S, W), {(a, 0, forward_image(rel, a)): 1.0 for a in self._powerset})
        raise ValueError(f"no vector interpretation for role {role!r}")

    def det(self, word, lexicon: RelModel, builtin=False):
        q = parse_quantifier(word) if builtin else lexicon.quantifier(word)
        return self._boolean_det(q)

    @lru_cache(maxsize=None)
    def _boolean_det(self, q: Quantifier) -> Morphism:
        return self._det(QuantifierMatrix(self.alphabet, q))


def boolean_sentence_value(parsed: ParsedSentence, model: RelModel, closure: bool = True
                           ) -> float:
    """The scalar of the boolean instantiation; nonzero iff the sentence is true."""
    backend = BooleanVectBackend(model.universe)
    return backend.scalar(evaluate(compile_sentence(parsed, closure), backend, model))


def dist_sentence_value(parsed: ParsedSentence, model: DistModel, closure: bool = True
                        ) -> WeightedVector:
    """The sentence vector over ``Z`` (or, for a bare ``Det N`` phrase, its
    vector over ``V_P(Sigma)``)."""
    backend = VectBackend.for_model(model)
    value = evaluate(compile_sentence(parsed, closure), backend, model)
    out = value(())
    if parsed.shape is Shape.DET_N:
        return WeightedVector(model.powerset_labels(), {k[0]: w for k, w in out.items()})
    return WeightedVector(model.sentence_space.names, {k[0]: w for k, w in out.items()})


__all__ = [
    "BooleanVectBackend", "DistModel", "QuantifierMatrix", "SentenceSpace", "VectBackend",
    "WeightedVector", "boolean_sentence_value", "dist_sentence_value", "pointwise_entails",
]
