"""Windowed co-occurrence counts, their normalizations, and cosine similarity.

``raw`` is the plain windowed count ``N(f, t)``: the number of pairs of an
occurrence of ``t`` and an occurrence of a token of ``f`` at distance at most
``k`` (and not at the same position).  The other schemes divide by ``L``,
the number of occurrences of ``t``, and by a configured ``P(f)``.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

SCHEMES = ("raw", "prob", "condprob", "lr", "loglr")


class CooccurrenceError(ValueError):
    """Bad configuration or an undefined quantity."""


class UndefinedTarget(CooccurrenceError):
    pass


class UndefinedSimilarity(CooccurrenceError):
    pass


@dataclass(frozen=True)
class Feature:
    name: str
    tokens: frozenset[str]

    def __post_init__(self):
        if not self.tokens:
            raise CooccurrenceError(f"feature {self.name!r} has no tokens")


@dataclass(frozen=True)
class CooccurrenceConfig:
    window: int
    targets: tuple[str, ...]
    features: tuple[Feature, ...]
    probabilities: Mapping[str, float] | None = None

    def __post_init__(self):
        if not isinstance(self.window, int) or self.window < 1:
            raise CooccurrenceError("window size must be a positive integer")
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise CooccurrenceError("duplicate feature names")
        for name, p in (self.probabilities or {}).items():
            if name not in names:
                raise CooccurrenceError(f"probability given for unknown feature {name!r}")
            if not 0 < p <= 1:
                raise CooccurrenceError(f"P({name}) = {p} is outside (0, 1]")

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)

    def probability(self, feature: str) -> float:
        try:
            return self.probabilities[feature]
        except (KeyError, TypeError):
            raise CooccurrenceError(f"no P(f) configured for feature {feature!r}") from None

    @classmethod
    def from_dict(cls, data: Mapping) -> CooccurrenceConfig:
        try:
            feats = []
            for spec in data["features"]:
                if isinstance(spec, str):
                    feats.append(Feature(spec.lower(), frozenset([spec.lower()])))
                else:
                    feats.append(Feature(spec["name"].lower(),
                                         frozenset(t.lower() for t in spec["tokens"])))
            probs = data.get("featureProbabilities")
            return cls(
                window=data.get("window", 5),
                targets=tuple(t.lower() for t in data["targets"]),
                features=tuple(feats),
                probabilities={k.lower(): float(v) for k, v in probs.items()} if probs else None,
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise CooccurrenceError(f"malformed co-occurrence config: {exc!r}") from exc

    @classmethod
    def load(cls, path) -> CooccurrenceConfig:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class CooccurrenceMatrix:
    targets: tuple[str, ...]
    features: tuple[str, ...]
    counts: dict[tuple[str, str], int] = field(default_factory=dict)
    totals: dict[str, int] = field(default_factory=dict)

    def count(self, target: str, feature: str) -> int:
        return self.counts.get((target, feature), 0)

    def row(self, target: str) -> list[int]:
        return [self.count(target, f) for f in self.features]

    def to_dict(self) -> dict:
        return {
            "targets": list(self.targets),
            "features": list(self.features),
            "counts": {t: self.row(t) for t in self.targets},
            "totals": {t: self.totals.get(t, 0) for t in self.targets},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> CooccurrenceMatrix:
        try:
            feats = tuple(data["features"])
            counts = {}
            for t, row in data["counts"].items():
                if len(row) != len(feats):
                    raise CooccurrenceError(f"row {t!r} has {len(row)} entries, "
                                            f"expected {len(feats)}")
                counts.update({(t, f): int(n) for f, n in zip(feats, row) if n})
            return cls(tuple(data["targets"]), feats, counts,
                       {t: int(n) for t, n in data["totals"].items()})
        except (KeyError, TypeError) as exc:
            raise CooccurrenceError(f"malformed co-occurrence matrix: {exc!r}") from exc

    @classmethod
    def load(cls, path) -> CooccurrenceMatrix:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def tokenize(text: str) -> list[str]:
    return text.lower().split()


def build_matrix(corpus: str | Sequence[str], cfg: CooccurrenceConfig) -> CooccurrenceMatrix:
    tokens = tokenize(corpus) if isinstance(corpus, str) else [t.lower() for t in corpus]
    k = cfg.window
    totals = Counter(t for t in tokens if t in cfg.targets)
    counts: Counter = Counter()
    for i, tok in enumerate(tokens):
        if tok not in totals:
            continue
        nearby = Counter(tokens[max(0, i - k):i] + tokens[i + 1:i + k + 1])
        for feat in cfg.features:
            n = sum(nearby[m] for m in feat.tokens)
            if n:
                counts[tok, feat.name] += n
    return CooccurrenceMatrix(cfg.targets, cfg.feature_names, dict(counts),
                              {t: totals.get(t, 0) for t in cfg.targets})


def normalize(m: CooccurrenceMatrix, scheme: str, cfg: CooccurrenceConfig | None = None,
              targets: Iterable[str] | None = None) -> dict[tuple[str, str], float]:
    """Every ``(target, feature)`` cell under ``scheme``, zeros included."""
    if scheme not in SCHEMES:
        raise CooccurrenceError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if scheme in ("lr", "loglr"):
        if cfg is None:
            raise CooccurrenceError(f"{scheme} needs feature probabilities")
        prior = {f: cfg.probability(f) for f in m.features}
    out = {}
    for t in m.targets if targets is None else targets:
        if scheme != "raw" and not m.totals.get(t):
            raise UndefinedTarget(f"target {t!r} never occurs (L = 0)")
        for f in m.features:
            raw = m.count(t, f)
            if scheme == "raw":
                out[t, f] = float(raw)
                continue
            # P(f, t) / P(t) with both estimated per occurrence of t is raw / L
            prob = raw / m.totals[t]
            if scheme in ("prob", "condprob"):
                out[t, f] = prob
            elif scheme == "lr":
                out[t, f] = prob / prior[f]
            else:
                out[t, f] = math.log10(prob / prior[f]) if raw else 0.0
    return out


def vector(m: CooccurrenceMatrix, target: str, scheme: str = "raw",
           cfg: CooccurrenceConfig | None = None) -> list[float]:
    cells = normalize(m, scheme, cfg, targets=[target])
    return [cells[target, f] for f in m.features]


def cosine(v: Sequence[float], w: Sequence[float]) -> float:
    if len(v) != len(w):
        raise ValueError(f"dimension mismatch: {len(v)} vs {len(w)}")
    nv, nw = math.hypot(*v), math.hypot(*w)
    if nv == 0 or nw == 0:
        raise UndefinedSimilarity("cosine is undefined for a zero vector")
    return sum(a * b for a, b in zip(v, w)) / (nv * nw)


def export_singleton_model(m: CooccurrenceMatrix, scheme: str,
                           cfg: CooccurrenceConfig | None = None) -> dict:
    """A distributional model file whose basis sets are the singletons ``{f}``."""
    present = [t for t in m.targets if m.totals.get(t)]
    cells = normalize(m, scheme, cfg, targets=present)
    vectors = {}
    for t in present:
        row = {"{" + f + "}": cells[t, f] for f in m.features if cells[t, f] != 0}
        if row:
            vectors[t] = row
    return {
        "alphabet": list(m.features),
        "features": [{"name": "{" + f + "}", "tokens": [f]} for f in m.features],
        "sentenceSpace": "scalar",
        "vectors": vectors,
    }


# -- the four-by-four table used as a running example -------------------------

DOLPHIN_PROBABILITIES = {"fish": 0.01, "horse": 0.01, "pet": 0.02, "blood": 0.01}


def dolphin_config() -> CooccurrenceConfig:
    return CooccurrenceConfig(
        window=5,
        targets=("dolphin", "shark", "plankton", "pony"),
        features=tuple(Feature(f, frozenset([f])) for f in DOLPHIN_PROBABILITIES),
        probabilities=dict(DOLPHIN_PROBABILITIES),
    )


def dolphin_matrix() -> CooccurrenceMatrix:
    """Counts for four features only; the totals include unlisted columns."""
    return CooccurrenceMatrix.from_dict({
        "targets": ["dolphin", "shark", "plankton", "pony"],
        "features": ["fish", "horse", "pet", "blood"],
        "counts": {
            "dolphin": [500, 10, 700, 0],
            "shark": [250, 10, 20, 400],
            "plankton": [250, 10, 1000, 10],
            "pony": [10, 1000, 10, 10],
        },
        "totals": {"dolphin": 2000, "shark": 1000, "plankton": 1700, "pony": 1500},
    })
