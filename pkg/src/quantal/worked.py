"""The printed arithmetic for "all animals run" and "some animals run".

Each entry is ``outer * (a*b + c*d)``: the weight of one feature of
``animal`` times a two-term sum of quantifier-table products.  The entries
are replayed as printed rather than re-derived from the tables, which they do
not match exactly (see the README).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

SENTENCES = ("all animals run", "some animals run")
DIMENSIONS = ("s1", "s2", "s3")


@dataclass(frozen=True)
class Entry:
    outer: float
    terms: tuple[tuple[float, float], ...]

    def render(self) -> str:
        inner = "+".join(f"{a!r}×{b!r}" for a, b in self.terms)
        return f"{self.outer!r}×({inner})"

    def value(self) -> float:
        return self.outer * sum(a * b for a, b in self.terms)


ENTRIES = {
    "all animals run": (
        Entry(0.5, ((0.4, 0.9), (0.3, 0.2))),
        Entry(0.4, ((0.5, 0.7), (0.3, 0.3))),
        Entry(0.3, ((0.5, 0.5), (0.4, 0.3))),
    ),
    "some animals run": (
        Entry(0.5, ((0.4, 0.3), (0.5, 0.2))),
        Entry(0.4, ((0.5, 0.9), (0.3, 0.5))),
        Entry(0.3, ((0.5, 0.6), (0.4, 0.5))),
    ),
}

EXPECTED = {
    "all animals run": (
        "0.5×(0.4×0.9+0.3×0.2)",
        "0.4×(0.5×0.7+0.3×0.3)",
        "0.3×(0.5×0.5+0.4×0.3)",
    ),
    "some animals run": (
        "0.5×(0.4×0.3+0.5×0.2)",
        "0.4×(0.5×0.9+0.3×0.5)",
        "0.3×(0.5×0.6+0.4×0.5)",
    ),
}


@dataclass(frozen=True)
class Row:
    sentence: str
    dimension: str
    expression: str
    value: float
    expected: str

    @property
    def ok(self) -> bool:
        return self.expression == self.expected


def reproduce_worked_example() -> list[Row]:
    rows = []
    for sentence in SENTENCES:
        for dim, entry, expected in zip(DIMENSIONS, ENTRIES[sentence], EXPECTED[sentence]):
            rows.append(Row(sentence, dim, entry.render(), entry.value(), expected))
    return rows


def format_table(rows: list[Row], values_only: bool = False) -> str:
    lines = []
    for sentence in SENTENCES:
        mine = [r for r in rows if r.sentence == sentence]
        if values_only:
            lines.append(f"{sentence}: " + " ".join(f"{r.value:.12g}" for r in mine))
            continue
        for r in mine:
            lines.append(f"{sentence}\t{r.dimension}\t{r.expression}\t= {r.value:.12g}")
    return "\n".join(lines)


def animals_model_data() -> dict:
    """The feature-set model (animal, run, all, some) as a model-file dict."""
    text = resources.files("quantal").joinpath("data/animals.json").read_text("utf-8")
    return json.loads(text)
