"""Exhaustive agreement sweep between the oracle and both categorical backends."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .grammar import CfgSpec, Shape, parse_sentence, type_dictionary
from .oracle import RelModel, truth_bc
from .quantifiers import Universe, builtin_quantifiers
from .rel import RelBackend, rel_truth
from .term import compile_sentence, evaluate
from .vect import BooleanVectBackend

NOUNS = ("nx", "ny")
NPS = ("np1", "np2")
VP = "vp"
VERB = "tv"


@dataclass
class SweepReport:
    max_u: int
    seed: int
    verb_samples: int
    checks: Counter = field(default_factory=Counter)
    mismatches: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "maxU": self.max_u,
            "seed": self.seed,
            "verbSamples": self.verb_samples,
            "checks": dict(sorted(self.checks.items())),
            "total": self.total,
            "mismatches": len(self.mismatches),
            "counterexamples": self.mismatches[:5],
        }


def random_relation(rng: random.Random, n: int) -> frozenset:
    return frozenset((x, y) for x in range(n) for y in range(n) if rng.random() < 0.5)


def all_relations(n: int) -> Iterator[frozenset]:
    pairs = [(x, y) for x in range(n) for y in range(n)]
    for bits in range(1 << len(pairs)):
        yield frozenset(p for i, p in enumerate(pairs) if bits >> i & 1)


def _sentences(n_dets: int):
    dets = [f"d{i}" for i in range(n_dets)]
    lex = {w: ["N"] for w in NOUNS}
    lex.update({w: ["NP"] for w in NPS})
    lex.update({VP: ["VP"], VERB: ["V"]})
    lex.update({d: ["Det"] for d in dets})
    dictionary = type_dictionary(CfgSpec.fragment(), extra=lex)

    def parsed(text):
        p = parse_sentence(text, dictionary)
        return p, compile_sentence(p)

    return dets, {
        Shape.NP_VP: [parsed(f"{NPS[0]} {VP}")],
        Shape.DET_N_VP: [parsed(f"{d} {NOUNS[0]} {VP}") for d in dets],
        Shape.NP_V_NP: [parsed(f"{NPS[0]} {VERB} {NPS[1]}")],
        Shape.NP_V_DET_N: [parsed(f"{NPS[0]} {VERB} {d} {NOUNS[1]}") for d in dets],
        Shape.DET_N_V_DET_N: [parsed(f"{d} {NOUNS[0]} {VERB} {e} {NOUNS[1]}")
                              for d in dets for e in dets],
    }


def equiv_sweep(max_u: int = 3, seed: int = 0, verb_samples: int = 10,
                exhaustive_verbs: bool = False,
                rel_backend: Callable = RelBackend,
                vect_backend: Callable = BooleanVectBackend,
                stop_after: int | None = None) -> SweepReport:
    """Compare oracle truth, Rel truth and the boolean scalar on every model.

    The oracle takes part on the shapes it defines; the doubly quantified
    shape is a Rel/FdVect comparison only.  ``stop_after`` ends the sweep
    once that many mismatches have been collected.
    """
    if max_u > 3:
        raise ValueError("equivalence sweeps are limited to |U| <= 3")
    if exhaustive_verbs and max_u > 2:
        raise ValueError("exhaustive verb enumeration needs |U| <= 2")
    quantifiers = builtin_quantifiers(max_u)
    dets, sentences = _sentences(len(quantifiers))
    det_map = dict(zip(dets, quantifiers))
    report = SweepReport(max_u, seed, verb_samples)

    for size in range(1, max_u + 1):
        u = Universe.of_size(size)
        rb, vb = rel_backend(u), vect_backend(u)
        subsets = list(u.subsets())
        if exhaustive_verbs:
            verbs = list(all_relations(size))
        else:
            rng = random.Random(seed * 1009 + size)
            verbs = [random_relation(rng, size) for _ in range(verb_samples)]

        def models():
            # each shape only reads some of the words; the rest stay empty
            for a, b in itertools.product(subsets, repeat=2):
                yield Shape.NP_VP, {NPS[0]: a, VP: b}, frozenset()
                yield Shape.DET_N_VP, {NOUNS[0]: a, VP: b}, frozenset()
                for rel in verbs:
                    yield Shape.NP_V_NP, {NPS[0]: a, NPS[1]: b}, rel
                    yield Shape.NP_V_DET_N, {NPS[0]: a, NOUNS[1]: b}, rel
                    yield Shape.DET_N_V_DET_N, {NOUNS[0]: a, NOUNS[1]: b}, rel

        for shape, sets, rel in models():
            model = RelModel(u, sets, {VERB: rel}, det_map)
            for parsed, term in sentences[shape]:
                rel_value = rel_truth(evaluate(term, rb, model))
                vect_value = vb.scalar(evaluate(term, vb, model))
                results = {"rel": rel_value, "fdvect": vect_value != 0}
                if shape is not Shape.DET_N_V_DET_N:
                    results["oracle"] = truth_bc(parsed, model)
                report.checks[shape.value] += 1
                if len(set(results.values())) > 1:
                    report.mismatches.append({
                        "sentence": " ".join(parsed.words),
                        "shape": shape.value,
                        "results": results,
                        "model": model.to_dict(),
                    })
                    if stop_after is not None and len(report.mismatches) >= stop_after:
                        return report
    return report
