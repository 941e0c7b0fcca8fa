"""Direct summation of quantified sentence vectors, without diagrams.

Used as an independent check on the generic evaluator.  ``<A|B>`` on the
powerset basis is 1 when ``A == B`` and 0 otherwise.
"""

from __future__ import annotations

from collections import defaultdict

from .vect import DistModel


def subject_sum(model: DistModel, det: str, noun: str, vp: str) -> dict[int, float]:
    """``sum_{ijk} sum_B c^n_i c^vp_jk c^d_B <B | A_i & A_j> |s_k>``."""
    out = defaultdict(float)
    q = model.quantifier(det)
    for a_i, c_n in model.noun(noun).items():
        row = q.row(a_i)
        for (a_j, k), c_vp in model.verb_phrase(vp).items():
            for b, c_d in row.items():
                if b == a_i & a_j:
                    out[k] += c_n * c_vp * c_d
    return {k: w for k, w in out.items() if w != 0}


def object_sum(model: DistModel, np: str, verb: str, det: str, noun: str) -> dict[int, float]:
    """``sum c^np_i c^v_jkl c^n_m c^d_B <A_i|A_j> <A_l & A_m | B> |s_k>``."""
    out = defaultdict(float)
    q = model.quantifier(det)
    for a_i, c_np in model.noun(np).items():
        for (a_j, k, a_l), c_v in model.verb(verb).items():
            if a_i != a_j:
                continue
            for a_m, c_n in model.noun(noun).items():
                for b, c_d in q.row(a_m).items():
                    if a_l & a_m == b:
                        out[k] += c_np * c_v * c_n * c_d
    return {k: w for k, w in out.items() if w != 0}
