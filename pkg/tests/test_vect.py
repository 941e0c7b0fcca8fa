import random

import pytest

from quantal.grammar import CfgSpec, Shape, parse_sentence, type_dictionary
from quantal.oracle import ModelError, RelModel
from quantal.quantifiers import Quantifier, Universe, builtin_quantifiers
from quantal.rel import RelBackend, rel_truth
from quantal.sums import object_sum, subject_sum
from quantal.term import Compose, Delta, Id, Mu, Swap, Tensor, W, compile_sentence, evaluate, tensor
from quantal.vect import (BooleanVectBackend, DistModel, QuantifierMatrix, SentenceSpace,
                          VectBackend, WeightedVector, boolean_sentence_value,
                          dist_sentence_value, pointwise_entails)
from quantal.worked import animals_model_data


def parse(text, model):
    return parse_sentence(text, type_dictionary(CfgSpec.fragment(), extra=model.lexicon()))


# -- boolean instantiation -----------------------------------------------------

U = Universe(("a", "b", "c"))


def rel_model(n, vp, det):
    return RelModel(U, {"cats": U.mask(n), "sneeze": U.mask(vp)}, {}, {"d": det})


@pytest.mark.parametrize("n,vp,det,expected", [
    ("ab", "a", Quantifier("some"), 1.0),
    ("ab", "a", Quantifier("no"), 0.0),
    ("ab", "ab", Quantifier("every"), 1.0),
])
def test_boolean_subject_value(n, vp, det, expected):
    m = rel_model(n, vp, det)
    assert boolean_sentence_value(parse("d cats sneeze", m), m) == expected


def test_boolean_value_is_the_family_sum():
    for det in builtin_quantifiers(3):
        for n in U.subsets():
            for vp in U.subsets():
                m = RelModel(U, {"cats": n, "sneeze": vp}, {}, {"d": det})
                value = boolean_sentence_value(parse("d cats sneeze", m), m)
                expected = sum(1.0 for b in U.subsets() if det.holds(n, b) and b == n & vp)
                assert value == expected


def test_boolean_object_value_is_the_family_sum():
    rng = random.Random(5)
    for det in builtin_quantifiers(3):
        rel = frozenset((x, y) for x in range(3) for y in range(3) if rng.random() < 0.5)
        for np in U.subsets():
            for n in U.subsets():
                m = RelModel(U, {"john": np, "cats": n}, {"v": rel}, {"d": det})
                value = boolean_sentence_value(parse("john v d cats", m), m)
                image = m.image("v", np)
                assert value == (1.0 if det.holds(n, image & n) else 0.0)


def test_bialgebra_on_basis_vectors():
    b = VectBackend(Universe(("a", "b")))
    a, ab = 1, 3
    assert b.mu()((a, ab)) == {(a,): 1.0}
    w = Id((W,))
    q3 = Compose(Tensor(Mu(), Mu()), Compose(tensor(w, Swap(W, W), w), Tensor(Delta(), Delta())))
    for x in range(4):
        for y in range(4):
            assert evaluate(q3, b)((x, y)) == {(x & y, x & y): 1.0}
    assert b.scalar(b.compose(b.iota(), b.zeta())) == 1.0


# -- distributional instantiation -----------------------------------------------

def random_model(seed):
    rng = random.Random(seed)
    alphabet = Universe(tuple(f"t{i}" for i in range(rng.randint(2, 4))))
    masks = rng.sample(range(1, alphabet.full + 1), min(rng.randint(1, 4), alphabet.full))
    space = SentenceSpace(tuple(f"s{k}" for k in range(rng.randint(1, 3))))
    dims = range(len(space))

    def weight():
        return rng.choice([0.5, 1.0, 2.0, 3.0]) * rng.choice([1, -1, 1])

    def vec():
        return {f: weight() for f in masks if rng.random() < 0.8}

    model = DistModel(alphabet, space, {f"f{i}": m for i, m in enumerate(masks)})
    model.vectors.update(nn=vec(), np0=vec())
    model.vps["vv"] = {(f, k): weight() for f in masks for k in dims if rng.random() < 0.6}
    model.verbs["tv"] = {(f, k, g): weight() for f in masks for k in dims for g in masks
                         if rng.random() < 0.4}
    targets = list(alphabet.subsets())
    table = {(a, b): weight() for a in masks for b in targets if rng.random() < 0.5}
    restriction = rng.choice([None, *builtin_quantifiers(2)])
    model.dets["qd"] = QuantifierMatrix(alphabet, restriction, table)
    model.dets["qm"] = QuantifierMatrix(alphabet, rng.choice(builtin_quantifiers(2)))
    return model


def close(got: WeightedVector, expected: dict, tol=1e-9):
    keys = set(got.weights) | set(expected)
    return all(abs(got[k] - expected.get(k, 0.0)) <= tol for k in keys)


@pytest.mark.parametrize("seed", range(20))
def test_generic_matches_direct_sums(seed):
    m = random_model(seed)
    for det in ("qd", "qm"):
        subj = dist_sentence_value(parse(f"{det} nn vv", m), m)
        assert close(subj, subject_sum(m, det, "nn", "vv"))
        obj = dist_sentence_value(parse(f"np0 tv {det} nn", m), m)
        assert close(obj, object_sum(m, "np0", "tv", det, "nn"))


def scaled(vec, alpha):
    return {k: alpha * w for k, w in vec.items()}


def added(v, w):
    return {k: v.get(k, 0.0) + w.get(k, 0.0) for k in set(v) | set(w)}


@pytest.mark.parametrize("seed", range(10))
def test_linearity_in_each_word(seed):
    m = random_model(seed)
    rng = random.Random(seed)
    alpha, beta = rng.uniform(-2, 2), rng.uniform(-2, 2)
    sentence = parse("qd nn vv", m)

    def value_with(**changes):
        for attr, (word, vec) in changes.items():
            getattr(m, attr)[word] = vec
        return dist_sentence_value(sentence, m)

    for attr, word in (("vectors", "nn"), ("vps", "vv")):
        base = dict(getattr(m, attr)[word])
        extra = {k: rng.uniform(-1, 1) for k in base}
        v1 = value_with(**{attr: (word, base)})
        v2 = value_with(**{attr: (word, extra)})
        mix = value_with(**{attr: (word, added(scaled(base, alpha), scaled(extra, beta)))})
        getattr(m, attr)[word] = base
        for k in range(len(m.sentence_space)):
            assert abs(mix[k] - (alpha * v1[k] + beta * v2[k])) < 1e-9


def test_zero_quantifier_matrix_gives_zero():
    m = random_model(3)
    m.dets["qz"] = QuantifierMatrix(m.alphabet, None, {})
    assert not dist_sentence_value(parse("qz nn vv", m), m).nonzero()


def test_singleton_weights_reduce_to_boolean():
    u = Universe(("a", "b", "c"))
    for det in builtin_quantifiers(2):
        for n in u.subsets():
            for vp in u.subsets():
                rm = RelModel(u, {"cats": n, "sneeze": vp}, {}, {"d": det})
                dm = DistModel(u, SentenceSpace(), {}, {"cats": {n: 1.0}}, {"sneeze": {(vp, 0): 1.0}},
                               {}, {"d": QuantifierMatrix(u, det)})
                got = dist_sentence_value(parse("d cats sneeze", dm), dm)
                assert got.dense() == [boolean_sentence_value(parse("d cats sneeze", rm), rm)]


def test_worked_example_model_matches_direct_sums():
    m = DistModel.from_dict(animals_model_data())
    for det in ("all", "some"):
        got = dist_sentence_value(parse(f"{det} animals run", m), m)
        assert close(got, subject_sum(m, det, "animals", "run"), 1e-12)
    phrase = dist_sentence_value(parse("all animals", m), m)
    assert len(phrase.labels) == 2 ** 6
    assert {"{cats,kittens}", "{miaow,purr}", "{sleep,snore}"} <= set(phrase.as_dict())


def test_det_n_query_is_linear_expansion():
    m = DistModel.from_dict(animals_model_data())
    phrase = dist_sentence_value(parse("all animals", m), m)
    noun = m.noun("animals")
    expected = {}
    for a, c in noun.items():
        for b, w in m.quantifier("all").row(a).items():
            expected[b] = expected.get(b, 0.0) + c * w
    assert close(phrase, expected, 1e-12)


def test_model_file_errors():
    with pytest.raises(ModelError):
        DistModel.from_dict({"vectors": {"x": {"nothing": 1}}})
    with pytest.raises(ModelError):
        DistModel.from_dict({"sentenceSpace": ["s1"], "features": [],
                             "verbs": {"v": [{"row": "{a}", "s": "s9", "weight": 1}]}})
    with pytest.raises(ModelError):
        DistModel.from_dict({"dets": {"d": {"policy": "vibes"}}})
    m = DistModel.from_dict(animals_model_data())
    with pytest.raises(ModelError):
        m.verb("run")
    with pytest.raises(ModelError):
        m.quantifier("most")


def test_sentence_space_mismatch():
    v = WeightedVector(("x", "y"), {0: 1.0})
    w = WeightedVector(("x", "y", "z"), {0: 1.0})
    with pytest.raises(ValueError):
        pointwise_entails(v, w)
    with pytest.raises(ValueError):
        SentenceSpace(())


@pytest.mark.parametrize("v,w,expected", [
    ({}, {0: 0.2, 1: 0.0}, True),
    ({0: 0.2, 1: 0.3}, {0: 0.2, 1: 0.3}, True),
    ({0: 0.2, 1: 0.3}, {0: 0.3, 1: 0.1}, False),
])
def test_pointwise_entails(v, w, expected):
    labels = ("s1", "s2")
    assert pointwise_entails(WeightedVector(labels, v), WeightedVector(labels, w)) is expected


def test_weighted_vector_drops_zeros():
    v = WeightedVector(("a", "b"), {0: 0.0, 1: 2})
    assert v.weights == {1: 2.0}
    assert v.as_dict() == {"b": 2.0}


def test_boolean_backends_agree_on_double_quantification():
    rng = random.Random(2)
    u = Universe.of_size(2)
    rb, vb = RelBackend(u), BooleanVectBackend(u)
    for _ in range(50):
        qs = builtin_quantifiers(2)
        m = RelModel(u, {"cats": rng.randrange(4), "dogs": rng.randrange(4)},
                     {"chase": frozenset((x, y) for x in range(2) for y in range(2)
                                         if rng.random() < 0.5)},
                     {"d": rng.choice(qs), "e": rng.choice(qs)})
        p = parse("d cats chase e dogs", m)
        assert p.shape is Shape.DET_N_V_DET_N
        term = compile_sentence(p)
        assert rel_truth(evaluate(term, rb, m)) == (vb.scalar(evaluate(term, vb, m)) != 0)
