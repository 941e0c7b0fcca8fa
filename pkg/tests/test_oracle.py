import json

import pytest

from quantal.grammar import CfgSpec, parse_sentence, type_dictionary
from quantal.oracle import ModelError, OracleUnsupported, RelModel, forward_image, truth_bc
from quantal.quantifiers import Quantifier, Universe, builtin_quantifiers


def model(data):
    return RelModel.from_dict(data)


def parse(text, m):
    return parse_sentence(text, type_dictionary(CfgSpec.fragment(), extra=m.lexicon()))


MEN = model({
    "universe": ["a", "b", "c"],
    "sets": {"men": ["a", "b"], "sneeze": ["a"], "cats": [], "run": []},
    "dets": {"some": "some", "every": "every", "no": "no"},
})


def test_forward_image():
    u = Universe(("a", "b", "c"))
    a, b, c = 0, 1, 2
    assert forward_image({(a, b), (b, c)}, 0) == 0
    assert forward_image({(a, b), (b, c)}, u.mask("a")) == u.mask("b")
    assert forward_image({(a, b), (a, c), (b, c)}, u.mask("ab")) == u.mask("bc")


def test_some_men_sneeze():
    assert truth_bc(parse("some men sneeze", MEN), MEN)


def test_every_men_sneeze():
    assert not truth_bc(parse("every men sneeze", MEN), MEN)


def test_no_with_empty_intersection():
    assert truth_bc(parse("no cats run", MEN), MEN)
    assert not truth_bc(parse("no men sneeze", MEN), MEN)


def test_john_liked_some_trees():
    m = model({
        "universe": ["j", "t1", "t2"],
        "sets": {"john": ["j"], "trees": ["t1", "t2"]},
        "verbs": {"liked": [["j", "t1"]]},
        "dets": {"some": "some", "every": "every"},
    })
    assert truth_bc(parse("john liked some trees", m), m)
    assert not truth_bc(parse("john liked every trees", m), m)


def test_unquantified_shapes():
    m = model({
        "universe": ["j", "m"],
        "sets": {"john": ["j"], "mary": ["m"], "sneezes": ["j"]},
        "verbs": {"loves": [["j", "m"]]},
    })
    assert truth_bc(parse("john sneezes", m), m)
    assert not truth_bc(parse("mary sneezes", m), m)
    assert truth_bc(parse("john loves mary", m), m)
    assert not truth_bc(parse("mary loves john", m), m)


def test_double_quantification_is_refused():
    m = model({"universe": ["a"], "sets": {"cats": ["a"]}, "verbs": {"chase": []},
               "dets": {"some": "some"}})
    with pytest.raises(OracleUnsupported):
        truth_bc(parse("some cats chase some cats", m), m)


def test_missing_words():
    with pytest.raises(ModelError):
        MEN.set_of("unicorns")
    with pytest.raises(ModelError):
        MEN.relation("loves")
    with pytest.raises(ModelError):
        MEN.quantifier("most")
    with pytest.raises(ModelError):
        model({"universe": ["a"], "sets": {"x": ["b"]}})


def test_model_file_roundtrip(tmp_path):
    m = model({"universe": ["a", "b"], "sets": {"cats": ["a"]},
               "verbs": {"chase": [["a", "b"], ["b", "b"]]}, "dets": {"two": "exactly:2"}})
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m.to_dict()))
    assert RelModel.load(path) == m


def test_every_entails_some_for_nonempty_nouns():
    every, some = Quantifier("every"), Quantifier("some")
    for size in range(5):
        u = Universe.of_size(size)
        for n in u.subsets():
            if not n:
                continue
            for vp in u.subsets():
                m = RelModel(u, {"n": n, "vp": vp}, {}, {"every": every, "some": some})
                lex = type_dictionary(CfgSpec.fragment(), extra=m.lexicon())
                if truth_bc(parse_sentence("every n vp", lex), m):
                    assert truth_bc(parse_sentence("some n vp", lex), m)


def test_image_table_matches_forward_image():
    u = Universe.of_size(3)
    rel = frozenset({(0, 1), (2, 2), (1, 0)})
    m = RelModel(u, {}, {"v": rel}, {})
    for a in u.subsets():
        assert m.image("v", a) == forward_image(rel, a)
    assert len(builtin_quantifiers(3)) == 16
