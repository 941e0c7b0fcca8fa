import pytest
from hypothesis import given, strategies as st

from quantal.grammar import CfgSpec, Shape, parse_sentence, type_dictionary
from quantal.term import (EXISTS, CompileError, Compose, Delta, DetBox, Epsilon, Eta, Id, Iota,
                          Mu, S, Swap, Tensor, TermError, W, WordState, Zeta, compile_sentence,
                          compose, evaluate, ident, parse_term, render, tensor)
from quantal.rel import RelBackend
from quantal.quantifiers import Universe

DICT = type_dictionary(CfgSpec.fragment())


def parse(text):
    return parse_sentence(text, DICT)


def test_render_base_cases():
    assert render(Id((W,))) == "id[W]"
    assert render(Tensor(Epsilon(W), Id((S,)))) == "(eps[W] (x) id[S])"
    assert render(Swap(W, S)) == "swap[W,S]"
    assert render(EXISTS) == "det[@some]"


def test_det_n_vp_compiles_to_the_gadget():
    term = compile_sentence(parse("some cats sneeze"))
    expected = Compose(
        Compose(Tensor(Epsilon(W), ident(S)),
                Tensor(Tensor(DetBox("some"), Mu()), ident(S))),
        Compose(Tensor(Tensor(Delta(), ident(W)), ident(S)),
                Tensor(WordState("cats", "N"), WordState("sneeze", "VP"))))
    assert term == expected
    assert render(term) == (
        "(((eps[W] (x) id[S]) o ((det[some] (x) mu[W]) (x) id[S])) o "
        "(((delta[W] (x) id[W]) (x) id[S]) o (state[cats:N] (x) state[sneeze:VP])))")


def test_object_quantifier_gadget():
    term = compile_sentence(parse("john stroked some cats"))
    text = render(term)
    assert "(id[S] (x) eps[W])" in text
    assert "det[some]" in text and "delta[W]" in text
    assert term.dom == () and term.cod == (S,)


def test_bare_cup_without_closure():
    term = compile_sentence(parse("john sneezes"), closure=False)
    assert render(term) == "((eps[W] (x) id[S]) o (state[john:NP] (x) state[sneezes:VP]))"
    with_closure = render(compile_sentence(parse("john sneezes")))
    assert "det[@some]" in with_closure


@pytest.mark.parametrize("text", [
    "john sneezes", "some cats sneeze", "john loves mary", "john stroked some cats",
    "every man loves some dogs", "some cats",
])
def test_compiled_terms_are_well_typed_and_round_trip(text):
    p = parse(text)
    term = compile_sentence(p)
    assert term.dom == ()
    assert term.cod == ((W,) if p.shape is Shape.DET_N else (S,))
    assert parse_term(render(term)) == term
    assert compile_sentence(parse(text)) == term


def test_unsupported_shape():
    d = type_dictionary(CfgSpec.fragment(), extra={"quickly": ["VP"]})
    p = parse_sentence("john", d)
    with pytest.raises(CompileError):
        compile_sentence(p)


def test_arity_mismatch_reports_path():
    bad = Compose(Mu(), Tensor(Delta(), Delta()))
    rb = RelBackend(Universe.of_size(1))
    with pytest.raises(TermError, match=r"term: cannot compose W,W after W,W,W,W"):
        evaluate(bad, rb)
    nested = Tensor(Id((W,)), bad)
    with pytest.raises(TermError, match=r"term\.right:"):
        evaluate(nested, rb)


def test_bialgebra_maps_only_on_w():
    with pytest.raises(TermError):
        Delta(S)
    with pytest.raises(TermError):
        WordState("x", "Adv")


def test_compose_helper_order():
    f, g, h = Id((W,)), Delta(), Mu()
    assert compose(f, g, h) == Compose(f, Compose(g, h))
    assert tensor(f, g, h) == Tensor(Tensor(f, g), h)
    assert (f @ g) == Tensor(f, g)


@pytest.mark.parametrize("text", ["(id[W] o", "foo[W]", "(id[W] (x) id[S]", "id[W] id[S]",
                                  "(id[W] ? id[S])"])
def test_parse_term_errors(text):
    with pytest.raises(TermError):
        parse_term(text)


GENERATORS = st.sampled_from([
    Id((W,)), Id((S,)), Id((W, S)), Id(()), Epsilon(W), Epsilon(S), Eta(W), Eta(S), Delta(),
    Mu(), Iota(), Zeta(), Swap(W, S), DetBox("most"), DetBox("some", True),
    WordState("cats", "N"), WordState("loves", "V"),
])
TERMS = st.recursive(GENERATORS, lambda inner: st.one_of(
    st.builds(Tensor, inner, inner), st.builds(Compose, inner, inner)), max_leaves=8)


@given(TERMS)
def test_render_round_trip(term):
    assert parse_term(render(term)) == term
