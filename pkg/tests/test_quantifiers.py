import itertools

import pytest
from hypothesis import given, strategies as st

from quantal.quantifiers import (Quantifier, QuantifierError, Universe, builtin_quantifiers,
                                 family, is_conservative, parse_quantifier)


def subsets_by_name(elements):
    """All subsets as frozensets of names, independent of the mask coding."""
    return [frozenset(c) for r in range(len(elements) + 1)
            for c in itertools.combinations(elements, r)]


def as_names(u, masks):
    return {frozenset(u.names(m)) for m in masks}


U2 = Universe(("a", "b"))


def test_every_of_empty_is_everything():
    for n in range(4):
        u = Universe.of_size(n)
        assert family(Quantifier("every"), u, 0) == frozenset(u.subsets())


def test_some_of_empty_is_empty():
    assert family(Quantifier("some"), U2, 0) == frozenset()


def test_some_a_over_ab():
    got = as_names(U2, family(Quantifier("some"), U2, U2.mask("a")))
    assert got == {frozenset("a"), frozenset("ab")}


def test_exactly_one_of_ab():
    got = as_names(U2, family(Quantifier("exactly", 1), U2, U2.mask("ab")))
    assert got == {frozenset("a"), frozenset("b")}


DEFINITIONS = {
    "some": lambda x, a, n: bool(x & a),
    "every": lambda x, a, n: a <= x,
    "no": lambda x, a, n: not (x & a),
    "exactly": lambda x, a, n: len(x & a) == n,
    "atleast": lambda x, a, n: len(x & a) >= n,
    "most": lambda x, a, n: 2 * len(x & a) > len(a),
    "few": lambda x, a, n: len(x & a) <= n,
}


@pytest.mark.parametrize("q", builtin_quantifiers(3), ids=str)
def test_family_matches_literal_definition(q):
    for size in range(4):
        u = Universe.of_size(size)
        subsets = subsets_by_name(u.elements)
        for a in subsets:
            expected = {x for x in subsets if DEFINITIONS[q.kind](x, a, q.param)}
            assert as_names(u, family(q, u, u.mask(a))) == expected


def test_exactly_zero_is_no():
    u = Universe.of_size(3)
    for a in u.subsets():
        assert family(Quantifier("exactly", 0), u, a) == family(Quantifier("no"), u, a)


def test_builtins_are_conservative():
    for q in builtin_quantifiers(4):
        for size in range(5):
            assert is_conservative(q, Universe.of_size(size)), q


class Singletons:
    """{X : |X| = 1}, which ignores A and so does not live on it."""

    def holds(self, a, x):
        return bin(x).count("1") == 1


def test_broken_quantifier_is_caught():
    assert is_conservative(Singletons(), Universe.of_size(0))
    assert not is_conservative(Singletons(), Universe.of_size(2))


@pytest.mark.parametrize("text,q", [
    ("some", Quantifier("some")), ("every", Quantifier("every")), ("no", Quantifier("no")),
    ("exactly:2", Quantifier("exactly", 2)), ("atleast:3", Quantifier("atleast", 3)),
    ("most", Quantifier("most")), ("few:1", Quantifier("few", 1)),
])
def test_parse_quantifier(text, q):
    assert parse_quantifier(text) == q
    assert str(q) == text


@pytest.mark.parametrize("bad", ["many", "exactly", "some:1", "few:-1", ""])
def test_parse_quantifier_rejects(bad):
    with pytest.raises(QuantifierError):
        parse_quantifier(bad)


def test_universe_limits():
    Universe.of_size(16)
    with pytest.raises(QuantifierError):
        Universe.of_size(17)
    with pytest.raises(QuantifierError):
        Universe(("a", "a"))
    with pytest.raises(QuantifierError):
        U2.mask(["z"])
    with pytest.raises(QuantifierError):
        family(Quantifier("some"), U2, 4)


@given(st.sampled_from(builtin_quantifiers(3)), st.integers(0, 15), st.integers(0, 15))
def test_membership_depends_only_on_intersection(q, a, x):
    assert q.holds(a, x) == q.holds(a, x & a)
