"""Backend-independent morphism terms for sentence diagrams.

A term is a tree of generators (word states, cups, caps, the bialgebra maps
on ``W``, determiner boxes) combined with ``Tensor`` and ``Compose``.  Terms
are compiled from parsed sentences and evaluated by structural recursion in
any :class:`Backend`.

Text notation (see :func:`render`)::

    term   := atom | "(" term " (x) " term ")" | "(" term " o " term ")"
    atom   := "state[" word ":" ROLE "]" | "det[" word "]" | "det[@" quantifier "]"
            | GEN "[" WIRE "]" | "id[" WIRES "]" | "swap[" WIRE "," WIRE "]"
    GEN    := eps | eta | delta | mu | iota | zeta

``f o g`` means ``f`` after ``g``; ``@`` marks a built-in quantifier that is
not looked up in the lexicon.
"""

from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, reduce as fold

from .grammar import ParsedSentence, Shape


class Wire(str, Enum):
    W = "W"
    S = "S"


W, S = Wire.W, Wire.S

ROLE_WIRES = {
    "N": (W,),
    "NP": (W,),
    "VP": (W, S),
    "V": (W, S, W),
}


class TermError(ValueError):
    pass


class CompileError(TermError):
    pass


class Term:
    """Base class; subclasses expose ``dom`` and ``cod`` wire tuples."""

    dom: tuple[Wire, ...]
    cod: tuple[Wire, ...]

    @cached_property
    def lexical(self) -> bool:
        """Does the term mention a word (and so depend on the lexicon)?"""
        return any(getattr(self, k).lexical for k in ("left", "right", "after", "before")
                   if isinstance(getattr(self, k, None), Term))

    def __matmul__(self, other: Term) -> Term:
        return Tensor(self, other)

    def __str__(self) -> str:
        return render(self)


def _only_w(wire):
    if Wire(wire) is not W:
        raise TermError("bialgebra maps exist only on W")


@dataclass(frozen=True, eq=True)
class WordState(Term):
    word: str
    role: str
    lexical = True

    def __post_init__(self):
        if self.role not in ROLE_WIRES:
            raise TermError(f"unknown word role {self.role!r}")

    @property
    def dom(self):
        return ()

    @property
    def cod(self):
        return ROLE_WIRES[self.role]


@dataclass(frozen=True)
class DetBox(Term):
    word: str
    builtin: bool = False
    lexical = True
    dom = (W,)
    cod = (W,)


@dataclass(frozen=True)
class Epsilon(Term):
    wire: Wire = W

    @property
    def dom(self):
        return (self.wire, self.wire)

    cod = ()


@dataclass(frozen=True)
class Eta(Term):
    wire: Wire = W
    dom = ()

    @property
    def cod(self):
        return (self.wire, self.wire)


@dataclass(frozen=True)
class Delta(Term):
    wire: Wire = W
    dom = (W,)
    cod = (W, W)

    def __post_init__(self):
        _only_w(self.wire)


@dataclass(frozen=True)
class Mu(Term):
    wire: Wire = W
    dom = (W, W)
    cod = (W,)

    def __post_init__(self):
        _only_w(self.wire)


@dataclass(frozen=True)
class Iota(Term):
    wire: Wire = W
    dom = (W,)
    cod = ()

    def __post_init__(self):
        _only_w(self.wire)


@dataclass(frozen=True)
class Zeta(Term):
    wire: Wire = W
    dom = ()
    cod = (W,)

    def __post_init__(self):
        _only_w(self.wire)


@dataclass(frozen=True)
class Id(Term):
    wires: tuple[Wire, ...]

    @property
    def dom(self):
        return self.wires

    @property
    def cod(self):
        return self.wires


@dataclass(frozen=True)
class Swap(Term):
    left: Wire
    right: Wire

    @property
    def dom(self):
        return (self.left, self.right)

    @property
    def cod(self):
        return (self.right, self.left)


@dataclass(frozen=True)
class Tensor(Term):
    left: Term
    right: Term

    @cached_property
    def dom(self):
        return self.left.dom + self.right.dom

    @cached_property
    def cod(self):
        return self.left.cod + self.right.cod


@dataclass(frozen=True)
class Compose(Term):
    after: Term
    before: Term

    @cached_property
    def dom(self):
        return self.before.dom

    @cached_property
    def cod(self):
        return self.after.cod


def _cache_hash(cls):
    structural = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = self.__dict__["_hash"] = structural(self)
            return h

    cls.__hash__ = __hash__


for _cls in (WordState, DetBox, Epsilon, Eta, Delta, Mu, Iota, Zeta, Id, Swap, Tensor, Compose):
    _cache_hash(_cls)


def tensor(*terms: Term) -> Term:
    return fold(Tensor, terms)


def compose(*terms: Term) -> Term:
    """``compose(f, g, h)`` is ``f o (g o h)``: the last term acts first."""
    return fold(lambda inner, outer: Compose(outer, inner), reversed(terms))


def _stages(contract: Term, route: Term, copy: Term, states: Term) -> Term:
    # grouped so the word-and-copy half is shared between determiners
    return Compose(Compose(contract, route), Compose(copy, states))


def ident(*wires: Wire) -> Id:
    return Id(tuple(wires))


# -- compilation --------------------------------------------------------------

EXISTS = DetBox("some", builtin=True)


def compile_sentence(parsed: ParsedSentence, closure: bool = True) -> Term:
    """Compile a parsed sentence to its diagram.

    Determiners are expanded with copy/intersect plumbing around a
    :class:`DetBox`.  With ``closure`` (the default) the bare NP-VP and
    NP-V-NP shapes get the same plumbing around a built-in existential box,
    so that their truth is non-empty intersection; without it they are plain
    cup contractions.
    """
    shape = parsed.shape
    words = parsed.words
    cats = parsed.categories
    states = [WordState(w, c) for w, c in zip(words, cats) if c != "Det"]
    dets = [DetBox(w) for w, c in zip(words, cats) if c == "Det"]
    s = ident(S)

    if shape is Shape.DET_N:
        return Compose(dets[0], states[0])

    if shape in (Shape.DET_N_VP, Shape.NP_VP):
        if shape is Shape.NP_VP and not closure:
            return compose(Epsilon() @ s, tensor(*states))
        det = dets[0] if dets else EXISTS
        return _stages(
            Epsilon() @ s,
            (det @ Mu()) @ s,
            (Delta() @ ident(W)) @ s,
            tensor(*states),
        )

    if shape in (Shape.NP_V_DET_N, Shape.NP_V_NP):
        if shape is Shape.NP_V_NP and not closure:
            return compose(tensor(Epsilon(), s, Epsilon()), tensor(*states))
        det = dets[0] if dets else EXISTS
        return _stages(
            s @ Epsilon(),
            tensor(s, Mu(), det),
            tensor(Epsilon(), s, ident(W), Delta()),
            tensor(*states),
        )

    if shape is Shape.DET_N_V_DET_N:
        subj, obj = dets
        return _stages(
            tensor(Epsilon(), s, Epsilon()),
            tensor(subj, Mu(), s, Mu(), obj),
            tensor(Delta(), ident(W), s, ident(W), Delta()),
            tensor(*states),
        )

    raise CompileError(f"cannot compile sentence shape {shape}")


def living_on_term(det: DetBox) -> Term:
    """The five-stage morphism ``W -> W`` built around ``det`` by the
    categorical living-on construction."""
    w = ident(W)
    return compose(
        w @ Epsilon(),
        tensor(w, Mu(), Epsilon(), w),
        tensor(w, det, Delta(), ident(W, W)),
        tensor(w, Eta(), ident(W, W)),
        Eta() @ w,
    )


# -- evaluation ---------------------------------------------------------------

class Backend(ABC):
    """A compact closed category with a bialgebra on ``W``.

    Values are backend-specific morphisms with ``dom``/``cod`` wire tuples.
    """

    @abstractmethod
    def state(self, word: str, role: str, lexicon): ...

    @abstractmethod
    def det(self, word: str, lexicon, builtin: bool = False): ...

    @abstractmethod
    def epsilon(self, wire: Wire): ...

    @abstractmethod
    def eta(self, wire: Wire): ...

    @abstractmethod
    def delta(self): ...

    @abstractmethod
    def mu(self): ...

    @abstractmethod
    def iota(self): ...

    @abstractmethod
    def zeta(self): ...

    @abstractmethod
    def identity(self, wires: tuple[Wire, ...]): ...

    @abstractmethod
    def swap(self, left: Wire, right: Wire): ...

    @abstractmethod
    def tensor(self, f, g): ...

    @abstractmethod
    def compose(self, after, before): ...

    @abstractmethod
    def scalar(self, value): ...


def evaluate(term: Term, backend: Backend, lexicon=None, path: str = "term"):
    """Evaluate ``term`` in ``backend``, resolving word states in ``lexicon``.

    Equal subterms are evaluated once: word-free ones once per backend, the
    rest once per lexicon (the memo is dropped when the lexicon changes).
    """
    memo = backend.__dict__.setdefault("_memo", {None: None})
    if term.lexical:
        if memo[None] is not lexicon:
            saved = {k: v for k, v in memo.items() if k is not None and not k.lexical}
            memo.clear()
            memo.update(saved)
            memo[None] = lexicon
    hit = memo.get(term)
    if hit is None:
        hit = memo[term] = _evaluate(term, backend, lexicon, path)
    return hit


def _evaluate(term, backend, lexicon, path):
    match term:
        case Tensor(left, right):
            return backend.tensor(evaluate(left, backend, lexicon, path + ".left"),
                                  evaluate(right, backend, lexicon, path + ".right"))
        case Compose(after, before):
            if after.dom != before.cod:
                raise TermError(
                    f"{path}: cannot compose {_wires(after.dom)} after {_wires(before.cod)}")
            return backend.compose(evaluate(after, backend, lexicon, path + ".after"),
                                   evaluate(before, backend, lexicon, path + ".before"))
        case WordState(word, role):
            return backend.state(word, role, lexicon)
        case DetBox(word, builtin):
            return backend.det(word, lexicon, builtin)
        case Epsilon(wire):
            return backend.epsilon(wire)
        case Eta(wire):
            return backend.eta(wire)
        case Delta():
            return backend.delta()
        case Mu():
            return backend.mu()
        case Iota():
            return backend.iota()
        case Zeta():
            return backend.zeta()
        case Id(wires):
            return backend.identity(wires)
        case Swap(left, right):
            return backend.swap(left, right)
    raise TermError(f"{path}: not a term: {term!r}")


# -- text notation ------------------------------------------------------------

def _wires(wires) -> str:
    return ",".join(w.value for w in wires)


_GENERATORS = {Epsilon: "eps", Eta: "eta", Delta: "delta", Mu: "mu", Iota: "iota", Zeta: "zeta"}
_BY_NAME = {v: k for k, v in _GENERATORS.items()}


def render(term: Term) -> str:
    """Deterministic, fully parenthesized text for ``term``."""
    match term:
        case Tensor(left, right):
            return f"({render(left)} (x) {render(right)})"
        case Compose(after, before):
            return f"({render(after)} o {render(before)})"
        case WordState(word, role):
            return f"state[{word}:{role}]"
        case DetBox(word, builtin):
            return f"det[{'@' if builtin else ''}{word}]"
        case Id(wires):
            return f"id[{_wires(wires)}]"
        case Swap(left, right):
            return f"swap[{left.value},{right.value}]"
    return f"{_GENERATORS[type(term)]}[{term.wire.value}]"


_TOKEN = re.compile(r"\s*(\(x\)|\(|\)|o(?=[\s(])|[a-z]+\[[^\]]*\])")


def parse_term(text: str) -> Term:
    """Inverse of :func:`render`."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermError(f"unexpected input at {pos}: {text[pos:pos + 20]!r}")
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def atom(tok: str) -> Term:
        name, _, arg = tok[:-1].partition("[")
        if name == "state":
            word, _, role = arg.rpartition(":")
            return WordState(word, role)
        if name == "det":
            return DetBox(arg.lstrip("@"), arg.startswith("@"))
        wires = tuple(Wire(a) for a in arg.split(",") if a)
        if name == "id":
            return Id(wires)
        if name == "swap" and len(wires) == 2:
            return Swap(*wires)
        if name in _BY_NAME and len(wires) == 1:
            return _BY_NAME[name](wires[0])
        raise TermError(f"unknown generator {tok!r}")

    def expr(i: int) -> tuple[Term, int]:
        if i >= len(tokens):
            raise TermError("unexpected end of term")
        tok = tokens[i]
        if tok != "(":
            if tok in (")", "(x)", "o"):
                raise TermError(f"unexpected {tok!r}")
            return atom(tok), i + 1
        left, i = expr(i + 1)
        op = tokens[i] if i < len(tokens) else None
        right, i = expr(i + 1)
        if i >= len(tokens) or tokens[i] != ")":
            raise TermError("missing ')'")
        if op == "(x)":
            return Tensor(left, right), i + 1
        if op == "o":
            return Compose(left, right), i + 1
        raise TermError(f"expected '(x)' or 'o', got {op!r}")

    term, end = expr(0)
    if end != len(tokens):
        raise TermError("trailing input after term")
    return term
