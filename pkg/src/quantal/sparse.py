"""Sparse morphisms over finite bases, shared by the Rel and FdVect backends.

A morphism is stored as a kernel: a function from a basis tuple of its
domain to a sparse map ``{codomain basis tuple: weight}``.  Relations use
boolean weights, linear maps real ones; a :class:`Semiring` says which.
Closed terms therefore evaluate by pushing their (small) support through the
diagram instead of materializing every intermediate map.
"""

from __future__ import annotations

import itertools
import operator
from typing import Callable, Mapping, NamedTuple

from .term import Backend, Wire

Basis = tuple
Sparse = dict  # Basis -> weight


BUILT_CACHE_SIZE = 1 << 14


class Semiring(NamedTuple):
    one: object
    zero: object
    add: Callable
    mul: Callable


BOOLEAN = Semiring(True, False, operator.or_, operator.and_)
REAL = Semiring(1.0, 0.0, operator.add, operator.mul)


def _groups(factors, widths) -> dict[int, list]:
    """Factors keyed by the wire position where each one ends."""
    out, pos = {}, 0
    for h, width in zip(factors, widths):
        pos += width
        out.setdefault(pos, []).append(h)
    return out


class Morphism:
    """A map between tensor products of wires, given by a kernel."""

    __slots__ = ("backend", "dom", "cod", "kernel", "factors")

    def __init__(self, backend: SparseBackend, dom, cod,
                 kernel: Callable[[Basis], Sparse] | None = None, factors=None):
        self.backend = backend
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.kernel = kernel
        self.factors = factors

    def __call__(self, x: Basis) -> Sparse:
        return self.kernel(x)

    def __repr__(self):
        dom = ",".join(w.value for w in self.dom) or "I"
        cod = ",".join(w.value for w in self.cod) or "I"
        return f"<{type(self.backend).__name__} morphism {dom} -> {cod}>"

    def domain_basis(self):
        return itertools.product(*(self.backend.carrier(w) for w in self.dom))

    def matrix(self) -> dict[tuple[Basis, Basis], object]:
        """Every nonzero entry, keyed by (domain tuple, codomain tuple)."""
        return {(x, y): w for x in self.domain_basis() for y, w in self(x).items()}

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.dom, self.cod) == (other.dom, other.cod) and all(
            self(x) == other(x) for x in self.domain_basis())

    __hash__ = None


class SparseBackend(Backend):
    """Generic structure (identity, swap, tensor, composition, cups and caps)
    over per-wire finite bases; subclasses supply carriers and words."""

    semiring: Semiring

    def carrier(self, wire: Wire):
        raise NotImplementedError

    def morphism(self, dom, cod, kernel) -> Morphism:
        return Morphism(self, dom, cod, kernel)

    def push(self, f: Morphism, state: Mapping[Basis, object]) -> Sparse:
        """Apply ``f`` to a sparse vector over its domain."""
        add, mul = self.semiring.add, self.semiring.mul
        out = {}
        for x, w in state.items():
            for y, v in f(x).items():
                wv = mul(w, v)
                out[y] = add(out[y], wv) if y in out else wv
        return {y: w for y, w in out.items() if w}

    def identity(self, wires):
        one = self.semiring.one
        return self.morphism(wires, wires, lambda x: {x: one})

    def swap(self, left, right):
        one = self.semiring.one
        return self.morphism((left, right), (right, left), lambda x: {(x[1], x[0]): one})

    def compose(self, after, before):
        if after.dom != before.cod:
            raise ValueError(f"cannot compose {after!r} after {before!r}")
        if not before.dom:
            return self._sequential(after, before)
        return self._built("compose", (after, before), lambda: self._compose(after, before))

    def _compose(self, after, before):
        fa, fb = after.factors or (after,), before.factors or (before,)
        if len(fa) > 1 or len(fb) > 1:
            # interchange law: split at wire positions both sides share
            groups_a = _groups(fa, [len(h.dom) for h in fa])
            groups_b = _groups(fb, [len(h.cod) for h in fb])
            cuts = sorted(c for c in groups_a.keys() & groups_b.keys() if c)
            if len(cuts) > 1:
                parts, ia, ib = [], -1, -1
                for cut in cuts:
                    ga = [h for c, hs in groups_a.items() if ia < c <= cut for h in hs]
                    gb = [h for c, hs in groups_b.items() if ib < c <= cut for h in hs]
                    if not ga or not gb:
                        break
                    parts.append(self._sequential(self.parallel(ga), self.parallel(gb)))
                    ia = ib = cut
                else:
                    return self.parallel(parts)
        return self._sequential(after, before)

    def _sequential(self, after, before):
        if not before.dom:
            # closed values are pushed through once
            return self.state_from(after.cod, self.push(after, before(())))
        return self._built("seq", (after, before), lambda: self._memo_kernel(
            before.dom, after.cod, lambda x: self.push(after, before(x))))

    def _memo_kernel(self, dom, cod, kernel):
        table = {}

        def cached(x):
            out = table.get(x)
            if out is None:
                out = table[x] = kernel(x)
            return out

        return self.morphism(dom, cod, cached)

    def _built(self, tag: str, parts: tuple, build):
        """Reuse a morphism assembled by ``tag`` from the very same ``parts``."""
        cache = self.__dict__.setdefault("_assembled", {})
        key = (tag, *map(id, parts))
        hit = cache.get(key)
        if hit is not None and all(a is b for a, b in zip(hit[0], parts)):
            return hit[1]
        if len(cache) >= BUILT_CACHE_SIZE:
            cache.clear()
        made = build()
        cache[key] = (parts, made)
        return made

    def tensor(self, f, g):
        return self.parallel((f.factors or (f,)) + (g.factors or (g,)))

    def parallel(self, factors) -> Morphism:
        """The tensor product of ``factors``, kept factored."""
        factors = tuple(h for f in factors for h in (f.factors or (f,)))
        if len(factors) == 1:
            return factors[0]
        return self._built("par", factors, lambda: self._parallel(factors))

    def _parallel(self, factors) -> Morphism:
        spans = []
        start = 0
        for h in factors:
            spans.append((h, start, start + len(h.dom)))
            start += len(h.dom)
        one, mul = self.semiring.one, self.semiring.mul

        def kernel(x):
            result = [((), one)]
            for h, a, b in spans:
                part = h(x[a:b])
                if not part:
                    return {}
                if len(part) == 1:
                    ((k, w),) = part.items()
                    result = [(y + k, mul(v, w)) for y, v in result]
                else:
                    result = [(y + k, mul(v, w)) for y, v in result for k, w in part.items()]
            return dict(result)

        dom = tuple(w for h in factors for w in h.dom)
        cod = tuple(w for h in factors for w in h.cod)
        return Morphism(self, dom, cod, kernel, factors)

    def epsilon(self, wire):
        one = self.semiring.one
        return self.morphism((wire, wire), (), lambda x: {(): one} if x[0] == x[1] else {})

    def eta(self, wire):
        one = self.semiring.one
        basis = {(a, a): one for a in self.carrier(wire)}
        return self.morphism((), (wire, wire), lambda x: basis)

    def state_from(self, cod, support: Mapping[Basis, object]) -> Morphism:
        support = dict(support)
        return self.morphism((), cod, lambda x: support)

    def scalar(self, value: Morphism):
        """The weight of the closed, S-only value at the basis it supports.

        For a value ``I -> S`` with a one-dimensional ``S`` this is the
        sentence's scalar; zero (or False) when unsupported.
        """
        if value.dom:
            raise ValueError("scalar() needs a closed value (domain I)")
        out = value(())
        if len(out) > 1:
            raise ValueError("value is not one-dimensional")
        return next(iter(out.values()), self.semiring.zero)
