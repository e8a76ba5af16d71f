"""Graded operadic combinations of linear combinations.

A :class:`GradedValue` is a pair ``(o, (L1, ..., Ln))`` of an operadic term
of arity ``n`` over the n-ary functions of a semiring and ``n`` linear
combinations.  Derivatives computed with :class:`GradedSupport` push the
arithmetic of n-ary functions into ``o`` so that the leaf expressions stay
drawn from a finite set.

Canonical form
--------------
:func:`g_canonical` flattens the combinations into the term, then rewrites
every maximal block made of ``+``, scalings, ``id`` and ``0`` into a sum
``k1 x x1 + ... + km x xm`` where equal summands are merged, zero summands
and ``<nil>`` leaves are dropped, and summands are sorted by the expression
they denote.  Other nodes are kept as they are, with canonical sub-blocks.
All combinations of a canonical value are ``{s: 1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .algebra import (IDENTITY, ZERO_OP, Fn, Id, Op, RScale, Scale, SemiringDescriptor, Zero,
                      canonical_op, op_product, op_sum, optree_compose, optree_eval, plus_fun,
                      render_literal, render_op)
from .errors import ArityError
from .expr import EMPTY, Cat, Expr, Fun, LAct, RAct, Sum, normalize, render, sort_key
from .supports import TOP, LinComb, LinCombSupport, Support, payload_key


@dataclass(frozen=True)
class GradedValue:
    op: Op
    combs: Tuple[LinComb, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "combs", tuple(self.combs))
        if self.op.arity != len(self.combs):
            raise ArityError(render_op(self.op), self.op.arity, len(self.combs))

    @property
    def leaves(self):
        """Payloads of a value whose combinations are all singletons."""
        return tuple(s for L in self.combs for s in L)

    def __repr__(self):
        return f"GradedValue({render_op(self.op)}, {list(self.combs)!r})"


def to_op(L: LinComb):
    """``(k1, s1) ⊞ ... ⊞ (kn, sn)`` as ``(k1 x x1 + ... + kn x xn, (s1, ..., sn))``."""
    items = L.ordered()
    if not items:
        return ZERO_OP, ()
    sr = L.sr
    terms = [canonical_op(Op(Scale(k), (IDENTITY,))) for _, k in items]
    op = terms[0]
    for t in terms[1:]:
        op = Op(Fn(plus_fun(sr)), (op, t))
    return op, tuple(s for s, _ in items)


def alpha(g: GradedValue):
    """Flatten the combinations into the term: an operadic combination of payloads."""
    pieces = [to_op(L) for L in g.combs]
    op = optree_compose(g.op, [p for p, _ in pieces])
    return op, tuple(s for _, ss in pieces for s in ss)


def g_pure(s, sr: SemiringDescriptor) -> GradedValue:
    return GradedValue(IDENTITY, (LinComb(sr, ((s, sr.one),)),))


def g_bind(g: GradedValue, f) -> GradedValue:
    """Monadic bind, without canonicalization."""
    op, leaves = alpha(g)
    images = [f(s) for s in leaves]
    return GradedValue(optree_compose(op, [h.op for h in images]),
                       tuple(L for h in images for L in h.combs))


def g_fmap(f, g: GradedValue) -> GradedValue:
    return GradedValue(g.op, tuple(LinComb(L.sr, ((f(s), k) for s, k in L.items()))
                                   for L in g.combs))


# -- canonical form -------------------------------------------------------------

def _is_plus(head):
    return isinstance(head, Fn) and head.f.name == "Plus" and head.f.arity == 2


def _linear(node, leaves, pos, sr):
    """Summands ``(coefficient, item)`` of the linear block rooted at ``node``."""
    head = node.head
    if isinstance(head, Id):
        s = leaves[pos]
        return ([] if s == EMPTY else [(sr.one, ("leaf", s))]), pos + 1
    if isinstance(head, Zero):
        return [], pos
    if isinstance(head, Scale):
        terms, pos = _linear(node.children[0], leaves, pos, sr)
        return [(sr.mul(head.k, c), it) for c, it in terms], pos
    if _is_plus(head):
        terms, pos = _linear(node.children[0], leaves, pos, sr)
        more, pos = _linear(node.children[1], leaves, pos, sr)
        return terms + more, pos
    blocks = []
    for c in node.children:
        terms, pos = _linear(c, leaves, pos, sr)
        blocks.append(_merge(terms, sr))
    return [(sr.one, ("op", head, tuple(blocks)))], pos


def _merge(terms, sr):
    merged = {}
    for c, it in terms:
        merged[it] = sr.add(merged[it], c) if it in merged else c
    kept = [(c, it) for it, c in merged.items() if not sr.is_zero(c)]
    kept.sort(key=lambda ci: _item_key(ci[1], sr))
    return tuple(kept)


def _item_key(item, sr):
    if item[0] == "leaf":
        return payload_key(item[1])
    op, leaves = _canon_item(item, sr)
    if all(isinstance(s, Expr) for s in leaves):
        return (0,) + sort_key(interpret(op, leaves))
    return (1, 0, render_op(op) + repr(leaves))


def g_canonical(g: GradedValue, sr: SemiringDescriptor) -> GradedValue:
    op, leaves = alpha(g)
    terms, _ = _linear(op, leaves, 0, sr)
    op, leaves = _canon_block(_merge(terms, sr), sr)
    return GradedValue(op, tuple(LinComb(sr, ((s, sr.one),)) for s in leaves))


def _canon_block(block, sr):
    if not block:
        return ZERO_OP, ()
    op, leaves = None, ()
    for c, it in block:
        o, ls = _canon_item(it, sr)
        if not (c == 1):
            o = Op(Scale(c), (o,))
        op = o if op is None else Op(Fn(plus_fun(sr)), (op, o))
        leaves += ls
    return op, leaves


def _canon_item(item, sr):
    if item[0] == "leaf":
        return IDENTITY, (item[1],)
    _, head, blocks = item
    kids, leaves = [], ()
    for b in blocks:
        o, ls = _canon_block(b, sr)
        kids.append(o)
        leaves += ls
    return Op(head, tuple(kids)), leaves


# -- expressions ----------------------------------------------------------------

def interpret(op: Op, args):
    """Read an operadic term applied to expressions back as an expression."""
    args = list(args)
    if len(args) != op.arity:
        raise ArityError(render_op(op), op.arity, len(args))
    it = iter(args)

    def go(node):
        head = node.head
        if isinstance(head, Id):
            return next(it)
        kids = [go(c) for c in node.children]
        if isinstance(head, Zero):
            return EMPTY
        if isinstance(head, Scale):
            return LAct(head.k, kids[0])
        if isinstance(head, RScale):
            return RAct(kids[0], head.k)
        if _is_plus(head):
            return Sum(kids[0], kids[1])
        return Fun(head.f, kids)

    return normalize(go(op))


def g_to_exp(g: GradedValue, sr: SemiringDescriptor) -> Expr:
    lin = LinCombSupport(sr)
    return interpret(g.op, [lin.to_exp(L) for L in g.combs])


def g_render(g: GradedValue) -> str:
    leaves = []
    for L in g.combs:
        for s, c in L.ordered():
            text = render(s) if isinstance(s, Expr) else repr(s)
            leaves.append(text if c == 1 else f"{render_literal(c)}:>{text}")
    return f"({render_op(g.op)}, ({', '.join(leaves)}))"


class GradedSupport(Support):
    """Derivatives as graded combinations; ``bind`` and every support
    operation return canonical values."""

    def __init__(self, sr: SemiringDescriptor):
        self.sr = sr
        self.weights = sr
        self.token = f"graded:{sr.id}"
        self.zero = GradedValue(ZERO_OP, ())

    def canonical(self, g):
        return g_canonical(g, self.sr)

    def pure(self, s):
        return g_pure(s, self.sr)

    def bind(self, g, f):
        return self.canonical(g_bind(g, f))

    def fmap(self, f, g):
        return g_fmap(f, g)

    def add(self, g, g2):
        return self.canonical(GradedValue(op_sum(g.op, g2.op, self.sr), g.combs + g2.combs))

    def mul(self, g, g2):
        return self.canonical(GradedValue(op_product(g.op, g2.op, self.sr), g.combs + g2.combs))

    def cat(self, g, F):
        return self.canonical(self.pure(normalize(Cat(self.to_exp(g), F))))

    def lact(self, k, g):
        return self.canonical(GradedValue(canonical_op(Op(Scale(k), (g.op,))), g.combs))

    def ract(self, g, k):
        return self.canonical(GradedValue(canonical_op(Op(RScale(k), (g.op,))), g.combs))

    def fun(self, f, gs):
        gs = list(gs)
        if len(gs) != f.arity:
            raise ArityError(f.name, f.arity, len(gs))
        op = optree_compose(Op(Fn(f), (IDENTITY,) * f.arity), [g.op for g in gs])
        return self.canonical(GradedValue(op, tuple(L for g in gs for L in g.combs)))

    def to_exp(self, g):
        return g_to_exp(g, self.sr)

    def members(self, g):
        out = []
        for L in g.combs:
            for s, _ in L.ordered():
                if s not in out:
                    out.append(s)
        return out

    def weight_to_m(self, k):
        return GradedValue(IDENTITY, (LinComb(self.sr, ((TOP, k),)),))

    def m_to_weight(self, g):
        op, leaves = alpha(g)
        return optree_eval(op, [self.sr.one] * len(leaves), self.sr)

    def render(self, g):
        return g_render(g)

    @property
    def m1(self):
        return _graded_weights(self)


def _graded_weights(s: GradedSupport):
    sr = s.sr
    return SemiringDescriptor(
        id=f"graded({sr.id})(1)", zero=s.zero, one=s.weight_to_m(sr.one),
        add=s.add, mul=s.mul, star=lambda k: None,
        eq=lambda x, y: sr.eq(s.m_to_weight(x), s.m_to_weight(y)),
        parse_literal=lambda t: None, render=lambda g: sr.render(s.m_to_weight(g)))


def g_weight(e: Expr, w: str, sr: SemiringDescriptor):
    from .derive import weight
    return weight(e, w, GradedSupport(sr))
