"""Nullability, derivatives by symbols and words, and word weights.

Everything here is written once against the :class:`~.supports.Support`
interface; switching the support switches between Brzozowski, Antimirov,
weighted and graded derivatives.  :func:`weight_oracle` computes the same
weights straight from the series semantics and shares no code with the
derivative path.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .algebra import SemiringDescriptor, nary_apply
from .errors import NotProper
from .expr import (Cat, Empty, Eps, Expr, Fun, Group, LAct, RAct, Star, Sum, Sym, Var, EPS, walk)
from .supports import Support


def _no_capture(e):
    raise TypeError(f"{type(e).__name__} nodes belong to capture expressions; "
                    f"use monadic_derivatives.capture")


@lru_cache(maxsize=1 << 16)
def part_null(e: Expr, sr: SemiringDescriptor) -> Optional[object]:
    """Partial nullability: the weight of the empty word, or ``None`` when a
    starred subexpression has a non-zero nullability."""
    if isinstance(e, Eps):
        return sr.one
    if isinstance(e, (Empty, Sym)):
        return sr.zero
    if isinstance(e, (Sum, Cat)):
        l = part_null(e.l, sr)
        r = part_null(e.r, sr)
        if l is None or r is None:
            return None
        return sr.add(l, r) if isinstance(e, Sum) else sr.mul(l, r)
    if isinstance(e, Star):
        inner = part_null(e.e, sr)
        if inner is not None and sr.is_zero(inner):
            return sr.one
        return None
    if isinstance(e, LAct):
        v = part_null(e.e, sr)
        return None if v is None else sr.mul(e.k, v)
    if isinstance(e, RAct):
        v = part_null(e.e, sr)
        return None if v is None else sr.mul(v, e.k)
    if isinstance(e, Fun):
        vals = [part_null(a, sr) for a in e.args]
        if any(v is None for v in vals):
            return None
        return nary_apply(e.f, vals)
    return _no_capture(e)


def offending_star(e: Expr, sr: SemiringDescriptor) -> Optional[Expr]:
    """The innermost starred subexpression that makes ``e`` improper."""
    found = None
    for node in walk(e):
        if isinstance(node, Star) and part_null(node, sr) is None:
            found = node
    return found


def check_proper(e: Expr, sr: SemiringDescriptor) -> Expr:
    if part_null(e, sr) is None:
        raise NotProper(offending_star(e, sr))
    return e


def null(e: Expr, sr: SemiringDescriptor):
    v = part_null(e, sr)
    if v is None:
        raise NotProper(offending_star(e, sr))
    return v


def derive_sym(e: Expr, a: str, support: Support):
    """The derivative of ``e`` with respect to the symbol ``a``."""
    return _derive(e, a, support)


@lru_cache(maxsize=1 << 17)
def _derive(e, a, s):
    if isinstance(e, (Eps, Empty)):
        return s.zero
    if isinstance(e, Sym):
        return s.pure(EPS) if e.a == a else s.zero
    if isinstance(e, Sum):
        return s.add(_derive(e.l, a, s), _derive(e.r, a, s))
    if isinstance(e, Cat):
        left = s.cat(_derive(e.l, a, s), e.r)
        right = s.lact(null(e.l, s.weights), _derive(e.r, a, s))
        return s.add(left, right)
    if isinstance(e, Star):
        return s.cat(_derive(e.e, a, s), e)
    if isinstance(e, LAct):
        return s.lact(e.k, _derive(e.e, a, s))
    if isinstance(e, RAct):
        return s.ract(_derive(e.e, a, s), e.k)
    if isinstance(e, Fun):
        return s.fun(e.f, [_derive(x, a, s) for x in e.args])
    return _no_capture(e)


def derive_word(e: Expr, w: str, support: Support):
    check_proper(e, support.weights)
    m = support.pure(e)
    for a in w:
        m = support.bind(m, lambda E, a=a: _derive(E, a, support))
    return m


def weight(e: Expr, w: str, support: Support):
    """Weight of ``w``: derive by ``w`` then bind the nullability."""
    sr = support.weights
    m = derive_word(e, w, support)
    return support.m_to_weight(support.bind(m, lambda E: support.weight_to_m(null(E, sr))))


# -- series semantics -----------------------------------------------------------

def factorizations(w: str):
    """All ways to cut ``w`` into non-empty consecutive blocks."""
    if not w:
        yield ()
        return
    for i in range(1, len(w) + 1):
        for rest in factorizations(w[i:]):
            yield (w[:i],) + rest


def weight_oracle(e: Expr, w: str, sr: SemiringDescriptor):
    """``S(e)(w)`` evaluated directly from the series operations."""
    check_proper(e, sr)
    memo = {}

    def S(e, w):
        key = (e, w)
        if key in memo:
            return memo[key]
        if isinstance(e, Eps):
            v = sr.one if w == "" else sr.zero
        elif isinstance(e, Empty):
            v = sr.zero
        elif isinstance(e, Sym):
            v = sr.one if w == e.a else sr.zero
        elif isinstance(e, Sum):
            v = sr.add(S(e.l, w), S(e.r, w))
        elif isinstance(e, Cat):
            v = sr.sum(sr.mul(S(e.l, w[:i]), S(e.r, w[i:])) for i in range(len(w) + 1))
        elif isinstance(e, Star):
            if w == "":
                v = sr.one
            else:
                v = sr.zero
                for blocks in factorizations(w):
                    prod = sr.one
                    for u in blocks:
                        prod = sr.mul(prod, S(e.e, u))
                    v = sr.add(v, prod)
        elif isinstance(e, LAct):
            v = sr.mul(e.k, S(e.e, w))
        elif isinstance(e, RAct):
            v = sr.mul(S(e.e, w), e.k)
        elif isinstance(e, Fun):
            v = nary_apply(e.f, [S(x, w) for x in e.args])
        elif isinstance(e, (Var, Group)):
            _no_capture(e)
        memo[key] = v
        return v

    return S(e, w)
