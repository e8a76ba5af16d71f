"""Capture groups and back references by context-threading derivatives.

A capture expression is built from symbols, ``<eps>``, ``<nil>``, ``+``,
``.``, ``*``, variables ``X`` and groups ``(E)_X``.  Matching threads a
:class:`Context` (variable -> captured word or unset) through nullability
and derivation; the last capture of a variable wins.

Derivatives are sets of ``(expression, context)`` pairs.  A group being
matched carries the prefix consumed so far, ``(E)_X^{u}``.

Starred subexpressions may change the context while matching the empty
word (for instance ``((a*)_X)*`` can set ``X`` to the empty word), so the
nullability of ``F*`` is the set of contexts reachable from the current one
by repeatedly matching ``F`` against the empty word, and the derivative of
``F*`` starts its next iteration from any of those contexts.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import OracleBudgetExceeded, UnknownVariable
from .expr import (EMPTY, EPS, Cat, Empty, Eps, Expr, Group, Star, Sum, Sym, Var, normalize, render,
                   sort_key, variables, word_expr)


class Context:
    """An immutable total map from a declared set of variables to optional words."""

    __slots__ = ("_items", "_hash")

    def __init__(self, values):
        items = tuple(sorted(dict(values).items()))
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "_hash", hash(items))

    @classmethod
    def empty(cls, gamma: Iterable[str]):
        return cls({x: None for x in gamma})

    def __setattr__(self, name, value):
        raise AttributeError("Context is immutable")

    def __getitem__(self, x) -> Optional[str]:
        for y, w in self._items:
            if y == x:
                return w
        raise UnknownVariable(x)

    @property
    def variables(self):
        return tuple(x for x, _ in self._items)

    def as_dict(self):
        return dict(self._items)

    def __eq__(self, other):
        return isinstance(other, Context) and other._items == self._items

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return tuple((x, w is not None, w or "") for x, w in self._items)

    def __str__(self):
        return ", ".join(f"{x}={'⊥' if w is None else (w or 'ε')}" for x, w in self._items)

    def __repr__(self):
        return f"Context({self})"


def ctx_update(ctxt: Context, x: str, w: str) -> Context:
    d = ctxt.as_dict()
    if x not in d:
        raise UnknownVariable(x)
    d[x] = w
    return Context(d)


def check_capture_expr(e: Expr):
    for node in _walk(e):
        if not isinstance(node, (Sym, Eps, Empty, Sum, Cat, Star, Var, Group)):
            raise TypeError(f"{type(node).__name__} nodes are not allowed in capture expressions")
    return e


def _walk(e):
    stack = [e]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(n.children)


# -- nullability ---------------------------------------------------------------

def cnull(e: Expr, ctxt: Context) -> frozenset:
    """The contexts in which ``e`` can match the empty word, starting from ``ctxt``."""
    if isinstance(e, Eps):
        return frozenset((ctxt,))
    if isinstance(e, (Empty, Sym)):
        return frozenset()
    if isinstance(e, Var):
        return frozenset((ctxt,)) if ctxt[e.x] == "" else frozenset()
    if isinstance(e, Sum):
        return cnull(e.l, ctxt) | cnull(e.r, ctxt)
    if isinstance(e, Cat):
        return frozenset(c2 for c1 in cnull(e.l, ctxt) for c2 in cnull(e.r, c1))
    if isinstance(e, Star):
        return _star_closure(e.e, ctxt)
    if isinstance(e, Group):
        return frozenset(ctx_update(c, e.x, e.u) for c in cnull(e.e, ctxt))
    raise TypeError(f"{type(e).__name__} nodes are not allowed in capture expressions")


def _star_closure(body, ctxt):
    seen = {ctxt}
    todo = [ctxt]
    while todo:
        c = todo.pop()
        for c2 in cnull(body, c):
            if c2 not in seen:
                seen.add(c2)
                todo.append(c2)
    return frozenset(seen)


# -- derivatives ----------------------------------------------------------------

def _pairs(pairs):
    out = set()
    for E, c in pairs:
        E = normalize(E)
        if E != EMPTY:
            out.add((E, c))
    return frozenset(out)


def cderive_sym(e: Expr, a: str, ctxt: Context) -> frozenset:
    """Pairs ``(E', ctxt')`` of derivatives of ``e`` by the symbol ``a``."""
    if isinstance(e, (Eps, Empty)):
        return frozenset()
    if isinstance(e, Sym):
        return frozenset(((EPS, ctxt),)) if e.a == a else frozenset()
    if isinstance(e, Var):
        w = ctxt[e.x]
        if w and w[0] == a:
            return frozenset(((word_expr(w[1:]), ctxt),))
        return frozenset()
    if isinstance(e, Sum):
        return cderive_sym(e.l, a, ctxt) | cderive_sym(e.r, a, ctxt)
    if isinstance(e, Cat):
        left = ((Cat(F, e.r), c) for F, c in cderive_sym(e.l, a, ctxt))
        right = (p for c in cnull(e.l, ctxt) for p in cderive_sym(e.r, a, c))
        return _pairs(list(left) + list(right))
    if isinstance(e, Star):
        return _pairs((Cat(F, e), c2)
                      for c in _star_closure(e.e, ctxt)
                      for F, c2 in cderive_sym(e.e, a, c))
    if isinstance(e, Group):
        return _pairs((Group(F, e.x, e.u + a), c) for F, c in cderive_sym(e.e, a, ctxt))
    raise TypeError(f"{type(e).__name__} nodes are not allowed in capture expressions")


def cderive_word(e: Expr, w: str, ctxt: Context) -> frozenset:
    current = frozenset(((e, ctxt),))
    for a in w:
        current = frozenset(p for E, c in current for p in cderive_sym(E, a, c))
    return current


def sorted_pairs(pairs):
    return sorted(pairs, key=lambda p: (sort_key(p[0]), p[1].sort_key()))


def render_pairs(pairs) -> str:
    return "{" + ", ".join(f"({render(E)}, {c})" for E, c in sorted_pairs(pairs)) + "}"


def initial_context(e: Expr) -> Context:
    return Context.empty(variables(e))


def cmatch(e: Expr, w: str, ctxt: Optional[Context] = None):
    """Membership of ``w``, with the contexts of every successful match."""
    check_capture_expr(e)
    ctxt = initial_context(e) if ctxt is None else ctxt
    found = frozenset(c2 for E, c in cderive_word(e, w, ctxt) for c2 in cnull(E, c))
    return bool(found), found


# -- truncated contextual language ---------------------------------------------

MAX_ORACLE_LEN = 8


def clang_oracle(e: Expr, ctxt: Context, maxlen: int, budget: int = 2_000_000) -> frozenset:
    """All ``(word, context)`` pairs of the contextual language of ``e`` from
    ``ctxt`` whose word has length at most ``maxlen``."""
    if maxlen > MAX_ORACLE_LEN:
        raise ValueError(f"maxlen must be at most {MAX_ORACLE_LEN}")
    memo = {}
    spent = [0]

    def charge(n):
        spent[0] += n
        if spent[0] > budget:
            raise OracleBudgetExceeded(f"more than {budget} pairs enumerated")

    def L(e, c, n):
        key = (e, c, n)
        if key in memo:
            return memo[key]
        if isinstance(e, Eps):
            out = {("", c)}
        elif isinstance(e, Empty):
            out = set()
        elif isinstance(e, Sym):
            out = {(e.a, c)} if n >= 1 else set()
        elif isinstance(e, Var):
            w = c[e.x]
            out = {(w, c)} if w is not None and len(w) <= n else set()
        elif isinstance(e, Sum):
            out = L(e.l, c, n) | L(e.r, c, n)
        elif isinstance(e, Cat):
            out = set()
            for w1, c1 in L(e.l, c, n):
                for w2, c2 in L(e.r, c1, n - len(w1)):
                    out.add((w1 + w2, c2))
        elif isinstance(e, Star):
            # blocks of the body matched left to right, context threaded through
            out = {("", c)}
            todo = [("", c)]
            while todo:
                w, c1 = todo.pop()
                for w1, c2 in L(e.e, c1, n - len(w)):
                    p = (w + w1, c2)
                    if p not in out:
                        out.add(p)
                        todo.append(p)
        elif isinstance(e, Group):
            out = {(w, ctx_update(c1, e.x, e.u + w)) for w, c1 in L(e.e, c, n)}
        else:
            raise TypeError(f"{type(e).__name__} nodes are not allowed in capture expressions")
        out = frozenset(out)
        charge(len(out))
        memo[key] = out
        return out

    return L(e, ctxt, maxlen)


def oracle_words(e: Expr, ctxt: Context, maxlen: int) -> frozenset:
    return frozenset(w for w, _ in clang_oracle(e, ctxt, maxlen))
