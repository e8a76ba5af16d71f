"""Expression syntax: AST nodes, a parser, a printer and a small normalizer.

Surface syntax::

    expr  := sum
    sum   := cat ("+" cat)*
    cat   := act ("." act)*
    act   := lit ":>" act | post
    post  := post "<:" lit | star
    star  := atom "*"*
    atom  := sym | "<eps>" | "<nil>" | VAR | "(" expr ")" "_" VAR ["^{" word "}"]
           | "(" expr ")" | Name "(" expr ("," expr)* ")"

Symbols are single lowercase letters, capture variables single uppercase
letters, function names an uppercase letter followed by at least one more
alphanumeric character (or any uppercase name directly followed by ``(``).
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Any, Optional

from .algebra import BOOL, NAryFun, Registry, SemiringDescriptor, default_registry, render_literal
from .errors import ParseError


class Expr:
    __slots__ = ("_hash",)
    # subclasses list their payload attributes here, in key order
    fields: tuple = ()

    def _key(self):
        return tuple(_tagged(getattr(self, f)) for f in self.fields)

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented if not isinstance(other, Expr) else False
        return hash(self) == hash(other) and self._key() == other._key()

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_hash", h)
            return h

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def __repr__(self):
        return f"Expr({render(self)!r})"

    def __str__(self):
        return render(self)

    @property
    def children(self):
        return ()


def _tagged(v):
    # weights of different semirings compare equal in Python (True == 1 == 1.0)
    if isinstance(v, (bool, int, float)):
        return (type(v).__name__, v)
    return v


def _init(obj, **kw):
    for k, v in kw.items():
        object.__setattr__(obj, k, v)


class Sym(Expr):
    __slots__ = ("a",)
    fields = ("a",)

    def __init__(self, a):
        _init(self, a=a)


class Eps(Expr):
    __slots__ = ()


class Empty(Expr):
    __slots__ = ()


class Sum(Expr):
    __slots__ = ("l", "r")
    fields = ("l", "r")

    def __init__(self, l, r):
        _init(self, l=l, r=r)

    @property
    def children(self):
        return (self.l, self.r)


class Cat(Expr):
    __slots__ = ("l", "r")
    fields = ("l", "r")

    def __init__(self, l, r):
        _init(self, l=l, r=r)

    @property
    def children(self):
        return (self.l, self.r)


class Star(Expr):
    __slots__ = ("e",)
    fields = ("e",)

    def __init__(self, e):
        _init(self, e=e)

    @property
    def children(self):
        return (self.e,)


class LAct(Expr):
    """``k :> e``: left action of a weight on an expression."""
    __slots__ = ("k", "e")
    fields = ("k", "e")

    def __init__(self, k, e):
        _init(self, k=k, e=e)

    @property
    def children(self):
        return (self.e,)


class RAct(Expr):
    """``e <: k``: right action of a weight on an expression."""
    __slots__ = ("e", "k")
    fields = ("e", "k")

    def __init__(self, e, k):
        _init(self, e=e, k=k)

    @property
    def children(self):
        return (self.e,)


class Fun(Expr):
    __slots__ = ("f", "args")
    fields = ("f", "args")

    def __init__(self, f: NAryFun, args):
        args = tuple(args)
        if len(args) != f.arity:
            raise ValueError(f"{f.name} expects {f.arity} arguments, got {len(args)}")
        _init(self, f=f, args=args)

    @property
    def children(self):
        return self.args


class Var(Expr):
    __slots__ = ("x",)
    fields = ("x",)

    def __init__(self, x):
        _init(self, x=x)


class Group(Expr):
    """Capture group ``(e)_x`` carrying the word ``u`` captured so far."""
    __slots__ = ("e", "x", "u")
    fields = ("e", "x", "u")

    def __init__(self, e, x, u=""):
        _init(self, e=e, x=x, u=u)

    @property
    def children(self):
        return (self.e,)


EPS = Eps()
EMPTY = Empty()


def word_expr(w: str) -> Expr:
    """The expression denoting exactly the word ``w``."""
    if not w:
        return EPS
    e = Sym(w[0])
    for a in w[1:]:
        e = Cat(e, Sym(a))
    return e


def walk(e: Expr):
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


@lru_cache(maxsize=1 << 16)
def size(e: Expr) -> int:
    return 1 + sum(size(c) for c in e.children)


def symbols(e: Expr) -> list:
    return sorted({n.a for n in walk(e) if isinstance(n, Sym)})


def variables(e: Expr) -> list:
    return sorted({n.x for n in walk(e) if isinstance(n, (Var, Group))})


def has_capture(e: Expr) -> bool:
    return any(isinstance(n, (Var, Group)) for n in walk(e))


def has_weights(e: Expr) -> bool:
    return any(isinstance(n, (LAct, RAct, Fun)) for n in walk(e))


def sort_key(e: Expr):
    """Canonical ordering of expressions inside sets and combinations:
    larger expressions first, ties broken by rendered text."""
    return (-size(e), render(e))


# -- printing -----------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def render(e: Expr) -> str:
    return _sum(e)


def _sum(e):
    if isinstance(e, Sum):
        return f"{_sum(e.l)} + {_cat(e.r)}"
    return _cat(e)


def _cat(e):
    if isinstance(e, Cat):
        left, right = _cat(e.l), _act(e.r)
        # "2.5" would read as a decimal literal
        sep = " ." if left[-1].isdigit() else "."
        return f"{left}{sep}{right}"
    return _act(e)


def _act(e):
    if isinstance(e, LAct):
        return f"{render_literal(e.k)}:>{_act(e.e)}"
    return _post(e)


def _post(e):
    if isinstance(e, RAct):
        return f"{_post(e.e)}<:{render_literal(e.k)}"
    return _star(e)


def _star(e):
    if isinstance(e, Star):
        return f"{_star(e.e)}*"
    return _atom(e)


def _atom(e):
    if isinstance(e, Sym):
        return e.a
    if isinstance(e, Eps):
        return "<eps>"
    if isinstance(e, Empty):
        return "<nil>"
    if isinstance(e, Var):
        return e.x
    if isinstance(e, Group):
        tail = f"^{{{e.u}}}" if e.u else ""
        return f"({_sum(e.e)})_{e.x}{tail}"
    if isinstance(e, Fun):
        return f"{e.f.name}({', '.join(_sum(a) for a in e.args)})"
    return f"({_sum(e)})"


# -- normalization ------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def normalize(e: Expr) -> Expr:
    """Apply the unit/zero laws bottom-up.

    Rewrites: ∅+E→E, E+∅→E, ∅·E→∅, E·∅→∅, ε·E→E, 1:>E→E, E<:1→E,
    0:>E→∅, E<:0→∅.  Nothing else (``E.<eps>`` in particular is kept).
    """
    if isinstance(e, Sum):
        l, r = normalize(e.l), normalize(e.r)
        if l is EMPTY or l == EMPTY:
            return r
        if r == EMPTY:
            return l
        return e if (l is e.l and r is e.r) else Sum(l, r)
    if isinstance(e, Cat):
        l, r = normalize(e.l), normalize(e.r)
        if l == EMPTY or r == EMPTY:
            return EMPTY
        if l == EPS:
            return r
        return e if (l is e.l and r is e.r) else Cat(l, r)
    if isinstance(e, LAct):
        inner = normalize(e.e)
        if e.k == 0:
            return EMPTY
        if e.k == 1:
            return inner
        return e if inner is e.e else LAct(e.k, inner)
    if isinstance(e, RAct):
        inner = normalize(e.e)
        if e.k == 0:
            return EMPTY
        if e.k == 1:
            return inner
        return e if inner is e.e else RAct(inner, e.k)
    if isinstance(e, Star):
        inner = normalize(e.e)
        return e if inner is e.e else Star(inner)
    if isinstance(e, Fun):
        args = tuple(normalize(a) for a in e.args)
        return e if all(x is y for x, y in zip(args, e.args)) else Fun(e.f, args)
    if isinstance(e, Group):
        inner = normalize(e.e)
        return e if inner is e.e else Group(inner, e.x, e.u)
    return e


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<eps><eps>) | (?P<nil><nil>)
  | (?P<lact>:>) | (?P<ract><:)
  | (?P<num>-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<upper>[A-Z][A-Za-z0-9]*)
  | (?P<lower>[a-z]+)
  | (?P<punct>[-+.*(),_^{}])
""", re.VERBOSE)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, sr, registry):
        self.toks = _tokenize(text)
        self.i = 0
        self.sr = sr
        self.registry = registry

    def peek(self, offset=0):
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at(self, text, offset=0):
        kind, val, _ = self.peek(offset)
        return kind in ("punct", "lact", "ract") and val == text

    def expect(self, text):
        if not self.at(text):
            kind, val, pos = self.peek()
            raise ParseError(f"expected {text!r}, found {val or 'end of input'!r}", pos)
        return self.take()

    def literal(self):
        kind, val, pos = self.take()
        k = self.sr.parse_literal(val) if kind in ("num", "lower") else None
        if k is None:
            raise ParseError(f"not a {self.sr.id} literal: {val!r}", pos)
        return k

    def parse(self):
        e = self.sum()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return e

    def sum(self):
        e = self.cat()
        while self.at("+"):
            self.take()
            e = Sum(e, self.cat())
        return e

    def cat(self):
        e = self.act()
        while self.at("."):
            self.take()
            e = Cat(e, self.act())
        return e

    def act(self):
        kind = self.peek()[0]
        if kind in ("num", "lower") and self.at(":>", 1):
            k = self.literal()
            self.take()
            return LAct(k, self.act())
        return self.post()

    def post(self):
        e = self.star()
        while self.at("<:"):
            self.take()
            e = RAct(e, self.literal())
        return e

    def star(self):
        e = self.atom()
        while self.at("*"):
            self.take()
            e = Star(e)
        return e

    def atom(self):
        kind, val, pos = self.take()
        if kind == "lower":
            if len(val) != 1:
                raise ParseError(f"symbols are single letters, write {'.'.join(val)!r}", pos)
            return Sym(val)
        if kind == "eps":
            return EPS
        if kind == "nil":
            return EMPTY
        if kind == "upper":
            if self.at("("):
                return self.call(val, pos)
            if len(val) != 1:
                raise ParseError(f"function {val!r} needs arguments", pos)
            return Var(val)
        if kind == "punct" and val == "(":
            inner = self.sum()
            self.expect(")")
            if self.at("_"):
                return self.group(inner)
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)

    def group(self, inner):
        self.take()
        kind, val, pos = self.take()
        if kind != "upper" or len(val) != 1:
            raise ParseError("capture variable must be a single uppercase letter", pos)
        u = ""
        if self.at("^"):
            self.take()
            self.expect("{")
            if self.peek()[0] == "lower":
                u = self.take()[1]
            self.expect("}")
        return Group(inner, val, u)

    def call(self, name, pos):
        f = self.registry.resolve(name, self.sr, pos)
        self.expect("(")
        args = [self.sum()]
        while self.at(","):
            self.take()
            args.append(self.sum())
        self.expect(")")
        if len(args) != f.arity:
            raise ParseError(f"{name} expects {f.arity} argument(s), got {len(args)}", pos)
        return Fun(f, args)


def parse(text: str, semiring: Optional[SemiringDescriptor] = None,
          registry: Optional[Registry] = None) -> Expr:
    """Parse ``text``; weight literals are read with ``semiring`` (bool by default)."""
    e = _Parser(text, semiring or BOOL, registry or default_registry()).parse()
    if has_capture(e) and has_weights(e):
        raise ParseError("capture groups and variables cannot be mixed with "
                         "weights or functions")
    return e
