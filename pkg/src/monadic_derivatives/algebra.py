"""Weight domains, n-ary functions over them, and the operad those functions form.

A semiring is described by a :class:`SemiringDescriptor` bundling its
operations; values are plain Python objects (``bool``, ``int``, ``float``).
Operadic terms (:class:`Op`) are kept in flattened form: every node carries
its children explicitly and the input slots of the term are the ``id``
leaves read left to right.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Optional, Sequence

from .errors import ArityError, UnknownFunction

_I64_MAX = 2**63 - 1
_I64_MIN = -(2**63)


@dataclass(frozen=True)
class SemiringDescriptor:
    id: str
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any] = field(compare=False)
    mul: Callable[[Any, Any], Any] = field(compare=False)
    star: Callable[[Any], Optional[Any]] = field(compare=False)
    eq: Callable[[Any, Any], bool] = field(compare=False)
    parse_literal: Callable[[str], Optional[Any]] = field(compare=False)
    render: Callable[[Any], str] = field(compare=False)

    def is_zero(self, k):
        return self.eq(k, self.zero)

    def sum(self, ks):
        total = self.zero
        for k in ks:
            total = self.add(total, k)
        return total

    def __repr__(self):
        return f"<semiring {self.id}>"


def _checked(v, lo):
    if v > _I64_MAX or v < lo:
        raise OverflowError(f"64-bit overflow: {v}")
    return v


def _bool_literal(text):
    return {"true": True, "false": False}.get(text)


def _nat_literal(text):
    return int(text) if re.fullmatch(r"\d+", text) else None


def _int_literal(text):
    return int(text) if re.fullmatch(r"-?\d+", text) else None


_FLOAT_RE = re.compile(r"-?\d+(\.\d+)?([eE][+-]?\d+)?")


def _double_literal(text):
    return float(text) if _FLOAT_RE.fullmatch(text) else None


def _int_star(k):
    return 1 if k == 0 else None


def _double_star(k):
    if abs(k) < 1:
        return 1.0 / (1.0 - k)
    return None


BOOL = SemiringDescriptor(
    id="bool", zero=False, one=True,
    add=lambda x, y: x or y,
    mul=lambda x, y: x and y,
    star=lambda k: True,
    eq=lambda x, y: x == y,
    parse_literal=_bool_literal,
    render=lambda k: "true" if k else "false",
)

NAT = SemiringDescriptor(
    id="nat", zero=0, one=1,
    add=lambda x, y: _checked(x + y, 0),
    mul=lambda x, y: _checked(x * y, 0),
    star=_int_star,
    eq=lambda x, y: x == y,
    parse_literal=_nat_literal,
    render=str,
)

INT = SemiringDescriptor(
    id="int", zero=0, one=1,
    add=lambda x, y: _checked(x + y, _I64_MIN),
    mul=lambda x, y: _checked(x * y, _I64_MIN),
    star=_int_star,
    eq=lambda x, y: x == y,
    parse_literal=_int_literal,
    render=str,
)

DOUBLE = SemiringDescriptor(
    id="double", zero=0.0, one=1.0,
    add=lambda x, y: x + y,
    mul=lambda x, y: x * y,
    star=_double_star,
    eq=lambda x, y: math.isclose(x, y, rel_tol=0.0, abs_tol=1e-9),
    parse_literal=_double_literal,
    render=repr,
)


def builtin_semirings():
    return [BOOL, NAT, INT, DOUBLE]


def semiring(name) -> SemiringDescriptor:
    for sr in builtin_semirings():
        if sr.id == name:
            return sr
    raise KeyError(f"unknown semiring {name!r}")


@dataclass(frozen=True)
class NAryFun:
    """A function ``K^n -> K`` valid over the semirings named in ``semirings``."""

    name: str
    arity: int
    eval: Callable[..., Any] = field(compare=False)
    semirings: frozenset = field(compare=False, default=frozenset())
    symbol: Optional[str] = field(compare=False, default=None)

    def __repr__(self):
        return self.symbol or self.name

    @property
    def display(self):
        return self.symbol or self.name


def nary_apply(f: NAryFun, args: Sequence):
    if len(args) != f.arity:
        raise ArityError(f.name, f.arity, len(args))
    return f.eval(*args)


def _ext_dist(x1, x2, x3):
    return max(x1, x2, x3) - min(x1, x2, x3)


EXT_DIST = NAryFun("ExtDist", 3, _ext_dist, frozenset({"nat", "int", "double"}))
NOT = NAryFun("Not", 1, lambda x: not x, frozenset({"bool"}))
AND = NAryFun("And", 2, lambda x, y: x and y, frozenset({"bool"}))
MEAN3 = NAryFun("Mean3", 3, lambda x, y, z: (x + y + z) / 3.0, frozenset({"double"}))


@lru_cache(maxsize=None)
def plus_fun(sr: SemiringDescriptor) -> NAryFun:
    return NAryFun("Plus", 2, sr.add, frozenset({sr.id}), symbol="+")


@lru_cache(maxsize=None)
def times_fun(sr: SemiringDescriptor) -> NAryFun:
    return NAryFun("Times", 2, sr.mul, frozenset({sr.id}), symbol="×")


class Registry:
    """Name -> function table used by the parser.

    ``Plus`` and ``Times`` are always available and resolve to the
    operations of whichever semiring is asked for.
    """

    def __init__(self, funs=()):
        self._funs = {}
        for f in funs:
            self.register(f)

    def register(self, f: NAryFun):
        if f.name in ("Plus", "Times"):
            raise ValueError(f"{f.name} is reserved")
        self._funs[f.name] = f

    def names(self):
        return sorted(self._funs) + ["Plus", "Times"]

    def resolve(self, name, sr: SemiringDescriptor, pos=None) -> NAryFun:
        if name == "Plus":
            return plus_fun(sr)
        if name == "Times":
            return times_fun(sr)
        f = self._funs.get(name)
        if f is None:
            raise UnknownFunction(f"unknown function {name!r}", pos)
        if f.semirings and sr.id not in f.semirings:
            raise UnknownFunction(f"function {name!r} is not defined over {sr.id}", pos)
        return f


def default_registry():
    return Registry([EXT_DIST, NOT, AND, MEAN3])


# -- operad of n-ary functions ------------------------------------------------

@dataclass(frozen=True)
class Id:
    arity = 1


@dataclass(frozen=True)
class Scale:
    """``x -> k * x``."""
    k: Any
    arity = 1


@dataclass(frozen=True)
class RScale:
    """``x -> x * k``."""
    k: Any
    arity = 1


@dataclass(frozen=True)
class Zero:
    """The constant zero, of arity 0."""
    arity = 0


@dataclass(frozen=True)
class Fn:
    f: NAryFun

    @property
    def arity(self):
        return self.f.arity


@dataclass(frozen=True)
class Op:
    """A flattened operadic term: a head applied to one subterm per head input."""

    head: Any
    children: tuple = ()

    def __post_init__(self):
        expected = 0 if isinstance(self.head, Id) else self.head.arity
        if len(self.children) != expected:
            raise ArityError(repr(self.head), expected, len(self.children))
        object.__setattr__(self, "arity",
                           1 if isinstance(self.head, Id)
                           else sum(c.arity for c in self.children))

    def __str__(self):
        return render_op(self)


IDENTITY = Op(Id())
ZERO_OP = Op(Zero())


def fn_op(f: NAryFun) -> Op:
    return Op(Fn(f), (IDENTITY,) * f.arity)


def scale_op(k) -> Op:
    return Op(Scale(k), (IDENTITY,))


def rscale_op(k) -> Op:
    return Op(RScale(k), (IDENTITY,))


def _is_unit(k):
    # the one of every builtin semiring compares equal to 1 (True == 1 == 1.0)
    return k == 1


def canonical_op(p: Op) -> Op:
    """Erase unit scalings; the representation is otherwise already flat."""
    if isinstance(p.head, Id):
        return p
    kids = tuple(canonical_op(c) for c in p.children)
    if isinstance(p.head, (Scale, RScale)) and _is_unit(p.head.k):
        return kids[0]
    return Op(p.head, kids)


def optree_compose(p: Op, qs: Sequence[Op]) -> Op:
    """``p o (q1, ..., qk)``: plug ``qi`` into the i-th input of ``p``."""
    qs = list(qs)
    if len(qs) != p.arity:
        raise ArityError("composition", p.arity, len(qs))
    it = iter(qs)

    def plug(node):
        if isinstance(node.head, Id):
            return next(it)
        return Op(node.head, tuple(plug(c) for c in node.children))

    return canonical_op(plug(p))


def optree_compose_at(p: Op, j: int, q: Op) -> Op:
    """Partial composition ``p o_j q`` (1-based)."""
    if not 0 < j <= p.arity:
        raise ArityError("partial composition", p.arity, j)
    qs = [IDENTITY] * p.arity
    qs[j - 1] = q
    return optree_compose(p, qs)


def optree_eval(p: Op, args: Sequence, sr: SemiringDescriptor):
    args = list(args)
    if len(args) != p.arity:
        raise ArityError(str(p), p.arity, len(args))
    return _eval(p, args, sr)


def _eval(p, args, sr):
    head = p.head
    if isinstance(head, Id):
        return args[0]
    vals = []
    pos = 0
    for c in p.children:
        vals.append(_eval(c, args[pos:pos + c.arity], sr))
        pos += c.arity
    if isinstance(head, Zero):
        return sr.zero
    if isinstance(head, Scale):
        return sr.mul(head.k, vals[0])
    if isinstance(head, RScale):
        return sr.mul(vals[0], head.k)
    return nary_apply(head.f, vals)


def op_sum(o: Op, o2: Op, sr: SemiringDescriptor) -> Op:
    """``(o + o')(x1..x_{n+n'}) = o(x1..xn) + o'(x_{n+1}..)``."""
    return canonical_op(Op(Fn(plus_fun(sr)), (o, o2)))


def op_product(o: Op, o2: Op, sr: SemiringDescriptor) -> Op:
    return canonical_op(Op(Fn(times_fun(sr)), (o, o2)))


def render_literal(k) -> str:
    if isinstance(k, bool):
        return "true" if k else "false"
    if isinstance(k, float):
        return repr(k)
    return str(k)


def _head_name(head):
    if isinstance(head, Id):
        return "id"
    if isinstance(head, Zero):
        return "0"
    if isinstance(head, Scale):
        return f"{render_literal(head.k)}×"
    if isinstance(head, RScale):
        return f"×{render_literal(head.k)}"
    return head.f.display


def render_op(p: Op) -> str:
    if isinstance(p.head, Id):
        return "id"
    name = _head_name(p.head)
    if all(isinstance(c.head, Id) for c in p.children):
        return name
    return f"{name} ∘ ({', '.join(render_op(c) for c in p.children)})"
