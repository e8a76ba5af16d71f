"""Containers for derivative results.

Each support pairs a monad (``pure``/``bind``) with the operations the
derivation formulas need on ``M(Expr)``: a monoid sum ``add``, catenation by
an expression ``cat``, left/right weight actions ``lact``/``ract``, the
action ``fun`` of n-ary functions and ``to_exp`` back to a single
expression.  Weights (``M(1)``) are exchanged with the outside world as
plain semiring values through ``weight_to_m``/``m_to_weight``.

Three supports live here:

* :class:`MaybeSupport`  -- ``Just(E)`` / ``Nothing`` (Brzozowski)
* :class:`SetSupport`    -- finite sets of expressions (Antimirov)
* :class:`LinCombSupport` -- linear combinations over a semiring

The graded support is in :mod:`monadic_derivatives.graded`.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any, Callable

from .algebra import BOOL, SemiringDescriptor, semiring
from .errors import ArityError
from .expr import EMPTY, Cat, Expr, Fun, LAct, RAct, Sum, normalize, render, sort_key


class _Top:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "⊤"

    def __reduce__(self):
        return (_Top, ())


TOP = _Top()


class _Nothing:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Nothing"

    def __bool__(self):
        return False


NOTHING = _Nothing()


@dataclass(frozen=True)
class Just:
    value: Any

    def __repr__(self):
        return f"Just({self.value!r})"


def payload_key(s):
    """Deterministic ordering key for payloads of any kind."""
    if isinstance(s, Expr):
        return (0,) + sort_key(s)
    return (1, 0, repr(s))


class LinComb(Mapping):
    """A finite formal sum of (payload, coefficient) pairs.

    Coefficients of equal payloads are merged on construction and zero
    coefficients are dropped.
    """

    __slots__ = ("sr", "_d", "_hash")

    def __init__(self, sr: SemiringDescriptor, pairs=()):
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        d = {}
        for s, k in pairs:
            d[s] = sr.add(d[s], k) if s in d else k
        self.sr = sr
        self._d = {s: k for s, k in d.items() if not sr.is_zero(k)}
        self._hash = None

    def __getitem__(self, s):
        return self._d[s]

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        if self.sr.id != other.sr.id or self._d.keys() != other._d.keys():
            return False
        return all(self.sr.eq(k, other._d[s]) for s, k in self._d.items())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d))
        return self._hash

    def ordered(self):
        return sorted(self._d.items(), key=lambda sk: payload_key(sk[0]))

    def scale(self, k):
        return LinComb(self.sr, ((s, self.sr.mul(k, c)) for s, c in self._d.items()))

    def __repr__(self):
        body = " ⊞ ".join(f"({self.sr.render(k)}, {s})" for s, k in self.ordered())
        return f"LinComb[{body or '0'}]"


# -- the bare monads ------------------------------------------------------------

class MaybeMonad:
    def pure(self, x):
        return Just(x)

    def bind(self, m, f):
        return f(m.value) if isinstance(m, Just) else NOTHING

    def fmap(self, f, m):
        return Just(f(m.value)) if isinstance(m, Just) else NOTHING


class SetMonad:
    def pure(self, x):
        return frozenset((x,))

    def bind(self, m, f):
        out = set()
        for r in m:
            out |= f(r)
        return frozenset(out)

    def fmap(self, f, m):
        return frozenset(f(r) for r in m)


class LinCombMonad:
    def __init__(self, sr: SemiringDescriptor):
        self.sr = sr

    def pure(self, x):
        return LinComb(self.sr, ((x, self.sr.one),))

    def bind(self, m, f):
        pairs = []
        for r, k in m.items():
            pairs.extend((s, self.sr.mul(k, c)) for s, c in f(r).items())
        return LinComb(self.sr, pairs)

    def fmap(self, f, m):
        return LinComb(self.sr, ((f(r), k) for r, k in m.items()))


def lift_n(monad, f: Callable, ms, arity=None):
    """Lift an n-ary function to monadic arguments by nested binds."""
    n = arity if arity is not None else getattr(f, "arity", len(ms))
    if len(ms) != n:
        raise ArityError("lift", n, len(ms))
    call = f.eval if hasattr(f, "eval") else f

    def go(i, acc):
        if i == len(ms):
            return monad.pure(call(*acc))
        return monad.bind(ms[i], lambda s: go(i + 1, acc + (s,)))

    return go(0, ())


# -- expressive supports --------------------------------------------------------

class Support:
    """Common interface; subclasses fill in the container-specific parts."""

    token: str
    weights: SemiringDescriptor

    def __eq__(self, other):
        return isinstance(other, Support) and other.token == self.token

    def __hash__(self):
        return hash(self.token)

    def __repr__(self):
        return f"<support {self.token}>"

    def fun(self, f, ms):
        ms = list(ms)
        if len(ms) != f.arity:
            raise ArityError(f.name, f.arity, len(ms))
        return self.pure(normalize(Fun(f, [self.to_exp(m) for m in ms])))

    def cat(self, m, F):
        return self._clean(self.fmap(lambda E: normalize(Cat(E, F)), m))

    def lact(self, k, m):
        return self.bind(self.weight_to_m(k), lambda _: m)

    def ract(self, m, k):
        return self.bind(self.weight_to_m(k), lambda _: m)

    def is_zero(self, m):
        return m == self.zero

    def render(self, m):
        return render(self.to_exp(m))


class MaybeSupport(MaybeMonad, Support):
    token = "maybe"
    weights = BOOL
    zero = NOTHING

    def add(self, m, m2):
        if not isinstance(m, Just):
            return m2
        if not isinstance(m2, Just):
            return m
        return self._clean(Just(normalize(Sum(m.value, m2.value))))

    def _clean(self, m):
        return NOTHING if isinstance(m, Just) and m.value == EMPTY else m

    def to_exp(self, m):
        return m.value if isinstance(m, Just) else EMPTY

    def members(self, m):
        return [m.value] if isinstance(m, Just) else []

    def weight_to_m(self, k):
        return Just(TOP) if k else NOTHING

    def m_to_weight(self, m):
        return isinstance(m, Just)

    @property
    def m1(self):
        return SemiringDescriptor(
            id="maybe(1)", zero=NOTHING, one=Just(TOP),
            add=lambda x, y: y if x is NOTHING else x,
            mul=lambda x, y: NOTHING if NOTHING in (x, y) else Just(TOP),
            star=lambda k: Just(TOP),
            eq=lambda x, y: x == y,
            parse_literal=lambda t: None, render=repr)


class SetSupport(SetMonad, Support):
    token = "set"
    weights = BOOL
    zero = frozenset()

    def add(self, m, m2):
        return m | m2

    def _clean(self, m):
        return m - {EMPTY} if EMPTY in m else m

    def to_exp(self, m):
        return _sum_of(sorted(m, key=sort_key))

    def members(self, m):
        return sorted(m, key=sort_key)

    def weight_to_m(self, k):
        return frozenset((TOP,)) if k else frozenset()

    def m_to_weight(self, m):
        return TOP in m

    @property
    def m1(self):
        return SemiringDescriptor(
            id="set(1)", zero=frozenset(), one=frozenset((TOP,)),
            add=lambda x, y: x | y, mul=lambda x, y: x & y,
            star=lambda k: frozenset((TOP,)),
            eq=lambda x, y: x == y,
            parse_literal=lambda t: None, render=repr)


class LinCombSupport(LinCombMonad, Support):
    def __init__(self, sr: SemiringDescriptor):
        super().__init__(sr)
        self.token = f"lincomb:{sr.id}"
        self.weights = sr
        self.zero = LinComb(sr)

    def add(self, m, m2):
        return LinComb(self.sr, list(m.items()) + list(m2.items()))

    def _clean(self, m):
        return LinComb(self.sr, ((s, k) for s, k in m.items() if s != EMPTY)) if EMPTY in m else m

    def ract(self, m, k):
        return self._clean(self.fmap(lambda E: normalize(RAct(E, k)), m))

    def to_exp(self, m):
        return normalize(_sum_of([LAct(k, E) for E, k in m.ordered()]))

    def members(self, m):
        return [E for E, _ in m.ordered()]

    def weight_to_m(self, k):
        return LinComb(self.sr, ((TOP, k),))

    def m_to_weight(self, m):
        return m.get(TOP, self.sr.zero)

    @property
    def m1(self):
        sr = self.sr
        return SemiringDescriptor(
            id=f"lincomb({sr.id})(1)", zero=LinComb(sr), one=LinComb(sr, ((TOP, sr.one),)),
            add=lambda x, y: LinComb(sr, list(x.items()) + list(y.items())),
            mul=lambda x, y: LinComb(sr, ((TOP, sr.mul(x.get(TOP, sr.zero),
                                                         y.get(TOP, sr.zero))),)),
            star=lambda k: None,
            eq=lambda x, y: x == y,
            parse_literal=lambda t: None, render=repr)


def _sum_of(exprs):
    if not exprs:
        return EMPTY
    out = exprs[0]
    for e in exprs[1:]:
        out = Sum(out, e)
    return out


def get_support(token: str) -> Support:
    """Build a support from ``maybe``, ``set``, ``lincomb:<semiring>`` or
    ``graded:<semiring>``."""
    if token == "maybe":
        return MaybeSupport()
    if token == "set":
        return SetSupport()
    kind, _, sr_name = token.partition(":")
    if kind in ("lincomb", "graded") and sr_name:
        sr = semiring(sr_name)
        if kind == "lincomb":
            return LinCombSupport(sr)
        from .graded import GradedSupport
        return GradedSupport(sr)
    raise ValueError(f"unknown support {token!r}; expected maybe, set, "
                     f"lincomb:<semiring> or graded:<semiring>")
