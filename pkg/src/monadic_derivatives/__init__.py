"""Derivatives of weighted and capture-group regular expressions.

One derivation algorithm, parameterized by a *support* that decides what a
derivative is: a single expression (``maybe``), a set of expressions
(``set``), a linear combination over a semiring (``lincomb:<semiring>``) or a
graded operadic combination (``graded:<semiring>``).

>>> from monadic_derivatives import parse, get_support, weight, NAT
>>> e = parse("ExtDist(a*.b* + b*.a*, b*.a*.b*, a*.b*.a*)", NAT)
>>> weight(e, "aaa", get_support("lincomb:nat"))
3
"""

from .algebra import (AND, BOOL, DOUBLE, EXT_DIST, IDENTITY, INT, MEAN3, NAT, NOT, ZERO_OP, Fn,
                      Id, NAryFun, Op, Registry, RScale, Scale, SemiringDescriptor, Zero,
                      builtin_semirings, canonical_op, default_registry, fn_op, nary_apply,
                      op_product, op_sum, optree_compose, optree_compose_at, optree_eval,
                      plus_fun, render_op, scale_op, semiring, times_fun)
from .automaton import (DerivAutomaton, JSON_SCHEMA, build, export_dot, export_json, load_json,
                        run)
from .capture import (Context, cderive_sym, cderive_word, clang_oracle, cmatch, cnull,
                      ctx_update, initial_context)
from .derive import (check_proper, derive_sym, derive_word, null, part_null, weight,
                     weight_oracle)
from .errors import (ArityError, IncompleteAutomaton, MonadicError, NotProper,
                     OracleBudgetExceeded, ParseError, UnknownFunction, UnknownVariable)
from .expr import (EMPTY, EPS, Cat, Empty, Eps, Expr, Fun, Group, LAct, RAct, Star, Sum, Sym, Var,
                   normalize, parse, render, word_expr)
from .graded import (GradedSupport, GradedValue, alpha, g_bind, g_canonical, g_pure, g_to_exp,
                     g_weight, to_op)
from .supports import (NOTHING, TOP, Just, LinComb, LinCombSupport, MaybeSupport, SetSupport,
                       Support, get_support, lift_n)

__version__ = "0.1.0"
