import pytest
from hypothesis import given, strategies as st

from gen import proper_st, regex_st, words
from monadic_derivatives.algebra import AND, BOOL, EXT_DIST, NAT, NOT, plus_fun, times_fun
from monadic_derivatives.derive import weight_oracle
from monadic_derivatives.errors import ArityError
from monadic_derivatives.expr import EMPTY, EPS, Cat, Fun, LAct, RAct, Sum, Sym, parse
from monadic_derivatives.graded import GradedSupport, g_bind, g_canonical, g_pure
from monadic_derivatives.supports import (NOTHING, TOP, Just, LinComb, LinCombMonad,
                                          LinCombSupport, MaybeMonad, MaybeSupport, SetMonad,
                                          SetSupport, get_support, lift_n)

a, b = Sym("a"), Sym("b")
SUPPORTS = [MaybeSupport(), SetSupport(), LinCombSupport(BOOL), LinCombSupport(NAT),
            GradedSupport(NAT)]
IDS = [s.token for s in SUPPORTS]
WORDS = list(words("ab", 3))


# -- worked examples ------------------------------------------------------------

def test_pure_and_bind_examples():
    assert MaybeSupport().pure(a) == Just(a)
    assert SetSupport().pure(a) == frozenset({a})
    assert LinCombSupport(NAT).pure(a) == LinComb(NAT, {a: 1})
    assert MaybeMonad().bind(NOTHING, lambda x: Just(x)) == NOTHING
    assert SetMonad().bind(frozenset({a}), lambda x: frozenset({x, Cat(x, b)})) == {a, Cat(a, b)}
    m = LinCombMonad(NAT).bind(LinComb(NAT, {a: 2}), lambda _: LinComb(NAT, {b: 3}))
    assert m == LinComb(NAT, {b: 6})


def test_lift_n_examples():
    maybe = MaybeMonad()
    assert lift_n(maybe, plus_fun(NAT), [Just(1), Just(1)]) == Just(2)
    assert lift_n(maybe, times_fun(NAT), [NOTHING, Just(1)]) == NOTHING
    s = SetMonad()
    assert lift_n(s, lambda x, y: x or y, [frozenset({True}), frozenset({False})], 2) == {True}
    with pytest.raises(ArityError):
        lift_n(maybe, plus_fun(NAT), [Just(1)])


def test_add_examples():
    assert MaybeSupport().add(Just(a), Just(b)) == Just(Sum(a, b))
    assert SetSupport().add(frozenset({a}), frozenset({a, b})) == {a, b}
    lin = LinCombSupport(NAT)
    assert lin.add(LinComb(NAT, {a: 1}), LinComb(NAT, {a: 2})) == LinComb(NAT, {a: 3})


def test_cat_examples():
    s = SetSupport()
    assert s.cat(frozenset({EPS, b}), parse("a*")) == {parse("a*"), parse("b.a*")}
    assert MaybeSupport().cat(NOTHING, a) == NOTHING
    lin = LinCombSupport(NAT)
    assert lin.cat(LinComb(NAT, {a: 2}), b) == LinComb(NAT, {Cat(a, b): 2})


def test_action_examples():
    assert SetSupport().lact(False, frozenset({a})) == frozenset()
    lin = LinCombSupport(NAT)
    assert lin.lact(2, LinComb(NAT, {a: 3})) == LinComb(NAT, {a: 6})
    assert lin.ract(LinComb(NAT, {a: 3}), 2) == LinComb(NAT, {RAct(a, 2): 3})


def test_fun_examples():
    s = SetSupport()
    bs, bsa = parse("b*"), parse("b*.a*")
    out = s.fun(EXT_DIST, [frozenset({bs}), frozenset({bs}), frozenset({bsa})])
    assert out == {Fun(EXT_DIST, [bs, bs, bsa])}
    assert MaybeSupport().fun(NOT, [NOTHING]) == Just(Fun(NOT, [EMPTY]))
    lin = LinCombSupport(NAT)
    assert lin.fun(EXT_DIST, [LinComb(NAT, {a: 2})] * 3) == LinComb(
        NAT, {Fun(EXT_DIST, [LAct(2, a)] * 3): 1})
    with pytest.raises(ArityError):
        s.fun(EXT_DIST, [frozenset()])


def test_to_exp_examples():
    assert MaybeSupport().to_exp(NOTHING) == EMPTY
    assert SetSupport().to_exp(frozenset({b, a})) == Sum(a, b)
    assert LinCombSupport(NAT).to_exp(LinComb(NAT, {a: 2})) == LAct(2, a)


def test_to_exp_is_order_independent():
    xs = [parse(t) for t in ["a*.b*", "a*", "b", "a.b + a"]]
    lin = LinCombSupport(NAT)
    m1 = LinComb(NAT, [(x, i + 1) for i, x in enumerate(xs)])
    m2 = LinComb(NAT, [(x, i + 1) for i, x in reversed(list(enumerate(xs)))])
    assert lin.to_exp(m1) == lin.to_exp(m2)
    assert SetSupport().to_exp(frozenset(xs)) == SetSupport().to_exp(frozenset(reversed(xs)))


def test_lincomb_drops_zero_and_merges():
    m = LinComb(NAT, [(a, 1), (b, 0), (a, 2)])
    assert dict(m) == {a: 3}


def test_get_support_tokens():
    assert get_support("lincomb:nat") == LinCombSupport(NAT)
    assert isinstance(get_support("graded:int"), GradedSupport)
    with pytest.raises(ValueError):
        get_support("bag")
    with pytest.raises(KeyError):
        get_support("lincomb:tropical")


# -- monad laws -----------------------------------------------------------------

payloads = st.integers(0, 3)


def maybe_vals():
    return st.one_of(st.just(NOTHING), payloads.map(Just))


def set_vals():
    return st.frozensets(payloads, max_size=3)


def lin_vals():
    return st.dictionaries(payloads, st.integers(0, 3), max_size=3).map(lambda d: LinComb(NAT, d))


def graded_vals():
    # a graded value with several combinations under a non-trivial term
    from monadic_derivatives.algebra import IDENTITY, Op, Fn, fn_op, optree_compose
    from monadic_derivatives.graded import GradedValue

    def make(parts):
        if len(parts) == 1:
            return GradedValue(IDENTITY, (parts[0],))
        op = fn_op(EXT_DIST) if len(parts) == 3 else fn_op(plus_fun(NAT))
        return GradedValue(op, tuple(parts))

    return st.one_of(st.lists(lin_vals(), min_size=1, max_size=1),
                     st.lists(lin_vals(), min_size=2, max_size=2),
                     st.lists(lin_vals(), min_size=3, max_size=3)).map(make)


MONADS = {
    "maybe": (MaybeMonad(), maybe_vals, lambda x, y: x == y),
    "set": (SetMonad(), set_vals, lambda x, y: x == y),
    "lincomb": (LinCombMonad(NAT), lin_vals, lambda x, y: x == y),
}


class _Graded:
    def pure(self, x):
        return g_pure(x, NAT)

    def bind(self, m, f):
        return g_bind(m, f)


MONADS["graded"] = (_Graded(), graded_vals,
                    lambda x, y: g_canonical(x, NAT) == g_canonical(y, NAT))


def kleisli(vals):
    return st.fixed_dictionaries({i: vals() for i in range(4)}).map(lambda d: d.__getitem__)


@pytest.mark.parametrize("name", list(MONADS))
def test_monad_left_identity(name):
    monad, vals, eq = MONADS[name]

    @given(payloads, kleisli(vals))
    def check(x, f):
        assert eq(monad.bind(monad.pure(x), f), f(x))

    check()


@pytest.mark.parametrize("name", list(MONADS))
def test_monad_right_identity(name):
    monad, vals, eq = MONADS[name]

    @given(vals())
    def check(m):
        assert eq(monad.bind(m, monad.pure), m)

    check()


@pytest.mark.parametrize("name", list(MONADS))
def test_monad_associativity(name):
    monad, vals, eq = MONADS[name]

    @given(vals(), kleisli(vals), kleisli(vals))
    def check(m, f, g):
        lhs = monad.bind(monad.bind(m, f), g)
        rhs = monad.bind(m, lambda x: monad.bind(f(x), g))
        assert eq(lhs, rhs)

    check()


# -- the weight semiring M(1) ---------------------------------------------------

def weight_samples(s):
    ks = [False, True] if s.weights is BOOL else [0, 1, 2, 3]
    out = [s.weight_to_m(k) for k in ks]
    if isinstance(s, GradedSupport):
        # composite weights as produced by derivation
        out.append(s.add(s.weight_to_m(2), s.weight_to_m(1)))
        out.append(s.fun(EXT_DIST, [s.weight_to_m(3), s.weight_to_m(1), s.weight_to_m(2)]))
    return out


@pytest.mark.parametrize("s", SUPPORTS, ids=IDS)
def test_weight_semiring_laws(s):
    R = s.m1
    xs = weight_samples(s)
    eq = R.eq
    for x in xs:
        assert eq(R.add(x, R.zero), x)
        assert eq(R.mul(x, R.one), x) and eq(R.mul(R.one, x), x)
        assert eq(R.mul(x, R.zero), R.zero) and eq(R.mul(R.zero, x), R.zero)
        for y in xs:
            assert eq(R.add(x, y), R.add(y, x))
            for z in xs:
                assert eq(R.add(R.add(x, y), z), R.add(x, R.add(y, z)))
                assert eq(R.mul(R.mul(x, y), z), R.mul(x, R.mul(y, z)))
                assert eq(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z)))
                assert eq(R.mul(R.add(x, y), z), R.add(R.mul(x, z), R.mul(y, z)))


@pytest.mark.parametrize("s", SUPPORTS, ids=IDS)
def test_weight_isomorphism(s):
    for k in ([False, True] if s.weights is BOOL else [0, 1, 5]):
        assert s.m_to_weight(s.weight_to_m(k)) == k


def test_maybe_weight_table():
    R = MaybeSupport().m1
    J = Just(TOP)
    assert R.add(J, J) == J and R.mul(J, J) == J
    assert R.mul(NOTHING, J) == NOTHING and R.mul(J, NOTHING) == NOTHING
    assert R.add(NOTHING, J) == J


# -- semimodule laws and expressive-support equations -----------------------------

exprs = proper_st(regex_st(max_leaves=6))


def series_equal(e1, e2, sr):
    return all(sr.eq(weight_oracle(e1, w, sr), weight_oracle(e2, w, sr)) for w in WORDS)


def support_value(s, terms):
    m = s.zero
    for k, E in terms:
        m = s.add(m, s.lact(k, s.pure(E)))
    return m


def values_for(s):
    ks = st.booleans() if s.weights is BOOL else st.integers(0, 3)
    return st.lists(st.tuples(ks, exprs), max_size=3).map(lambda t: support_value(s, t))


def scalars_for(s):
    return st.booleans() if s.weights is BOOL else st.integers(0, 3)


def msame(s, m1, m2):
    return series_equal(s.to_exp(m1), s.to_exp(m2), s.weights)


@pytest.mark.parametrize("s", SUPPORTS, ids=IDS)
def test_sum_is_a_monoid(s):
    @given(values_for(s), values_for(s), values_for(s))
    def check(m1, m2, m3):
        assert msame(s, s.add(s.add(m1, m2), m3), s.add(m1, s.add(m2, m3)))
        assert msame(s, s.add(m1, s.zero), m1) and msame(s, s.add(s.zero, m1), m1)

    check()


@pytest.mark.parametrize("s", SUPPORTS, ids=IDS)
def test_left_action_laws(s):
    sr = s.weights

    @given(values_for(s), values_for(s), scalars_for(s), scalars_for(s))
    def check(m, m2, k, k2):
        assert msame(s, s.lact(sr.mul(k, k2), m), s.lact(k, s.lact(k2, m)))
        assert msame(s, s.lact(sr.add(k, k2), m), s.add(s.lact(k, m), s.lact(k2, m)))
        assert msame(s, s.lact(k, s.add(m, m2)), s.add(s.lact(k, m), s.lact(k, m2)))
        assert s.is_zero(s.lact(sr.zero, m))
        assert msame(s, s.lact(sr.one, m), m)

    check()


@pytest.mark.parametrize("s", SUPPORTS, ids=IDS)
def test_right_action_laws(s):
    sr = s.weights

    @given(values_for(s), values_for(s), scalars_for(s), scalars_for(s))
    def check(m, m2, k, k2):
        assert msame(s, s.ract(m, sr.mul(k, k2)), s.ract(s.ract(m, k), k2))
        assert msame(s, s.ract(m, sr.add(k, k2)), s.add(s.ract(m, k), s.ract(m, k2)))
        assert msame(s, s.ract(s.add(m, m2), k), s.add(s.ract(m, k), s.ract(m2, k)))
        assert s.is_zero(s.ract(m, sr.zero)) or series_equal(s.to_exp(s.ract(m, sr.zero)),
                                                             EMPTY, sr)
        assert msame(s, s.ract(m, sr.one), m)

    check()


@pytest.mark.parametrize("s", SUPPORTS, ids=IDS)
def test_catenation_action_laws(s):
    @given(values_for(s), values_for(s), exprs, exprs)
    def check(m, m2, F, G):
        assert msame(s, s.cat(s.cat(m, F), G), s.cat(m, Cat(F, G)))
        assert msame(s, s.cat(s.add(m, m2), F), s.add(s.cat(m, F), s.cat(m2, F)))
        assert msame(s, s.cat(m, EPS), m)

    check()


@pytest.mark.parametrize("s", SUPPORTS, ids=IDS)
def test_eq_weight_of_to_exp_is_bind(s):
    sr = s.weights

    @given(values_for(s))
    def check(m):
        for w in WORDS:
            direct = weight_oracle(s.to_exp(m), w, sr)
            bound = s.m_to_weight(s.bind(m, lambda E: s.weight_to_m(weight_oracle(E, w, sr))))
            assert sr.eq(direct, bound)

    check()


@pytest.mark.parametrize("s", SUPPORTS, ids=IDS)
def test_eq_to_exp_commutes_with_operations(s):
    sr = s.weights
    funs = [NOT, AND] if sr is BOOL else [EXT_DIST]

    @given(values_for(s), values_for(s), values_for(s), exprs, scalars_for(s),
           st.sampled_from(funs))
    def check(m, m2, m3, F, k, f):
        T = s.to_exp
        assert series_equal(T(s.cat(m, F)), Cat(T(m), F), sr)
        assert series_equal(T(s.add(m, m2)), Sum(T(m), T(m2)), sr)
        assert series_equal(T(s.lact(k, m)), LAct(k, T(m)), sr)
        assert series_equal(T(s.ract(m, k)), RAct(T(m), k), sr)
        args = [m, m2, m3][:f.arity]
        assert series_equal(T(s.fun(f, args)), Fun(f, [T(x) for x in args]), sr)

    check()
