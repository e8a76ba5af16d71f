"""Random expressions and values for the property tests."""

import itertools
import random

from hypothesis import strategies as st

from monadic_derivatives.algebra import AND, BOOL, DOUBLE, EXT_DIST, MEAN3, NAT, NOT
from monadic_derivatives.derive import part_null
from monadic_derivatives.expr import (EMPTY, EPS, Cat, Fun, Group, LAct, RAct, Star, Sum, Sym,
                                      Var)


def words(alphabet="ab", maxlen=4):
    for n in range(maxlen + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield "".join(t)


def is_proper(e, sr=BOOL):
    return part_null(e, sr) is not None


# -- seeded generators (fixed corpora) ------------------------------------------

def random_regex(rng: random.Random, depth: int, alphabet="ab"):
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.75:
            return Sym(rng.choice(alphabet))
        return EPS if r < 0.9 else EMPTY
    kind = rng.choice(["sum", "cat", "cat", "star"])
    if kind == "star":
        return Star(random_regex(rng, depth - 1, alphabet))
    l = random_regex(rng, depth - 1, alphabet)
    r = random_regex(rng, depth - 1, alphabet)
    return Sum(l, r) if kind == "sum" else Cat(l, r)


def proper_regex_corpus(n, seed=0, depth=4, alphabet="ab"):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        e = random_regex(rng, depth, alphabet)
        if is_proper(e):
            out.append(e)
    return out


def random_capture(rng: random.Random, depth: int, alphabet="ab", gamma="XY"):
    if depth == 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.55:
            return Sym(rng.choice(alphabet))
        if r < 0.8:
            return Var(rng.choice(gamma))
        return EPS if r < 0.95 else EMPTY
    kind = rng.choice(["sum", "cat", "cat", "star", "group", "group"])
    if kind == "star":
        return Star(random_capture(rng, depth - 1, alphabet, gamma))
    if kind == "group":
        return Group(random_capture(rng, depth - 1, alphabet, gamma), rng.choice(gamma))
    l = random_capture(rng, depth - 1, alphabet, gamma)
    r = random_capture(rng, depth - 1, alphabet, gamma)
    return Sum(l, r) if kind == "sum" else Cat(l, r)


def capture_corpus(n, seed=0, depth=4, alphabet="ab", gamma="XY"):
    rng = random.Random(seed)
    return [random_capture(rng, depth, alphabet, gamma) for _ in range(n)]


# -- hypothesis strategies ------------------------------------------------------

LITERALS = {
    "bool": [True, False],
    "nat": [0, 1, 2, 3],
    "int": [-2, -1, 0, 1, 2],
    "double": [0.0, 0.5, 1.0, 2.0, -1.5],
}

FUNCTIONS = {
    "bool": [NOT, AND],
    "nat": [EXT_DIST],
    "int": [EXT_DIST],
    "double": [EXT_DIST, MEAN3],
}


def regex_st(alphabet="ab", max_leaves=12):
    leaf = st.one_of(st.sampled_from([Sym(a) for a in alphabet]), st.just(EPS), st.just(EMPTY))

    def extend(inner):
        return st.one_of(
            st.builds(Sum, inner, inner),
            st.builds(Cat, inner, inner),
            st.builds(Star, inner),
        )

    return st.recursive(leaf, extend, max_leaves=max_leaves)


def weighted_st(sr, alphabet="ab", max_leaves=10):
    leaf = st.one_of(st.sampled_from([Sym(a) for a in alphabet]), st.just(EPS), st.just(EMPTY))
    lits = st.sampled_from(LITERALS[sr.id])
    funs = FUNCTIONS[sr.id]

    def fun_of(inner):
        return st.sampled_from(funs).flatmap(
            lambda f: st.lists(inner, min_size=f.arity, max_size=f.arity).map(
                lambda args: Fun(f, args)))

    def extend(inner):
        return st.one_of(
            st.builds(Sum, inner, inner),
            st.builds(Cat, inner, inner),
            st.builds(Star, inner),
            st.builds(LAct, lits, inner),
            st.builds(RAct, inner, lits),
            fun_of(inner),
        )

    return st.recursive(leaf, extend, max_leaves=max_leaves)


def proper_st(strategy, sr=BOOL):
    return strategy.filter(lambda e: is_proper(e, sr))


def capture_st(alphabet="ab", gamma="XY", max_leaves=10):
    leaf = st.one_of(st.sampled_from([Sym(a) for a in alphabet]),
                     st.sampled_from([Var(x) for x in gamma]), st.just(EPS), st.just(EMPTY))

    def extend(inner):
        return st.one_of(
            st.builds(Sum, inner, inner),
            st.builds(Cat, inner, inner),
            st.builds(Star, inner),
            st.builds(Group, inner, st.sampled_from(list(gamma))),
        )

    return st.recursive(leaf, extend, max_leaves=max_leaves)


def word_st(alphabet="ab", max_size=3):
    return st.text(alphabet=alphabet, max_size=max_size)


SEMIRINGS = [BOOL, NAT, DOUBLE]
