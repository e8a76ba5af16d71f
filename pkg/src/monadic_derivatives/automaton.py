"""Derivative automata: states are derivated terms, transitions are derivatives.

:func:`build` explores the terms reachable from ``pure(e)`` breadth-first
under a state budget; :func:`run` evaluates a word by chaining the stored
transitions with ``bind``.  Automata export to Graphviz DOT and to a
versioned JSON document that :func:`load_json` reads back.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import (IDENTITY, ZERO_OP, Fn, Id, Op, RScale, Scale, Zero, default_registry,
                      render_op)
from .derive import check_proper, derive_sym, null
from .errors import IncompleteAutomaton
from .expr import EMPTY, Expr, parse, render, symbols
from .graded import GradedSupport, GradedValue
from .supports import (NOTHING, Just, LinComb, LinCombSupport, MaybeSupport, SetSupport, Support,
                       get_support)

JSON_VERSION = 1

JSON_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["version", "alphabet", "support", "states", "initial", "transitions",
                 "finals", "complete"],
    "properties": {
        "version": {"const": JSON_VERSION},
        "alphabet": {"type": "array", "items": {"type": "string", "pattern": "^[a-z]$"}},
        "support": {"type": "string"},
        "states": {"type": "array", "items": {"type": "string"}},
        "initial": {},
        "transitions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "symbol", "value"],
                "properties": {
                    "from": {"type": "integer", "minimum": 0},
                    "symbol": {"type": "string", "pattern": "^[a-z]$"},
                    "value": {},
                },
            },
        },
        "finals": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["state", "weight"],
                "properties": {"state": {"type": "integer", "minimum": 0}, "weight": {}},
            },
        },
        "complete": {"type": "boolean"},
        "explored": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}


@dataclass
class DerivAutomaton:
    alphabet: List[str]
    support: Support
    states: List[Expr]
    initial: object
    trans: Dict[Tuple[int, str], object]
    finals: Dict[int, object]
    complete: bool
    explored: List[int] = field(default_factory=list)

    def index(self, e: Expr) -> int:
        return self.states.index(e)

    def __eq__(self, other):
        if not isinstance(other, DerivAutomaton):
            return NotImplemented
        sr = self.support.weights
        return (self.alphabet == other.alphabet and self.support == other.support
                and self.states == other.states and self.initial == other.initial
                and self.trans == other.trans and self.complete == other.complete
                and self.explored == other.explored
                and self.finals.keys() == other.finals.keys()
                and all(sr.eq(k, other.finals[i]) for i, k in self.finals.items()))


def build(e: Expr, support: Support, max_states: int = 64,
          alphabet: Optional[List[str]] = None) -> DerivAutomaton:
    """Explore the derivated terms of ``e``; ``complete`` is false when the
    budget stopped the exploration."""
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    check_proper(e, support.weights)
    alphabet = sorted(set(alphabet) if alphabet is not None else symbols(e))
    initial = support.pure(e)
    states: List[Expr] = []
    index: Dict[Expr, int] = {}
    complete = True

    def add(s):
        if s in index:
            return True
        if len(states) >= max_states:
            return False
        index[s] = len(states)
        states.append(s)
        return True

    for s in support.members(initial):
        if not add(s):
            complete = False
    trans = {}
    explored = []
    queue = deque(range(len(states)))
    while complete and queue:
        i = queue.popleft()
        found = {}
        for a in alphabet:
            d = derive_sym(states[i], a, support)
            if support.is_zero(d):
                continue
            found[(i, a)] = d
            for s in support.members(d):
                before = len(states)
                if not add(s):
                    complete = False
                    break
                if len(states) > before:
                    queue.append(index[s])
            if not complete:
                break
        if not complete:
            break
        trans.update(found)
        explored.append(i)
    finals = {i: null(s, support.weights) for i, s in enumerate(states)}
    return DerivAutomaton(alphabet, support, states, initial, trans, finals, complete, explored)


def run(aut: DerivAutomaton, w: str):
    """Weight of ``w``: chain the transitions from the initial value, then bind the finals."""
    s = aut.support
    explored = set(aut.explored)
    index = {e: i for i, e in enumerate(aut.states)}

    def step(a):
        def f(E):
            i = index.get(E)
            if i is None or i not in explored:
                raise IncompleteAutomaton(f"no transitions stored for {render(E)}")
            return aut.trans.get((i, a), s.zero)
        return f

    m = aut.initial
    for a in w:
        m = s.bind(m, step(a))
    return s.m_to_weight(s.bind(m, lambda E: s.weight_to_m(aut.finals[index[E]])))


# -- DOT ------------------------------------------------------------------------

def _q(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _weighted(support):
    return isinstance(support, (LinCombSupport, GradedSupport))


def _edges(support, value, index):
    """(target, coefficient or None) pairs of a non-graded value."""
    if isinstance(support, MaybeSupport):
        pairs = [(value.value, None)] if isinstance(value, Just) else []
    elif isinstance(support, SetSupport):
        pairs = [(E, None) for E in support.members(value)]
    else:
        pairs = value.ordered()
    # targets cut off by the state budget are left out
    return [(index[E], k) for E, k in pairs if E in index]


def export_dot(aut: DerivAutomaton) -> str:
    s = aut.support
    sr = s.weights
    index = {e: i for i, e in enumerate(aut.states)}
    lines = ["digraph derivatives {", "  rankdir=LR;", "  node [shape=circle];",
             "  init [shape=point];"]
    for i, e in enumerate(aut.states):
        if e == EMPTY:
            continue
        label = render(e)
        k = aut.finals[i]
        if sr.is_zero(k):
            lines.append(f"  s{i} [label={_q(label)}];")
        else:
            if _weighted(s):
                label = f"{label} / {sr.render(k)}"
            lines.append(f"  s{i} [shape=doublecircle, label={_q(label)}];")
    entries = [("init", "", aut.initial)]
    entries += [(f"s{i}", a, aut.trans[(i, a)]) for (i, a) in sorted(aut.trans)]
    for src, a, value in entries:
        if isinstance(s, GradedSupport):
            lines.extend(_graded_edges(src, a, value, index))
            continue
        for j, k in _edges(s, value, index):
            label = a if k is None else (f"{a} / {sr.render(k)}" if a else sr.render(k))
            attrs = f" [label={_q(label)}]" if label else ""
            lines.append(f"  {src} -> s{j}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _graded_edges(src, a, g, index):
    leaves = [E for L in g.combs for E in L]
    if g.op == IDENTITY and leaves[0] in index:
        attrs = f" [label={_q(a)}]" if a else ""
        return [f"  {src} -> s{index[leaves[0]]}{attrs};"]
    box = f"{src}_{a or 'init'}"
    out = [f"  {box} [shape=box, style=dashed, label={_q(render_op(g.op))}];"]
    attrs = f" [label={_q(a)}]" if a else ""
    out.append(f"  {src} -> {box}{attrs};")
    for slot, E in enumerate(leaves, 1):
        if E not in index:
            continue
        out.append(f"  {box} -> s{index[E]} [label={_q(str(slot))}];")
    return out


# -- JSON -----------------------------------------------------------------------

def _op_to_json(p: Op):
    h = p.head
    if isinstance(h, Id):
        return ["id"]
    kids = [_op_to_json(c) for c in p.children]
    if isinstance(h, Zero):
        return ["zero"]
    if isinstance(h, Scale):
        return ["scale", h.k, kids[0]]
    if isinstance(h, RScale):
        return ["rscale", h.k, kids[0]]
    return ["fn", h.f.name, kids]


def _op_from_json(data, sr, registry):
    tag = data[0]
    if tag == "id":
        return IDENTITY
    if tag == "zero":
        return ZERO_OP
    if tag in ("scale", "rscale"):
        head = Scale(data[1]) if tag == "scale" else RScale(data[1])
        return Op(head, (_op_from_json(data[2], sr, registry),))
    f = registry.resolve(data[1], sr)
    return Op(Fn(f), tuple(_op_from_json(c, sr, registry) for c in data[2]))


def _value_to_json(s, value, index):
    if isinstance(s, MaybeSupport):
        return {"just": index[value.value]} if isinstance(value, Just) else None
    if isinstance(s, SetSupport):
        return sorted(index[E] for E in value)
    if isinstance(s, LinCombSupport):
        return [[index[E], k] for E, k in value.ordered()]
    return {"op": _op_to_json(value.op),
            "combs": [[[index[E], k] for E, k in L.ordered()] for L in value.combs]}


def _value_from_json(s, data, states, registry):
    if isinstance(s, MaybeSupport):
        return NOTHING if data is None else Just(states[data["just"]])
    if isinstance(s, SetSupport):
        return frozenset(states[i] for i in data)
    sr = s.weights
    if isinstance(s, LinCombSupport):
        return LinComb(sr, ((states[i], _weight_from_json(sr, k)) for i, k in data))
    return GradedValue(_op_from_json(data["op"], sr, registry),
                       tuple(LinComb(sr, ((states[i], _weight_from_json(sr, k)) for i, k in L))
                             for L in data["combs"]))


def _weight_from_json(sr, k):
    return float(k) if sr.id == "double" else k


def to_json_data(aut: DerivAutomaton) -> dict:
    s = aut.support
    index = {e: i for i, e in enumerate(aut.states)}
    return {
        "version": JSON_VERSION,
        "alphabet": list(aut.alphabet),
        "support": s.token,
        "states": [render(e) for e in aut.states],
        "initial": _value_to_json(s, aut.initial, index),
        "transitions": [{"from": i, "symbol": a, "value": _value_to_json(s, aut.trans[(i, a)], index)}
                        for (i, a) in sorted(aut.trans)],
        "finals": [{"state": i, "weight": aut.finals[i]} for i in sorted(aut.finals)],
        "complete": aut.complete,
        "explored": list(aut.explored),
    }


def export_json(aut: DerivAutomaton) -> str:
    return json.dumps(to_json_data(aut), ensure_ascii=False, indent=2) + "\n"


def load_json(text: str, registry=None) -> DerivAutomaton:
    data = json.loads(text)
    if data.get("version") != JSON_VERSION:
        raise ValueError(f"unsupported automaton version {data.get('version')!r}")
    registry = registry or default_registry()
    s = get_support(data["support"])
    sr = s.weights
    states = [parse(t, sr, registry) for t in data["states"]]
    trans = {(t["from"], t["symbol"]): _value_from_json(s, t["value"], states, registry)
             for t in data["transitions"]}
    finals = {f["state"]: _weight_from_json(sr, f["weight"]) for f in data["finals"]}
    return DerivAutomaton(list(data["alphabet"]), s, states,
                          _value_from_json(s, data["initial"], states, registry),
                          trans, finals, data["complete"],
                          list(data.get("explored", sorted({i for i, _ in trans}))))
