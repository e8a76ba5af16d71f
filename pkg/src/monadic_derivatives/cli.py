"""Command-line front end: ``monadic-derive <command> [flags] <expr> [word]``.

Exit status: 0 on success or match, 1 when ``match`` finds no match,
2 on usage, parse or properness errors.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import default_registry
from .automaton import build, export_dot, export_json
from .capture import (cderive_sym, check_capture_expr, cnull, initial_context, cmatch,
                      render_pairs, sorted_pairs)
from .derive import check_proper, derive_sym, derive_word, null, weight
from .errors import MonadicError
from .expr import has_capture, parse, symbols
from .supports import get_support

DEFAULT_SUPPORT = "set"


class CliError(Exception):
    pass


def _support(args):
    try:
        return get_support(args.support or DEFAULT_SUPPORT)
    except (KeyError, ValueError) as exc:
        raise CliError(str(exc).strip("'\"")) from None


def _alphabet(args, e):
    if args.alphabet:
        letters = [c for c in args.alphabet if not c.isspace() and c != ","]
        bad = [c for c in letters if not ("a" <= c <= "z")]
        if bad:
            raise CliError(f"alphabet symbols must be lowercase letters, got {bad[0]!r}")
        return sorted(set(letters))
    return symbols(e)


def _check_word(word, alphabet, explicit):
    for c in word:
        if not ("a" <= c <= "z"):
            raise CliError(f"invalid symbol {c!r} in word")
        if explicit and c not in alphabet:
            raise CliError(f"symbol {c!r} is not in the alphabet")


def _weighted_expr(args, support):
    e = parse(args.expr, support.weights, default_registry())
    if has_capture(e):
        raise CliError("capture expressions are handled by the 'match' and 'repl' commands")
    check_proper(e, support.weights)
    return e


def cmd_weight(args, out):
    s = _support(args)
    e = _weighted_expr(args, s)
    _check_word(args.word, _alphabet(args, e), bool(args.alphabet))
    print(s.weights.render(weight(e, args.word, s)), file=out)
    return 0


def cmd_derive(args, out):
    s = _support(args)
    e = _weighted_expr(args, s)
    _check_word(args.word, _alphabet(args, e), bool(args.alphabet))
    print(s.render(derive_word(e, args.word, s)), file=out)
    return 0


def cmd_null(args, out):
    s = _support(args)
    e = _weighted_expr(args, s)
    print(s.weights.render(null(e, s.weights)), file=out)
    return 0


def cmd_automaton(args, out):
    s = _support(args)
    e = _weighted_expr(args, s)
    aut = build(e, s, args.max_states, _alphabet(args, e))
    if not aut.complete:
        print(f"warning: exploration stopped at {args.max_states} states; automaton is incomplete",
              file=sys.stderr)
    out.write(export_json(aut) if args.format == "json" else export_dot(aut))
    return 0


def cmd_match(args, out):
    if args.support is not None:
        raise CliError("capture matching does not take --support")
    e = check_capture_expr(parse(args.expr))
    _check_word(args.word, _alphabet(args, e), bool(args.alphabet))
    ok, contexts = cmatch(e, args.word)
    if not ok:
        print("no match", file=out)
        return 1
    print("match", file=out)
    for c in sorted(contexts):
        print(str(c) or "(no variables)", file=out)
    return 0


# -- interactive stepping -------------------------------------------------------

class Repl:
    """Line-oriented derivative stepper; each command returns its output text."""

    def __init__(self, support_token=None, alphabet=None):
        self.support_token = support_token
        self.support = None
        self.fixed_alphabet = alphabet
        self.expr = None
        self.state = None
        self.capture = False
        self.alphabet = []

    def handle(self, line: str) -> str:
        line = line.strip()
        if not line:
            return ""
        cmd, _, arg = line.partition(" ")
        arg = arg.strip()
        try:
            if cmd == ":load":
                return self.load(arg)
            if cmd == ":quit":
                raise EOFError
            if self.expr is None:
                return "error: no expression loaded (use :load <expr>)"
            if cmd == ":step":
                return self.step(arg)
            if cmd == ":null":
                return self.null()
            if cmd == ":ctx":
                return self.ctx()
            if cmd == ":reset":
                self.reset()
                return self.show()
            return f"error: unknown command {cmd!r}"
        except (MonadicError, CliError) as exc:
            return f"error: {exc}"

    def load(self, text):
        support = get_support(self.support_token or DEFAULT_SUPPORT)
        e = parse(text, support.weights, default_registry())
        capture = has_capture(e)
        if capture:
            if self.support_token is not None:
                raise CliError("capture expressions do not take --support")
            check_capture_expr(e)
        else:
            check_proper(e, support.weights)
        self.expr, self.support, self.capture = e, support, capture
        self.alphabet = sorted(self.fixed_alphabet) if self.fixed_alphabet else symbols(e)
        self.reset()
        return self.show()

    def reset(self):
        if self.capture:
            self.state = frozenset(((self.expr, initial_context(self.expr)),))
        else:
            self.state = self.support.pure(self.expr)

    def show(self):
        if self.capture:
            return render_pairs(self.state)
        return self.support.render(self.state)

    def step(self, a):
        if len(a) != 1 or a not in self.alphabet:
            raise CliError(f"symbol {a!r} is not in the alphabet {''.join(self.alphabet)}")
        if self.capture:
            self.state = frozenset(p for E, c in self.state for p in cderive_sym(E, a, c))
        else:
            s = self.support
            self.state = s.bind(self.state, lambda E: derive_sym(E, a, s))
        return self.show()

    def null(self):
        if self.capture:
            found = sorted({c2 for E, c in self.state for c2 in cnull(E, c)})
            if not found:
                return "not nullable"
            return "\n".join(["nullable"] + [str(c) for c in found])
        s = self.support
        sr = s.weights
        k = s.m_to_weight(s.bind(self.state, lambda E: s.weight_to_m(null(E, sr))))
        return sr.render(k)

    def ctx(self):
        if not self.capture:
            return "error: :ctx is only available for capture expressions"
        if not self.state:
            return "(no derivatives)"
        return "\n".join(str(c) for c in dict.fromkeys(c for _, c in sorted_pairs(self.state)))


def cmd_repl(args, out, stdin=None):
    stdin = stdin or sys.stdin
    repl = Repl(args.support, _alphabet_arg(args))
    interactive = stdin.isatty()
    if args.expr:
        print(repl.handle(f":load {args.expr}"), file=out)
    while True:
        if interactive:
            out.write("> ")
            out.flush()
        line = stdin.readline()
        if not line:
            break
        try:
            text = repl.handle(line)
        except EOFError:
            break
        if text:
            print(text, file=out)
    return 0


def _alphabet_arg(args):
    if not args.alphabet:
        return None
    return [c for c in args.alphabet if "a" <= c <= "z"]


def make_parser():
    p = argparse.ArgumentParser(prog="monadic-derive",
                                description="Derivatives of weighted and capture-group expressions.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--support", default=None,
                        help="maybe, set, lincomb:<semiring> or graded:<semiring> (default: set)")
        sp.add_argument("--alphabet", default=None, help="symbols, e.g. 'abc'")

    sp = sub.add_parser("weight", help="weight of a word")
    common(sp)
    sp.add_argument("expr")
    sp.add_argument("word", nargs="?", default="")
    sp = sub.add_parser("derive", help="derivative by a word")
    common(sp)
    sp.add_argument("expr")
    sp.add_argument("word", nargs="?", default="")
    sp = sub.add_parser("null", help="nullability")
    common(sp)
    sp.add_argument("expr")
    sp = sub.add_parser("automaton", help="derivative automaton")
    common(sp)
    sp.add_argument("--format", choices=["dot", "json"], default="dot")
    sp.add_argument("--max-states", type=int, default=64)
    sp.add_argument("expr")
    sp = sub.add_parser("match", help="capture-group membership")
    common(sp)
    sp.add_argument("expr")
    sp.add_argument("word", nargs="?", default="")
    sp = sub.add_parser("repl", help="interactive derivative stepping")
    common(sp)
    sp.add_argument("expr", nargs="?", default=None)
    return p


COMMANDS = {"weight": cmd_weight, "derive": cmd_derive, "null": cmd_null,
            "automaton": cmd_automaton, "match": cmd_match, "repl": cmd_repl}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        if getattr(args, "max_states", 1) < 1:
            raise CliError("--max-states must be at least 1")
        return COMMANDS[args.command](args, out)
    except (MonadicError, CliError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
