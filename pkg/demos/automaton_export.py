"""Partial-derivative automaton of a small expression, as DOT and JSON."""

from monadic_derivatives import SetSupport, build, export_dot, export_json, parse, run

aut = build(parse("(a+b)*.a.b"), SetSupport())
print(export_dot(aut))
print(export_json(aut))
for w in ["ab", "bab", "ba"]:
    print(w, run(aut, w))
