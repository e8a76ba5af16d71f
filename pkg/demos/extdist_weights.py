"""Weights of an ExtDist expression computed with linear and graded derivatives.

Linear combinations keep growing coefficients inside the expressions, so
the reachable terms never repeat; the graded support moves the arithmetic
into an operadic term and the leaves stay bounded.
"""

from monadic_derivatives import NAT, GradedSupport, LinCombSupport, build, derive_word, parse, weight

e = parse("ExtDist(a*.b* + b*.a*, b*.a*.b*, a*.b*.a*)", NAT)
lin, graded = LinCombSupport(NAT), GradedSupport(NAT)

for w in ["a", "aa", "aaa", "aab"]:
    print(f"d_{w}")
    print("  lincomb:", lin.render(derive_word(e, w, lin)))
    print("  graded: ", graded.render(derive_word(e, w, graded)))
for w in ["aaa", "aab"]:
    print(f"weight({w}) = {weight(e, w, lin)} (lincomb), {weight(e, w, graded)} (graded)")

print()
print("lincomb automaton complete within 20 states:", build(e, lin, 20).complete)
aut = build(e, graded, 64)
print(f"graded automaton complete: {aut.complete}, {len(aut.states)} states")
