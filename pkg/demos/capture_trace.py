"""Matching a back reference by threading a context through derivatives."""

from monadic_derivatives import cderive_word, cmatch, initial_context, parse
from monadic_derivatives.capture import render_pairs

e = parse("((a*)_X.b.X)*.c.X")
ctx = initial_context(e)
word = "abaca"
for i in range(len(word) + 1):
    print(f"{word[:i] or 'ε':>6}  {render_pairs(cderive_word(e, word[:i], ctx))}")

for w in ["abaca", "bc", "abacb", ""]:
    ok, found = cmatch(e, w)
    print(f"{w!r}: {'match ' + '; '.join(map(str, sorted(found))) if ok else 'no match'}")
