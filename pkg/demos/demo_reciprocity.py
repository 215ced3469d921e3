"""The quadratic reciprocity symbol for polynomials over Q_p.

For q monic irreducible with root alpha, <p/q> is the class of the
4-dimensional form <1,pi><1,-p(alpha)> over Q_p(alpha), computed exactly
through the norm projection (p(alpha), -pi) = (N p(alpha), -pi)_{Q_p}.

Run:  python demos/demo_reciprocity.py
"""

import random

from padicforms import PadicContext, check_reciprocity, legendre_symbol, run_law_corpus
from padicforms.parsing import parse_poly
from padicforms.reciprocity import random_certified_irreducible

ctx = PadicContext(3)
t_minus_1 = parse_poly("t - 1", ctx)
t_minus_3 = parse_poly("t - 3", ctx)

print("A worked reciprocity instance over Q_3 (pi = 3):")
res = check_reciprocity(t_minus_1, t_minus_3, ctx)
print(f"  <t-1 / t-3> = {res.values['p_over_q']:+d}")
print(f"  <-1 / t>    = {res.values['minus_one_over_t']:+d}")
print(f"  <t-3 / t-1> = {res.values['q_over_p']:+d}")
print(f"  law: <p/q> = <-1/t>^(deg p deg q) <q/p>  ->  "
      f"{res.values['p_over_q']} = ({res.values['minus_one_over_t']})^1"
      f" * ({res.values['q_over_p']})   holds: {res.holds}\n")

print("Symbols with quartic moduli go through degree-4 extensions of Q_2:")
ctx2 = PadicContext(2)
rng = random.Random(5)
for _ in range(3):
    q = random_certified_irreducible(rng, ctx2, max_deg=4)
    p = random_certified_irreducible(rng, ctx2, max_deg=3)
    if p == q:
        continue
    print(f"  <{p.to_text()} / {q.to_text()}> = {legendre_symbol(p, q, ctx2):+d}")

print("\nSeeded corpora (law, passes/cases):")
for p in (2, 3, 5):
    c = PadicContext(p)
    for law in ("check-mult", "constant", "pi-invariance", "check-recip"):
        s = run_law_corpus(c, law, 40, seed=7)
        print(f"  p={p} {law:15s} {s['passes']}/{s['cases']}")
