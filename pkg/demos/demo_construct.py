"""Constructing the auxiliary polynomial s and certifying two Pfister forms.

Given gamma and g with all Newton vertices of even degree, an s is built
so that <1,pi><1,-gamma><1,-s> and <1,pi><1,tg><1,-ts> both vanish in
W(K(t)); consequently <1,pi><1,-gamma,-t,-g> is isotropic.

Run:  python demos/demo_construct.py
"""

from padicforms import PadicContext, corollary_isotropy
from padicforms.parsing import parse_poly

for p, gamma, g_text in (
    (3, "2", "t^2 - 3"),    # even slope denominator: perturbation case
    (3, "2", "t^2 - 9"),    # odd slope denominator: graded-ring search case
):
    ctx = PadicContext(p)
    g = parse_poly(g_text, ctx)
    cor = corollary_isotropy(int(gamma), g, ctx, seed=1)
    res = cor.construction
    print(f"p = {p}, gamma = {gamma}, g = {g_text}")
    print(f"  s = {res.s_poly.to_text()}")
    for sf in res.s_factors:
        print(f"  factor {sf.poly.to_text()}  (case {sf.case}; {sf.evidence})")
    print(f"  symbol conditions verified: {len(cor.conditions.conditions)},"
          f" all hold: {cor.conditions.all_hold}")
    print(f"  residue tests, first form : "
          f"{['zero' if t.is_zero else 'NONZERO' for t in cor.milnor_first.tests]}")
    print(f"  residue tests, second form: "
          f"{['zero' if t.is_zero else 'NONZERO' for t in cor.milnor_second.tests]}")
    print(f"  metrics: {res.metrics}")
    print(f"  conclusion: {cor.note}\n")

print("A two-slope example over Q_2 mixing both construction cases:")
ctx = PadicContext(2)
g = parse_poly("t^2 - 2", ctx) * parse_poly("t^2 + t + 1", ctx)
factors = [parse_poly("t^2 - 2", ctx), parse_poly("t^2 + t + 1", ctx)]
cor = corollary_isotropy(5, g, ctx, seed=1, factors=factors)
print(f"  g = {g.to_text()}")
print(f"  s has degree {cor.construction.s_poly.degree} with factors:")
for sf in cor.construction.s_factors:
    print(f"    case {sf.case}: {sf.poly.to_text()}")
print(f"  both forms certified: {cor.isotropic}")
