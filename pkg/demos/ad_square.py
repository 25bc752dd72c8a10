"""Derivations of a dg Lie algebra, its ad square and the totalization."""

from xalg import fixtures as F
from xalg.higher import ad_square, corner_algebras, derivations, tot_algebra, validate_2crossed, validate_dg2
from xalg.io import matrix_to_json
from xalg.operads import builtin_presentation

lie = builtin_presentation("lie")

for name, g in [("aff(1)", F.fix_a0()), ("aff(1) with v, dv = e", F.fix_a1())]:
    der = derivations(lie, g)
    t = ad_square(lie, g)
    print(f"{name}: dim Der0 = {der.dims[0]}, dim Der1 = {der.dims[1]}")
    print("  ad on degree 0:", matrix_to_json(t.square.dh0))
    print("  square valid:", validate_2crossed(lie, t).valid)
    print("  corner dims:", {k: c.dim for k, c in corner_algebras(lie, t).items()})
    tot = tot_algebra(lie, t)
    print("  tot dims:", tot.complex.dims, "valid:", validate_dg2(lie, tot).valid)

bad = validate_dg2(lie, tot_algebra(lie, ad_square(lie, F.fix_a1()), sign="q1p2"))
print("\nwith the product sign (-1)^(q1 p2) instead:")
print(bad.summary())
