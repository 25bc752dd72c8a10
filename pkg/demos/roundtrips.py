"""dg algebra -> crossed module -> Cat1 algebra -> back, on the aff(1) example."""

from xalg import fixtures as F
from xalg.functors import dg_to_xmod, roundtrip
from xalg.io import bilinear_to_json
from xalg.operads import builtin_presentation

lie = builtin_presentation("lie")
a = F.fix_a1()

cm = dg_to_xmod(lie, a)
print("derived bracket on V1:", bilinear_to_json(cm.x.mult["bracket"]))

for start, path in [(a, ["dg_to_xmod", "xmod_to_dg"]),
                    (a, ["dg_to_cat1", "cat1_to_xmod", "xmod_to_dg"]),
                    (cm, ["xmod_to_cat1", "cat1_to_xmod"])]:
    rt = roundtrip(lie, start, path)
    print(f"{rt.direction}: isomorphic={rt.isomorphic}")
