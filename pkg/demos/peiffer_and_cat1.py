"""A crossed module that breaks Peiffer, seen from three sides.

X = span{x} with x x = x over B = 0 is a fine associative algebra with a
fine (zero) action, but x x should equal x acting on dx = 0.  The same
defect shows up in the semidirect product as a nonzero product of the two
kernels, and again as a composition that is not a morphism.
"""

from xalg import fixtures as F
from xalg.functors import cat1_compose, xmod_to_cat1
from xalg.operads import builtin_presentation
from xalg.structures import validate_cat1, validate_xmod

assoc = builtin_presentation("assoc")
cm = F.fix_bad()

print("crossed module checks")
print(validate_xmod(assoc, cm).summary())

c = xmod_to_cat1(assoc, cm, check=False)
print("\nsemidirect product, read as a Cat1 algebra")
print(validate_cat1(assoc, c).summary())

print("\ninternal-category composition")
print(cat1_compose(assoc, c).summary())
