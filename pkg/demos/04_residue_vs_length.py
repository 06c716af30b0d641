"""Residue currents against lengths for f = (c1 z1^a1, c2 z2^a2, c3 z3^a3).

The product current acts on test jets as (a1 a2 a3) times evaluation at
0; the length of O/(f) and the Koszul H_0 cycle give the same number.
"""

from fractions import Fraction

from cyclekit import Polynomial, Term, ch_product_functional
from cyclekit.residue import pl_multiplicities

f = [Term.of(Fraction(-2, 3), (2, 0, 0)), Term.of(5, (0, 3, 0)), Term.of(1, (0, 0, 4))]
functional = ch_product_functional(f)
print("functional coefficients:", functional.coefficients)

psi = Polynomial(3, {(0, 0, 0): 7, (1, 0, 0): 2, (0, 2, 1): -1})
print("value on psi:", functional.apply(psi))

r = pl_multiplicities(f)
print("expected:", r["expected"], " ideal length:", r["ideal_length"], " Koszul H_0:", r["koszul_h0"])
