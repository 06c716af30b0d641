"""Two multiplicities of the double point (z1^2, z1 z2, z2^2).

The Hilbert-Samuel count looks at how fast O/I^t grows; the geometric one
just counts monomials outside I.  For this ideal they disagree.
"""

from cyclekit import MonomialIdeal, PrimeSupport, colength, geometric_multiplicity, hilbert_samuel_multiplicity
from cyclekit.monomial import newton_covolume, standard_monomials

I = MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)])


def power(ideal, t):
    gens = [(0,) * ideal.n]
    for _ in range(t):
        gens = [tuple(a + b for a, b in zip(g, h)) for g in gens for h in ideal.generators]
    return MonomialIdeal(ideal.n, gens)


print("standard monomials:", sorted(standard_monomials(I)))
print("length of O/I:", colength(I))
print("geometric multiplicity at the origin:", geometric_multiplicity(I, PrimeSupport((0, 1))))

# lengths of O/I^t for small t; the leading coefficient of this quadratic is e/2
for t in range(1, 5):
    print(f"  length O/I^{t} = {colength(power(I, t))}")

print("Hilbert-Samuel multiplicity:", hilbert_samuel_multiplicity(I))
print("2! x covolume of the Newton region:", newton_covolume(I.generators))
