"""Form-valued maps on a graded complex and the sign in their composition.

A map carries two degrees: how far it moves along the complex and its form
degree.  Composing two maps that are both odd picks up a minus sign.
"""

import random

from cyclekit import DifferentialForm, FormEndomorphism, Slot, compose, connection_D, graded_trace, koszul
from cyclekit.supercomplex import dal_identity_check, phi_form
from cyclekit.verify import random_map, random_slot, verify_signs

n = 3
a, b, c = Slot("A", 0, False, 1), Slot("B", 0, False, 1), Slot("C", 1, False, 1)
beta = FormEndomorphism(n, a, b, 1, {(0, 0): DifferentialForm.dz(n, 0)})
alpha = FormEndomorphism(n, b, c, 1, {(0, 0): DifferentialForm.dz(n, 1)})
# the naive wedge would be dz2 ^ dz1; the odd-odd sign turns it around
print("alpha beta =", compose(alpha, beta).entry(0, 0))

K = koszul([(2, 0, 0), (1, 1, 0), (0, 0, 3)])
D1 = connection_D(phi_form(K, 1))
print("D phi_1 entries:", [str(D1.entry(0, j)) for j in range(K.rank(1))])
print("alternating identity at (l, k) = (1, 3):", dal_identity_check(K, 1, 3))

# trace swaps its arguments up to a sign fixed by the degrees
rng = random.Random(3)
s, t = random_slot(rng, "S"), random_slot(rng, "T")
f, g = random_map(rng, s, t), random_map(rng, t, s)
sign = (-1) ** ((f.deg * g.deg - f.deg_e * g.deg_e) % 2)
print("tr(g f) == sign * tr(f g):", graded_trace(compose(g, f)) == graded_trace(compose(f, g)).scale(sign))

for name, (passed, total) in verify_signs(seed=7, trials=25).items():
    print(f"  {name}: {passed}/{total}")
