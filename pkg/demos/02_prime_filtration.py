"""A prime filtration of the union of two planes in C^4, xz = xw = yz = yw = 0.

Each step adds one monomial m to the current ideal J and records (J : m),
which is always a coordinate prime here.
"""

from cyclekit import check_filtration, minimal_primes, prime_filtration
from cyclekit.parsing import parse_ideal_expr

I, names = parse_ideal_expr("x*z, x*w, y*z, y*w")
f = prime_filtration(I)


def show(e):
    parts = [f"{names[i]}^{a}" if a > 1 else names[i] for i, a in enumerate(e) if a]
    return "*".join(parts) or "1"


print("minimal primes:", [tuple(names[i] for i in P.variables) for P in minimal_primes(I)])
for J, (m, P) in zip(f.ideals(), f.steps):
    gens = ", ".join(show(g) for g in J.generators)
    print(f"J = ({gens}),  m = {show(m)},  (J : m) = ({', '.join(names[i] for i in P.variables)})")

# the embedded (x, y, w) step has codimension 3 and does not touch the cycle
print("replay ok:", check_filtration(f))
