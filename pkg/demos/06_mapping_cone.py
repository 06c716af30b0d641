"""One filtration step as a short exact sequence, resolved by a mapping cone.

0 -> (O/P)(-m) --x^m--> O/J --> O/(J + x^m) -> 0.  Lift x^m to a map of
resolutions; its cone resolves the quotient.
"""

from cyclekit import MonomialIdeal, module_cycle
from cyclekit.builders import filtration_step_resolutions
from cyclekit.homology import is_exact_above, quotient_cycle

J = MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)])
step = filtration_step_resolutions(J, (1, 0), (0, 1))

print("F ranks:", [m.rank for m in step.F.modules], " E ranks:", [m.rank for m in step.E.modules])
print("lift commutes:", step.a.commutes())
cone = step.cone.cone
print("cone ranks:", [m.rank for m in cone.modules])
print("positive homology vanishes:", is_exact_above(cone, 0))
print("[H_0(cone)] =", " + ".join(module_cycle(cone, 0).lines()))
print("[O/(J + z1)] =", " + ".join(quotient_cycle(J.add_monomial((1, 0))).lines()))
