"""The Koszul complex of three monomials in two variables has a zero cycle.

H_0 and H_1 are both supported at the origin with length 3, so the
alternating sum cancels even though H_0 alone is a perfectly good point.
"""

from cyclekit import complex_cycle, koszul, module_cycle
from cyclekit.homology import homology_table

K = koszul([(2, 0), (1, 1), (0, 2)])
print("ranks:", [m.rank for m in K.modules])

for l, strands in homology_table(K).items():
    print(f"H_{l} strands:", dict(sorted(strands.items())))

for l in range(K.length + 1):
    print(f"[H_{l}] =", " + ".join(module_cycle(K, l).lines()))
print("[K] =", " + ".join(complex_cycle(K).lines()))
