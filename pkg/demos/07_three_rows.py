"""A complex with homology in two levels, split into three rows.

b: E -> G is the identity up to level k and G is exact from k on; the top
row F is the cone of b with its contractible part removed and carries H_k.
"""

from cyclekit import big_diagram, koszul
from cyclekit.homology import homology_table, rows_homology_check

E = koszul([(2, 0), (1, 1), (0, 2)])
D = big_diagram(E, 1)

for name, C in (("E", D.E), ("G", D.G), ("F", D.F)):
    table = homology_table(C)
    print(f"{name}: ranks {[m.rank for m in C.modules]}, homology lengths",
          {l: sum(v.values()) for l, v in table.items()})
print("b and a commute:", D.b.commutes(), D.a.commutes())
print("rows check:", rows_homology_check(D))
