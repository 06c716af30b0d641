"""Strand homology, localization at coordinate primes, lengths and cycles.

Every generator of a complex sits in one multidegree, so H_l(E)_b is the
homology of a finite complex of Q-vector spaces: the basis at level l is the
set of generators whose degree divides x^b.  Strands stabilize: if D is the
componentwise max of all generator degrees then the strand at b only depends
on min(b, D).  That makes every scan below finite and exact.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .builders import ResourceError
from .linalg import rank
from .monomial import MonomialIdeal, PrimeSupport
from .poly import Exponent, default_names
from .supercomplex import Complex, FreeModule, GradedMatrix

INFINITE = math.inf
MAX_VARIABLES = 12


def box_margin() -> int:
    return int(os.environ.get("CYCLEKIT_BOX_MARGIN", "2"))


def _cap(E: Complex, b: Sequence[int]) -> Exponent:
    D = E._cache.get("D")
    if D is None:
        D = E._cache["D"] = E.max_degrees()
    return tuple(min(x, d) for x, d in zip(b, D))


def _strand_rank(E: Complex, k: int, b: Exponent) -> int:
    """Rank of phi_k restricted to the strand b (b already capped)."""
    if k < 1 or k > E.length:
        return 0
    key = ("rank", k, b)
    hit = E._cache.get(key)
    if hit is not None:
        return hit
    phi = E.phi(k)
    cols = {j: i for i, j in enumerate(j for j, g in enumerate(phi.source.generators)
                                      if all(a <= c for a, c in zip(g, b)))}
    rows = {j: i for i, j in enumerate(j for j, g in enumerate(phi.target.generators)
                                      if all(a <= c for a, c in zip(g, b)))}
    entries = {(rows[r], cols[c]): v for (r, c), v in phi.entries.items() if c in cols and r in rows}
    out = rank(entries, (len(rows), len(cols)))
    E._cache[key] = out
    return out


def strand_dimension(E: Complex, k: int, b: Sequence[int]) -> int:
    b = _cap(E, b)
    return sum(1 for g in E.module(k).generators if all(a <= c for a, c in zip(g, b)))


def strand_homology_rank(E: Complex, l: int, b: Sequence[int]) -> int:
    """dim_Q H_l(E)_b."""
    if any(x < 0 for x in b):
        raise ValueError("strand degrees must be non-negative")
    b = _cap(E, b)
    return strand_dimension(E, l, b) - _strand_rank(E, l, b) - _strand_rank(E, l + 1, b)


def certified_box(E: Complex, margin: int | None = None) -> Iterator[Exponent]:
    """All multidegrees up to the generator bound plus a margin."""
    margin = box_margin() if margin is None else margin
    return product(*(range(d + margin + 1) for d in E.max_degrees()))


def homology_table(E: Complex, margin: int | None = None) -> Dict[int, Dict[Exponent, int]]:
    """Nonzero strand homology ranks per level on the certified box."""
    out: Dict[int, Dict[Exponent, int]] = {}
    box = list(certified_box(E, margin))
    for l in range(E.length + 1):
        for b in box:
            h = strand_homology_rank(E, l, b)
            if h:
                out.setdefault(l, {})[b] = h
    return out


def is_exact_above(E: Complex, level: int = 0, margin: int | None = None) -> bool:
    """True iff H_l(E) = 0 for every l > level (all strands)."""
    box = list(product(*(range(d + 1) for d in E.max_degrees())))
    return all(strand_homology_rank(E, l, b) == 0 for l in range(level + 1, E.length + 1) for b in box)


def localize(E: Complex, P: PrimeSupport | Sequence[int]) -> Complex:
    """Invert x_j for j outside P: keep only the P-coordinates of every degree."""
    keep = tuple(P.variables) if isinstance(P, PrimeSupport) else tuple(sorted(P))
    if keep == tuple(range(E.n)):
        return E
    mods = [FreeModule(m.level, tuple(tuple(g[i] for i in keep) for g in m.generators)) for m in E.modules]
    diffs = [GradedMatrix(mods[k], mods[k - 1], E.phi(k).entries) for k in range(1, E.length + 1)]
    return Complex(len(keep), mods, diffs, E.parity_shift, validate=False)


def local_length(E: Complex, l: int, P: PrimeSupport | Sequence[int]):
    """Length of H_l(E) localized at P, or INFINITE if P is not minimal in the support.

    After localization the strands b with b_i >= D_i all coincide with the one
    at b_i = D_i; so the length is infinite iff a strand on that upper face is
    nonzero, and otherwise it is the sum over the strands strictly below D.
    """
    L = localize(E, P)
    D = L.max_degrees()
    total = 0
    for b in product(*(range(d + 1) for d in D)):
        h = strand_homology_rank(L, l, b)
        if not h:
            continue
        if any(x == d for x, d in zip(b, D)):
            return INFINITE
        total += h
    return total


@dataclass
class Cycle:
    """Formal sum of coordinate primes with integer multiplicities."""

    n: int
    components: Dict[PrimeSupport, int] = field(default_factory=dict)

    def __post_init__(self):
        self.components = {P: int(m) for P, m in self.components.items() if m}

    @classmethod
    def zero(cls, n: int) -> "Cycle":
        return cls(n, {})

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "Cycle") -> "Cycle":
        out = dict(self.components)
        for P, m in other.components.items():
            out[P] = out.get(P, 0) + m
        return Cycle(self.n, out)

    def __neg__(self) -> "Cycle":
        return Cycle(self.n, {P: -m for P, m in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "Cycle":
        return Cycle(self.n, {P: c * m for P, m in self.components.items()})

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def multiplicity(self, P: PrimeSupport | Sequence[int]) -> int:
        P = P if isinstance(P, PrimeSupport) else PrimeSupport(tuple(P))
        return self.components.get(P, 0)

    def by_codim(self) -> Dict[int, "Cycle"]:
        out: Dict[int, Dict[PrimeSupport, int]] = {}
        for P, m in self.components.items():
            out.setdefault(P.codim, {})[P] = m
        return {p: Cycle(self.n, comps) for p, comps in sorted(out.items())}

    def codim_part(self, p: int) -> "Cycle":
        return Cycle(self.n, {P: m for P, m in self.components.items() if P.codim == p})

    def min_codim(self) -> Optional[int]:
        return min((P.codim for P in self.components), default=None)

    def sorted_components(self) -> List[Tuple[PrimeSupport, int]]:
        return sorted(self.components.items(), key=lambda kv: (kv[0].codim, kv[0].variables))

    def lines(self, names: Sequence[str] | None = None) -> List[str]:
        names = names or default_names(self.n)
        if not self.components:
            return ["0"]
        return [f"{m}·[{', '.join(names[i] for i in P.variables)}]" for P, m in self.sorted_components()]

    def __str__(self):
        return "\n".join(self.lines())

    def to_json(self):
        return {
            "n": self.n,
            "components": [{"variables": list(P.variables), "multiplicity": m} for P, m in self.sorted_components()],
            "by_codim": {
                str(p): [{"variables": list(P.variables), "multiplicity": m} for P, m in c.sorted_components()]
                for p, c in self.by_codim().items()
            },
        }

    @classmethod
    def from_json(cls, data) -> "Cycle":
        return cls(int(data["n"]), {PrimeSupport(tuple(c["variables"])): int(c["multiplicity"]) for c in data["components"]})


def homology_support(E: Complex, l: int) -> Dict[PrimeSupport, object]:
    """Minimal coordinate primes of supp H_l(E), with their local lengths."""
    if E.n > MAX_VARIABLES:
        raise ResourceError(f"{E.n} variables exceed the enumeration bound {MAX_VARIABLES}")
    found: Dict[PrimeSupport, object] = {}
    for size in range(E.n + 1):
        for S in combinations(range(E.n), size):
            if any(set(P.variables) <= set(S) for P in found):
                continue
            length = local_length(E, l, S)
            if length:
                found[PrimeSupport(S)] = length
    return found


def module_cycle(E: Complex, l: int) -> Cycle:
    """[H_l(E)]: minimal primes of the support with their lengths."""
    comps = homology_support(E, l)
    for P, m in comps.items():
        if m is INFINITE:
            raise ArithmeticError(f"length at the minimal prime {P} is not finite")
    return Cycle(E.n, comps)


def complex_cycle(E: Complex) -> Cycle:
    """[E] = sum_l (-1)^l [H_l(E)]."""
    total = Cycle.zero(E.n)
    for l in range(E.length + 1):
        c = module_cycle(E, l)
        total = total + (c if l % 2 == 0 else -c)
    return total


def level_cycles(E: Complex) -> Dict[int, Cycle]:
    return {l: module_cycle(E, l) for l in range(E.length + 1)}


def restricted_cycle(E: Complex) -> Cycle:
    """[E]_W: only components that are irreducible components of W = union of supp H_l."""
    cycles = level_cycles(E)
    primes = {P for c in cycles.values() for P in c.components}
    minimal = {P for P in primes if not any(Q < P for Q in primes)}
    total = Cycle.zero(E.n)
    for l, c in cycles.items():
        kept = Cycle(E.n, {P: m for P, m in c.components.items() if P in minimal})
        total = total + (kept if l % 2 == 0 else -kept)
    return total


def quotient_cycle(ideal: MonomialIdeal) -> Cycle:
    """[O/I], computed from the Taylor resolution."""
    from .builders import taylor_resolution

    if ideal.is_unit():
        return Cycle.zero(ideal.n)
    return module_cycle(taylor_resolution(ideal), 0)


def cycle_additivity_check(sub: Cycle, whole: Cycle, quotient: Cycle, codim: int | None = None) -> bool:
    """[A] = [A'] + [A''] in codimension p (default: the codimension of A)."""
    if codim is None:
        codim = whole.min_codim()
        if codim is None:
            return sub.is_zero() and quotient.is_zero()
    return whole.codim_part(codim) == sub.codim_part(codim) + quotient.codim_part(codim)


def filtration_step_check(previous: MonomialIdeal, witness: Exponent, prime: Sequence[int]) -> Dict[str, object]:
    """Resolve one filtration step by a mapping cone and compare it with the quotient.

    Returns the cone's positive homology status, its H_0 cycle, the quotient's
    cycle and the additivity verdict.
    """
    from .builders import filtration_step_resolutions

    step = filtration_step_resolutions(previous, witness, prime)
    cone = step.cone.cone
    exact = is_exact_above(cone, 0)
    cone_h0 = module_cycle(cone, 0)
    quotient = previous.add_monomial(witness)
    expected = quotient_cycle(quotient)
    sub = module_cycle(step.F, 0)
    whole = module_cycle(step.E, 0)
    return {
        "positive_homology_zero": exact,
        "cone_h0": cone_h0,
        "quotient": expected,
        "resolves_quotient": exact and cone_h0 == expected,
        "additive": cycle_additivity_check(sub, whole, expected),
    }


def koszul_binomial_check(f: Sequence, p: int) -> bool:
    """[Koszul(f)] = 0 while [H_0] != 0, for m = #f > p = codim of the zero set."""
    from .builders import koszul

    if len(f) <= p:
        raise ValueError("need more functions than the codimension")
    K = koszul(f)
    h0 = module_cycle(K, 0)
    if h0.is_zero() or h0.min_codim() != p:
        return False
    return complex_cycle(K).is_zero()


def rows_homology_check(diagram, margin: int | None = None) -> bool:
    """Strand-by-strand homology of the three rows of a big diagram.

    G: H_l(G) = H_l(E) for l < k and 0 for l >= k.
    E: H_l(E) = 0 for l > k.
    F: H_k(F) = H_k(E) and 0 elsewhere.
    """
    E, F, G, k = diagram.E, diagram.F, diagram.G, diagram.k
    box = list(certified_box(E, margin))
    top = max(E.length, F.length, G.length)
    for b in box:
        hk = strand_homology_rank(E, k, b)
        for l in range(top + 1):
            he = strand_homology_rank(E, l, b)
            if l > k and he:
                return False
            if strand_homology_rank(G, l, b) != (he if l < k else 0):
                return False
            if strand_homology_rank(F, l, b) != (hk if l == k else 0):
                return False
    return True
