"""Monomial ideal combinatorics.

Decompositions, associated primes, prime filtrations and the two kinds
of multiplicity (geometric, i.e. localized length, and Hilbert-Samuel).
Everything is exact; exponent vectors are plain integer tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable, List, Sequence, Tuple

from .linalg import nullspace
from .poly import Exponent, grlex_key, monomials_in_box


class DomainError(ValueError):
    """Input outside the domain of the operation."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _minimal(gens: Iterable[Exponent]) -> Tuple[Exponent, ...]:
    uniq = sorted(set(tuple(g) for g in gens), key=grlex_key)
    keep: List[Exponent] = []
    for g in uniq:
        # smaller total degree comes first, so only earlier gens can divide g
        if not any(divides(h, g) for h in keep):
            keep.append(g)
    return tuple(keep)


class MonomialIdeal:
    """A monomial ideal given by its minimal generators."""

    __slots__ = ("n", "generators")

    def __init__(self, n: int, generators: Iterable[Sequence[int]] = ()):
        self.n = int(n)
        gens = [tuple(int(a) for a in g) for g in generators]
        for g in gens:
            if len(g) != self.n:
                raise ValueError(f"generator {g} does not have length {self.n}")
            if any(a < 0 for a in g):
                raise ValueError(f"negative exponent in {g}")
        self.generators: Tuple[Exponent, ...] = _minimal(gens)

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, [(0,) * n])

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return (0,) * self.n in self.generators

    def __contains__(self, m) -> bool:
        return membership(self, m)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self.generators == other.generators

    def __hash__(self):
        return hash((self.n, self.generators))

    def __repr__(self):
        return f"MonomialIdeal({self.n}, {list(self.generators)})"

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.n, self.generators + other.generators)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(
            self.n, [tuple(a + b for a, b in zip(g, h)) for g in self.generators for h in other.generators]
        )

    def __pow__(self, t: int) -> "MonomialIdeal":
        out = MonomialIdeal.unit(self.n)
        for _ in range(t):
            out = out * self
        return out

    def add_monomial(self, m: Sequence[int]) -> "MonomialIdeal":
        return MonomialIdeal(self.n, self.generators + (tuple(m),))

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(membership(self, g) for g in other.generators)

    def support_variables(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.n) if any(g[i] for g in self.generators))

    def max_exponents(self) -> Exponent:
        return tuple(max((g[i] for g in self.generators), default=0) for i in range(self.n))

    def restrict(self, keep: Sequence[int]) -> "MonomialIdeal":
        """Image under x_j -> 1 for every j not in ``keep``."""
        keep = tuple(keep)
        return MonomialIdeal(len(keep), [tuple(g[i] for i in keep) for g in self.generators])

    def to_json(self):
        return {"n": self.n, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data) -> "MonomialIdeal":
        return cls(data["n"], data["generators"])


@dataclass(frozen=True)
class PrimeSupport:
    """The monomial prime (x_i : i in variables)."""

    variables: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(sorted(set(self.variables))))

    @property
    def codim(self) -> int:
        return len(self.variables)

    def ideal(self, n: int) -> MonomialIdeal:
        gens = []
        for i in self.variables:
            e = [0] * n
            e[i] = 1
            gens.append(tuple(e))
        return MonomialIdeal(n, gens)

    def __le__(self, other):  # inclusion, not the dataclass order
        return set(self.variables) <= set(other.variables)

    def __lt__(self, other):
        return set(self.variables) < set(other.variables)

    def sort_key(self):
        return (self.codim, self.variables)

    def __repr__(self):
        return f"PrimeSupport({list(self.variables)})"


def minimalize(gens: Iterable[Sequence[int]], n: int | None = None) -> MonomialIdeal:
    gens = [tuple(g) for g in gens]
    if n is None:
        if not gens:
            raise ValueError("ring size needed for the zero ideal")
        n = len(gens[0])
    return MonomialIdeal(n, gens)


def membership(ideal: MonomialIdeal, m: Sequence[int]) -> bool:
    m = tuple(m)
    if len(m) != ideal.n:
        raise ValueError("exponent length does not match the ring")
    return any(divides(g, m) for g in ideal.generators)


def colon(ideal: MonomialIdeal, m: Sequence[int]) -> MonomialIdeal:
    m = tuple(m)
    return MonomialIdeal(ideal.n, [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in ideal.generators])


def as_prime(ideal: MonomialIdeal) -> PrimeSupport | None:
    """The ideal as a PrimeSupport if it is generated by variables, else None."""
    if ideal.is_unit():
        return None
    vars_ = []
    for g in ideal.generators:
        if sum(g) != 1:
            return None
        vars_.append(g.index(1))
    return PrimeSupport(tuple(vars_))


def is_irreducible(ideal: MonomialIdeal) -> bool:
    return all(sum(1 for a in g if a) == 1 for g in ideal.generators)


def _check_proper(ideal: MonomialIdeal) -> None:
    if ideal.is_zero():
        raise DomainError("the zero ideal is not supported here")
    if ideal.is_unit():
        raise DomainError("the unit ideal has no decomposition")


def irreducible_decomposition(ideal: MonomialIdeal) -> List[MonomialIdeal]:
    """Irredundant decomposition into ideals generated by pure powers.

    Splitting recursion: a mixed generator x_i^a * u gives
    I = (I + x_i^a) cap (I + u).
    """
    _check_proper(ideal)
    comps = _split(ideal.n, ideal.generators)
    comps = sorted(set(comps), key=lambda c: (len(c.generators), c.generators))
    out = []
    for c in comps:
        # c is redundant when it contains another component
        if not any(o != c and c.contains_ideal(o) for o in comps):
            out.append(c)
    return out


@lru_cache(maxsize=4096)
def _split(n: int, gens: Tuple[Exponent, ...]) -> Tuple[MonomialIdeal, ...]:
    ideal = MonomialIdeal(n, gens)
    for g in ideal.generators:
        support = [i for i, a in enumerate(g) if a]
        if len(support) > 1:
            i = support[0]
            power = [0] * n
            power[i] = g[i]
            rest = list(g)
            rest[i] = 0
            left = ideal.add_monomial(power)
            right = ideal.add_monomial(rest)
            return _split(n, left.generators) + _split(n, right.generators)
    return (ideal,)


def radical_prime(component: MonomialIdeal) -> PrimeSupport:
    return PrimeSupport(tuple(i for g in component.generators for i, a in enumerate(g) if a))


def minimal_primes(ideal: MonomialIdeal) -> List[PrimeSupport]:
    if ideal.is_unit():
        return []
    if ideal.is_zero():
        return [PrimeSupport(())]
    primes = {radical_prime(c) for c in irreducible_decomposition(ideal)}
    keep = [p for p in primes if not any(q < p for q in primes)]
    return sorted(keep, key=PrimeSupport.sort_key)


def standard_monomials(ideal: MonomialIdeal) -> List[Exponent]:
    """Monomials outside an Artinian ideal."""
    bounds = _artinian_bounds(ideal)
    return [m for m in monomials_in_box(tuple(b - 1 for b in bounds)) if not membership(ideal, m)]


def _artinian_bounds(ideal: MonomialIdeal) -> List[int]:
    bounds = []
    for i in range(ideal.n):
        pure = [g[i] for g in ideal.generators if g[i] and sum(g) == g[i]]
        if not pure:
            if ideal.is_unit():
                pure = [0]
            else:
                raise DomainError(f"ideal is not Artinian: no pure power of variable {i}")
        bounds.append(min(pure))
    return bounds


def colength(ideal: MonomialIdeal) -> int:
    """dim_k O/I for an Artinian monomial ideal."""
    if ideal.is_unit():
        return 0
    return len(standard_monomials(ideal))


# -- prime filtrations -------------------------------------------------------


@dataclass(frozen=True)
class Filtration:
    """Chain I = J_0 subset J_1 subset ... subset J_m = O with J_i = J_{i-1} + (m_i).

    The submodules M_i = J_i / I of O/I satisfy M_i / M_{i-1} = O/P_i
    where P_i = (J_{i-1} : m_i).
    """

    base: MonomialIdeal
    steps: Tuple[Tuple[Exponent, PrimeSupport], ...]

    def ideals(self) -> List[MonomialIdeal]:
        chain = [self.base]
        for m, _ in self.steps:
            chain.append(chain[-1].add_monomial(m))
        return chain

    def primes(self) -> List[PrimeSupport]:
        return [p for _, p in self.steps]

    def prime_counts(self) -> dict:
        out: dict = {}
        for p in self.primes():
            out[p] = out.get(p, 0) + 1
        return out

    def __len__(self):
        return len(self.steps)


def _witness_order(box: Exponent) -> List[Exponent]:
    return sorted(monomials_in_box(box), key=grlex_key)


def prime_filtration(ideal: MonomialIdeal) -> Filtration:
    """Deterministic prime filtration of O/I.

    At each step the witness is the first monomial m (by total degree,
    then lexicographically) outside the current ideal J with (J : m) prime.
    """
    if ideal.is_unit():
        raise DomainError("O/O is zero; nothing to filter")
    current = ideal
    steps = []
    while not current.is_unit():
        for m in _witness_order(current.max_exponents()):
            if membership(current, m):
                continue
            p = as_prime(colon(current, m))
            if p is not None:
                steps.append((m, p))
                current = current.add_monomial(m)
                break
        else:  # pragma: no cover - guaranteed by existence of associated primes
            raise RuntimeError("no associated prime found")
    return Filtration(ideal, tuple(steps))


def check_filtration(filtration: Filtration) -> bool:
    """Replay a filtration: every colon is the claimed prime and every step is strict."""
    current = filtration.base
    for m, p in filtration.steps:
        if membership(current, m):
            return False
        if colon(current, m) != p.ideal(current.n):
            return False
        current = current.add_monomial(m)
    return current.is_unit()


# -- multiplicities ------------------------------------------------------------


def geometric_multiplicity(ideal: MonomialIdeal, prime: PrimeSupport) -> int:
    """Length of (O/I)_P for a minimal prime P of I."""
    if prime not in minimal_primes(ideal):
        raise DomainError(f"{prime} is not a minimal prime of {ideal}")
    return colength(ideal.restrict(prime.variables))


def _hs_lengths(ideal: MonomialIdeal, upto: int) -> List[int]:
    return [colength(ideal**t) for t in range(1, upto + 1)]


def _differences(values: List[int], order: int) -> List[int]:
    for _ in range(order):
        values = [b - a for a, b in zip(values, values[1:])]
    return values


def hilbert_samuel_multiplicity(ideal: MonomialIdeal, max_power: int = 40) -> int:
    """e(I) for an ideal that is Artinian in the variables it involves.

    Computed from t -> length(O/I^t) once its d-th difference is constant
    over a window of d+2 points (d = number of variables), then compared
    with d! times the covolume of the Newton region.
    """
    if ideal.is_zero() or ideal.is_unit():
        raise DomainError("need a nonzero proper ideal")
    variables = ideal.support_variables()
    local = ideal.restrict(variables)
    _artinian_bounds(local)
    d = len(variables)
    lengths: List[int] = []
    e = None
    for t in range(1, max_power + 1):
        lengths.append(colength(local**t))
        window = lengths[-(d + 3):]
        if len(window) == d + 3:
            diffs = _differences(window, d)
            if len(set(diffs)) == 1:
                e = diffs[0]
                break
    if e is None:
        raise ConsistencyError("Hilbert-Samuel function did not become polynomial")
    vol = newton_covolume(local.generators)
    if vol != e:
        raise ConsistencyError(f"power fit gives {e} but Newton covolume gives {vol}")
    return e


# -- Newton region volume ----------------------------------------------------------


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _hyperplane(points: Sequence[Sequence[Fraction]]):
    """Normal vector w and offset c of the affine hull of ``len(points)`` points
    in dimension ``len(points)``; None when they are affinely dependent."""
    base = points[0]
    rows = {}
    for r, p in enumerate(points[1:]):
        for c, (x, y) in enumerate(zip(p, base)):
            if x - y:
                rows[(r, c)] = Fraction(x - y)
    ker = nullspace(rows, (len(points) - 1, len(base)))
    if len(ker) != 1:
        return None
    w = ker[0]
    return w, _dot(w, base)


def _facets(points: Sequence[Tuple[Fraction, ...]]):
    """(w, c, facet_points) for every facet of a full-dimensional hull."""
    dim = len(points[0])
    seen = set()
    for subset in combinations(points, dim):
        hp = _hyperplane(subset)
        if hp is None:
            continue
        w, c = hp
        vals = [_dot(w, p) - c for p in points]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            on = frozenset(p for p, v in zip(points, vals) if v == 0)
            if on not in seen:
                seen.add(on)
                yield w, c, sorted(on)


def hull_volume(points: Sequence[Sequence]) -> Fraction:
    """Exact volume of the convex hull of a full-dimensional point set."""
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    dim = len(pts[0])
    if dim == 0:
        return Fraction(1)
    if dim == 1:
        return max(p[0] for p in pts) - min(p[0] for p in pts)
    centroid = tuple(sum(p[i] for p in pts) / len(pts) for i in range(dim))
    total = Fraction(0)
    for w, c, facet in _facets(pts):
        k = next(i for i, x in enumerate(w) if x)
        height = abs(c - _dot(w, centroid)) / abs(w[k])
        projected = [p[:k] + p[k + 1:] for p in facet]
        total += height * hull_volume(projected) / dim
    return total


def newton_covolume(generators: Sequence[Exponent]) -> int:
    """d! * vol(R^d_+ minus the Newton polyhedron), for a convenient set of exponents.

    The complement is the union of the cones from the origin over the
    compact facets, i.e. the facets with strictly positive normal.
    """
    pts = sorted({tuple(Fraction(x) for x in g) for g in generators})
    dim = len(pts[0])
    if dim == 1:
        return int(min(p[0] for p in pts))
    total = Fraction(0)
    seen = set()
    for subset in combinations(pts, dim):
        hp = _hyperplane(subset)
        if hp is None:
            continue
        w, c = hp
        if all(x < 0 for x in w):
            w, c = [-x for x in w], -c
        if not all(x > 0 for x in w):
            continue
        if any(_dot(w, p) < c for p in pts):
            continue
        facet = frozenset(p for p in pts if _dot(w, p) == c)
        if facet in seen:
            continue
        seen.add(facet)
        k = 0
        projected = [p[1:] for p in facet]
        total += (c / w[k]) * hull_volume(projected) / dim
    value = total * factorial(dim)
    if value.denominator != 1:
        raise ConsistencyError(f"non-integral normalized volume {value}")
    return int(value)
