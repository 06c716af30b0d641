"""Constructors: Koszul complexes, Taylor resolutions, mapping cones, lifts, and the three-row diagram."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .linalg import solve
from .monomial import DomainError, MonomialIdeal, lcm
from .poly import Exponent, Polynomial, Term
from .supercomplex import (
    ChainMap,
    Complex,
    ContractViolation,
    FormEndomorphism,
    FreeModule,
    GradedMatrix,
    block_matrix,
    compose_all,
    D_phi,
    twist,
)

TAYLOR_LIMIT = 20


class ResourceError(RuntimeError):
    """Input exceeds a hard size bound."""


class ResolutionDefectError(RuntimeError):
    """A lifting system has no solution: the target is not exact there."""


def as_term(f, n: int | None = None) -> Term:
    """Accept a Term, a one-term Polynomial, or a bare exponent vector."""
    if isinstance(f, Term):
        return f
    if isinstance(f, Polynomial):
        if len(f) != 1:
            raise DomainError(f"{f} is not a single term")
        (e, c), = f.items()
        return Term.of(c, e)
    if isinstance(f, (tuple, list)) and all(isinstance(a, int) for a in f):
        return Term.of(1, f)
    raise TypeError(f"cannot read {f!r} as a term")


def koszul(f: Sequence) -> Complex:
    """Koszul complex of monomial terms f_1..f_m.

    E_k has basis e_I for k-subsets I (lexicographic order) in degree
    sum_{i in I} deg f_i, and phi(e_I) = sum_r (-1)^(r-1) f_{i_r} e_{I - i_r}.
    """
    terms = [as_term(t) for t in f]
    if not terms:
        raise DomainError("need at least one term")
    n = terms[0].n
    for t in terms:
        if t.n != n:
            raise DomainError("terms over different rings")
        if not t.coefficient:
            raise DomainError("zero entry in f")
    m = len(terms)
    subsets = [list(combinations(range(m), k)) for k in range(m + 1)]

    def deg(I):
        out = [0] * n
        for i in I:
            for j, a in enumerate(terms[i].exponents):
                out[j] += a
        return tuple(out)

    modules = [FreeModule(k, tuple(deg(I) for I in subsets[k])) for k in range(m + 1)]
    diffs = []
    for k in range(1, m + 1):
        index = {I: j for j, I in enumerate(subsets[k - 1])}
        entries = {}
        for c, I in enumerate(subsets[k]):
            for r, i in enumerate(I):
                sign = -1 if r % 2 else 1
                entries[(index[I[:r] + I[r + 1:]], c)] = sign * terms[i].coefficient
        diffs.append(GradedMatrix(modules[k], modules[k - 1], entries))
    return Complex(n, modules, diffs)


def koszul_D_contraction(K: Complex, p: int) -> FormEndomorphism:
    """D phi_1 ... D phi_p : E_p -> E_0 (trivial connection)."""
    if not 1 <= p <= K.length:
        raise ValueError(f"p must lie in 1..{K.length}")
    return compose_all([D_phi(K, j) for j in range(1, p + 1)])


def taylor_resolution(ideal: MonomialIdeal, generators: Sequence[Exponent] | None = None) -> Complex:
    """Taylor resolution of O/I on the given generator list (default: minimal generators).

    Non-minimal or repeated lists are allowed; the complex is still a resolution.
    """
    n = ideal.n
    if generators is None and ideal.is_unit():
        raise DomainError("the unit ideal has no quotient to resolve")
    gens = [tuple(g) for g in (ideal.generators if generators is None else generators)]
    r = len(gens)
    if r > TAYLOR_LIMIT:
        raise ResourceError(f"{r} generators exceed the Taylor bound {TAYLOR_LIMIT}")
    subsets = [list(combinations(range(r), k)) for k in range(r + 1)]
    zero = (0,) * n

    def deg(I):
        out = zero
        for i in I:
            out = lcm(out, gens[i])
        return out

    modules = [FreeModule(k, tuple(deg(I) for I in subsets[k])) for k in range(r + 1)]
    diffs = []
    for k in range(1, r + 1):
        index = {I: j for j, I in enumerate(subsets[k - 1])}
        entries = {}
        for c, I in enumerate(subsets[k]):
            for pos in range(len(I)):
                entries[(index[I[:pos] + I[pos + 1:]], c)] = -1 if pos % 2 else 1
        diffs.append(GradedMatrix(modules[k], modules[k - 1], entries))
    return Complex(n, modules, diffs)


@dataclass
class MappingCone:
    cone: Complex
    theta: ChainMap
    vartheta: ChainMap


def mapping_cone(c: ChainMap) -> MappingCone:
    """Cone of c : L -> K with C_k = K_k + L~_{k-1} (K block first).

    mu_k = [[-kappa_k, c_{k-1}], [0, lambda_{k-1}]], theta_k = [(-1)^k Id; 0],
    vartheta_k = [0, Id] : C_{k+1} -> L_k.
    """
    if c.degree != 0:
        raise ContractViolation("the cone needs a degree-0 map")
    if not c.commutes():
        raise ContractViolation("c is not a chain map")
    L, K = c.source, c.target
    if L.n != K.n:
        raise ContractViolation("complexes over different rings")
    top = max(K.length, L.length + 1)
    summands = [(K.module(k), L.module(k - 1)) for k in range(top + 1)]
    modules = [FreeModule(k, a.generators + b.generators) for k, (a, b) in enumerate(summands)]
    diffs = []
    for k in range(1, top + 1):
        (ka, lb), (ka1, lb1) = summands[k], summands[k - 1]
        mu = block_matrix([[-K.phi(k), c.block(k - 1)], [None, L.phi(k - 1)]], [ka, lb], [ka1, lb1], k, k - 1)
        diffs.append(mu)
    cone = Complex(K.n, modules, diffs)
    theta = {}
    for k in range(K.length + 1):
        ka, lb = summands[k]
        ident = GradedMatrix.identity(ka)
        theta[k] = block_matrix([[ident if k % 2 == 0 else -ident], [None]], [ka], [ka, lb], k, k)
    vartheta = {}
    for k in range(L.length + 1):
        ka, lb = summands[k + 1]
        vartheta[k] = block_matrix([[None, GradedMatrix.identity(lb)]], [ka, lb], [L.module(k)], k + 1, k)
    return MappingCone(cone, ChainMap(K, cone, theta, 0), ChainMap(cone, L, vartheta, -1))


def _strand_solve(phi: GradedMatrix, degree: Exponent, rhs: Mapping[int, Fraction]) -> Optional[Dict[int, Fraction]]:
    """Solve phi x = rhs inside the strand of ``degree``; unknowns in basis order."""
    cols = [j for j, g in enumerate(phi.source.generators) if all(a <= b for a, b in zip(g, degree))]
    rows = [i for i, g in enumerate(phi.target.generators) if all(a <= b for a, b in zip(g, degree))]
    rindex = {r: i for i, r in enumerate(rows)}
    for r in rhs:
        if r not in rindex:
            return None
    cindex = {c: j for j, c in enumerate(cols)}
    entries = {}
    for (r, c), v in phi.entries.items():
        if r in rindex and c in cindex:
            entries[(rindex[r], cindex[c])] = v
    b = [Fraction(0)] * len(rows)
    for r, v in rhs.items():
        b[rindex[r]] = v
    x = solve(entries, (len(rows), len(cols)), b)
    if x is None:
        return None
    return {cols[j]: v for j, v in enumerate(x) if v}


def lift_morphism(alpha: Union[GradedMatrix, Mapping[int, GradedMatrix]], F: Complex, E: Complex) -> ChainMap:
    """Extend alpha : F_0 -> E_0 (or fixed blocks at levels 0..s) to a chain map F -> E.

    Each generator of F_l of degree d is lifted by solving
    phi_l x = (a_{l-1} psi_l)(g) in the strand d of E.
    """
    blocks: Dict[int, GradedMatrix] = {0: alpha} if isinstance(alpha, GradedMatrix) else dict(alpha)
    start = max(blocks) + 1
    for k, blk in blocks.items():
        if blk.source.generators != F.module(k).generators or blk.target.generators != E.module(k).generators:
            raise ContractViolation(f"block {k} does not map F_{k} -> E_{k}")
    for l in range(start, F.length + 1):
        residual = blocks[l - 1] @ F.phi(l)
        phi = E.phi(l)
        by_col: Dict[int, Dict[int, Fraction]] = {}
        for (r, c), v in residual.entries.items():
            by_col.setdefault(c, {})[r] = v
        entries = {}
        for c, g in enumerate(F.module(l).generators):
            rhs = by_col.get(c)
            if not rhs:
                continue
            x = _strand_solve(phi, g, rhs)
            if x is None:
                raise ResolutionDefectError(f"no lift for generator {c} of level {l} in degree {g}")
            for r, v in x.items():
                entries[(r, c)] = v
        blocks[l] = GradedMatrix(F.module(l), E.module(l), entries)
    out = ChainMap(F, E, blocks, 0)
    if not out.commutes():
        raise ContractViolation("lift does not commute; the fixed blocks are inconsistent")
    return out


# -- three-row diagram -------------------------------------------------------------


def _column_terms(phi: GradedMatrix) -> List[Optional[Tuple[Fraction, Exponent]]]:
    """Per column of a one-row matrix: (coefficient, exponent) or None for a zero column."""
    out = []
    for c in range(phi.source.rank):
        v = phi.coefficient(0, c)
        out.append((v, phi.exponent(0, c)) if v else None)
    return out


def cokernel_resolution(E: Complex, k: int) -> Complex:
    """A complex agreeing with E at levels <= k and exact at levels >= k.

    Built when E_{k-1} has rank one (monomial cokernel) or k = 0: the tail is a
    Taylor resolution of the columns of phi_k, rescaled so that it starts at phi_k,
    plus identity summands for zero columns.
    """
    n = E.n
    if k == 0:
        m0 = E.module(0)
        m1 = FreeModule(1, m0.generators)
        return Complex(n, [m0, m1], [GradedMatrix.identity(m1, m0)])
    if E.rank(k - 1) != 1:
        raise ContractViolation("automatic G needs a rank-one module below level k; pass G explicitly")
    row = E.module(k - 1).generators[0]
    cols = _column_terms(E.phi(k))
    live = [j for j, t in enumerate(cols) if t is not None]
    dead = [j for j, t in enumerate(cols) if t is None]
    if live:
        gens = [cols[j][1] for j in live]
        T = twist(taylor_resolution(MonomialIdeal(n, gens), gens), row)
    else:
        T = None
    Ek = E.module(k)
    # level k+1
    t2 = T.module(2).generators if T is not None else ()
    g_next = FreeModule(k + 1, t2 + tuple(Ek.generators[j] for j in dead))
    entries = {}
    if T is not None:
        for (r, c), v in T.phi(2).entries.items():
            entries[(live[r], c)] = v / cols[live[r]][0]
    for i, j in enumerate(dead):
        entries[(j, len(t2) + i)] = 1
    eta = GradedMatrix(g_next, Ek, entries)
    mods = list(E.modules[: k + 1]) + [g_next]
    diffs = [E.phi(j) for j in range(1, k + 1)] + [eta]
    if T is not None:
        for lvl in range(3, T.length + 1):
            mods.append(FreeModule(k + lvl - 1, T.module(lvl).generators))
            src, tgt = mods[-1], mods[-2]
            blk = T.phi(lvl)
            diffs.append(GradedMatrix(src, tgt, blk.entries))
    return Complex(n, mods, diffs)


@dataclass
class BigDiagram:
    E: Complex
    G: Complex
    F: Complex
    b: ChainMap
    a: ChainMap
    k: int


def big_diagram(E: Complex, k: int, G: Complex | None = None) -> BigDiagram:
    """Three rows F -a-> E -b-> G with b = Id at levels <= k.

    F is the cone of b shifted down one level, with the contractible pairs at
    levels <= k removed: F_k = G_{k+1}, F_l = G_{l+1} + E_l for l > k.
    """
    if G is None:
        G = cokernel_resolution(E, k)
    for l in range(0, k + 1):
        if G.module(l).generators != E.module(l).generators or (l >= 1 and not G.phi(l).equal_entries(E.phi(l))):
            raise ContractViolation(f"G must agree with E at level {l}")
    fixed = {l: GradedMatrix.identity(E.module(l), G.module(l)) for l in range(k + 1)}
    b = lift_morphism(fixed, E, G)
    n = E.n
    top = max(G.length - 1, E.length)
    mods: List[FreeModule] = [FreeModule(l, ()) for l in range(k)]
    mods.append(FreeModule(k, G.module(k + 1).generators))
    for l in range(k + 1, top + 1):
        mods.append(FreeModule(l, G.module(l + 1).generators + E.module(l).generators))
    diffs: List[GradedMatrix] = [GradedMatrix.zero(mods[l], mods[l - 1]) for l in range(1, k + 1)]
    for l in range(k + 1, top + 1):
        src = [G.module(l + 1), E.module(l)]
        if l == k + 1:
            psi = block_matrix([[-G.phi(l + 1), b.block(l)]], src, [G.module(l)], l, l - 1)
        else:
            psi = block_matrix([[-G.phi(l + 1), b.block(l)], [None, E.phi(l)]], src,
                               [G.module(l), E.module(l - 1)], l, l - 1)
        diffs.append(GradedMatrix(mods[l], mods[l - 1], psi.entries))
    F = Complex(n, mods, diffs)
    a_blocks = {k: GradedMatrix(F.module(k), E.module(k), G.phi(k + 1).entries)}
    for l in range(k + 1, top + 1):
        blk = block_matrix([[None, GradedMatrix.identity(E.module(l))]], [G.module(l + 1), E.module(l)],
                           [E.module(l)], l, l)
        a_blocks[l] = GradedMatrix(F.module(l), E.module(l), blk.entries)
    a = ChainMap(F, E, a_blocks, 0)
    if not a.commutes():
        raise ContractViolation("a is not a chain map")
    return BigDiagram(E, G, F, b, a, k)


# -- filtration steps as short exact sequences -------------------------------------


@dataclass
class FiltrationStep:
    """0 -> (O/P)(-m) --x^m--> O/J --> O/(J + (x^m)) -> 0 with its resolutions."""

    previous: MonomialIdeal
    witness: Exponent
    prime: Tuple[int, ...]
    F: Complex
    E: Complex
    a: ChainMap
    cone: MappingCone


def filtration_step_resolutions(previous: MonomialIdeal, witness: Exponent, prime: Sequence[int]) -> FiltrationStep:
    n = previous.n
    witness = tuple(witness)
    if prime:
        F = twist(koszul([Term.of(1, tuple(1 if j == i else 0 for j in range(n))) for i in prime]), witness)
    else:
        F = Complex(n, [FreeModule(0, (witness,))], [])
    E = taylor_resolution(previous)
    a0 = GradedMatrix(F.module(0), E.module(0), {(0, 0): 1})
    a = lift_morphism(a0, F, E)
    return FiltrationStep(previous, witness, tuple(prime), F, E, a, mapping_cone(a))
