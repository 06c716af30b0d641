"""Randomized checks of the sign calculus.

Every law is tested on random pure-bidegree maps with polynomial form
entries (degree <= 3, blocks <= 3x3).  The composition rule is checked
against the action on form-valued sections,

    (alpha xi)_r = (-1)^(deg_e alpha * deg_f xi) sum_c A_rc ^ xi_c,

so that it is not compared with itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Sequence, Tuple

from .builders import koszul, lift_morphism, taylor_resolution
from .monomial import MonomialIdeal
from .poly import DifferentialForm, Polynomial, Term, wedge
from .supercomplex import (
    Complex,
    FormEndomorphism,
    GradedMatrix,
    Slot,
    compose,
    connection_D,
    dal_identity_check,
    epsilon,
    epsilon_inv,
    graded_trace,
    identity_map,
    sniken_decomposition,
    tilde,
)

N_VARS = 3


def random_polynomial(rng: random.Random, n: int = N_VARS, max_degree: int = 3, terms: int = 3) -> Polynomial:
    out = {}
    for _ in range(rng.randint(1, terms)):
        e = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(n)] += 1
        out[tuple(e)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Polynomial(n, out)


def random_form(rng: random.Random, q: int, n: int = N_VARS) -> DifferentialForm:
    comps = {}
    for I in rng.sample(list(combinations(range(n), q)), k=min(2, len(list(combinations(range(n), q))))):
        comps[I] = random_polynomial(rng, n)
    return DifferentialForm(n, comps)


def random_slot(rng: random.Random, name: str = "E", rank: int | None = None) -> Slot:
    return Slot(name, rng.randint(0, 3), rng.random() < 0.5, rank or rng.randint(1, 3))


def random_map(rng: random.Random, source: Slot, target: Slot, q: int | None = None, n: int = N_VARS,
               density: float = 0.6) -> FormEndomorphism:
    q = rng.randint(0, 2) if q is None else q
    entries = {}
    for r in range(target.rank):
        for c in range(source.rank):
            if rng.random() < density:
                entries[(r, c)] = random_form(rng, q, n)
    return FormEndomorphism(n, source, target, q, entries)


def act(alpha: FormEndomorphism, section: Sequence[DifferentialForm], q: int) -> List[DifferentialForm]:
    """alpha applied to a column of q-forms."""
    sign = -1 if (alpha.deg_e * q) % 2 else 1
    out = []
    for r in range(alpha.target.rank):
        acc = DifferentialForm.zero(alpha.n)
        for c in range(alpha.source.rank):
            acc = acc + wedge(alpha.entry(r, c), section[c])
        out.append(acc.scale(sign))
    return out


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def check_composition_sign(rng: random.Random) -> bool:
    a, b, c = (random_slot(rng, name) for name in "ABC")
    beta = random_map(rng, a, b)
    alpha = random_map(rng, b, c)
    q = rng.randint(0, 1)
    xi = [random_form(rng, q) for _ in range(a.rank)]
    via_action = act(alpha, act(beta, xi, q), beta.deg_f + q)
    via_compose = act(compose(alpha, beta), xi, q)
    return via_action == via_compose


def check_associativity(rng: random.Random) -> bool:
    a, b, c, d = (random_slot(rng, name) for name in "ABCD")
    g, h, k = random_map(rng, a, b), random_map(rng, b, c), random_map(rng, c, d)
    return compose(compose(k, h), g) == compose(k, compose(h, g))


def check_trace_law(rng: random.Random) -> bool:
    a, b = random_slot(rng, "A"), random_slot(rng, "B")
    alpha = random_map(rng, b, a)
    beta = random_map(rng, a, b)
    sign = _sign(alpha.deg * beta.deg - alpha.deg_e * beta.deg_e)
    return graded_trace(compose(alpha, beta)) == graded_trace(compose(beta, alpha)).scale(sign)


def check_leibniz(rng: random.Random) -> bool:
    a, b, c = (random_slot(rng, name) for name in "ABC")
    beta = random_map(rng, a, b, q=rng.randint(0, 1))
    alpha = random_map(rng, b, c, q=rng.randint(0, 1))
    lhs = connection_D(compose(alpha, beta))
    rhs = compose(connection_D(alpha), beta) + compose(alpha, connection_D(beta)).scale(_sign(alpha.deg))
    return lhs == rhs


def random_monomials(rng: random.Random, n: int, count: int, max_exp: int = 2) -> List[Tuple[int, ...]]:
    out = []
    while len(out) < count:
        e = tuple(rng.randint(0, max_exp) for _ in range(n))
        if any(e):
            out.append(e)
    return out


def random_complex(rng: random.Random) -> Complex:
    n = rng.randint(1, 3)
    gens = random_monomials(rng, n, rng.randint(1, 4))
    if rng.random() < 0.5:
        return koszul([Term.of(Fraction(rng.choice([1, 2, -3, 5]), rng.choice([1, 2])), g) for g in gens])
    return taylor_resolution(MonomialIdeal(n, gens))


def check_dal(rng: random.Random) -> bool:
    E = random_complex(rng)
    while E.length < 2:
        E = random_complex(rng)
    l = rng.randint(1, E.length - 1)
    k = rng.randint(l + 1, E.length)
    return dal_identity_check(E, l, k)


def check_pluto(rng: random.Random) -> bool:
    a, b = random_slot(rng, "A"), random_slot(rng, "B")
    gamma = random_map(rng, a, b, q=0)
    return compose(epsilon(gamma.n, b), gamma) == compose(tilde(gamma), epsilon(gamma.n, a))


def check_mars(rng: random.Random) -> bool:
    a, b = random_slot(rng, "A"), random_slot(rng, "B")
    alpha = random_map(rng, a, b)
    lhs = compose(epsilon(alpha.n, b), alpha)
    rhs = compose(tilde(alpha), epsilon(alpha.n, a)).scale(_sign(alpha.deg_f))
    return lhs == rhs


def check_epsilon_inverse(rng: random.Random) -> bool:
    s = random_slot(rng)
    n = N_VARS
    there = epsilon(n, s)
    back = epsilon_inv(n, s.flipped())
    return compose(back, there) == FormEndomorphism.identity(n, s)


LAWS: Dict[str, Callable[[random.Random], bool]] = {
    "composition sign": check_composition_sign,
    "associativity": check_associativity,
    "trace commutation": check_trace_law,
    "Leibniz rule": check_leibniz,
    "alternating D-phi products": check_dal,
    "epsilon commutes with degree-0 maps": check_pluto,
    "epsilon commutes with form-valued maps": check_mars,
    "epsilon inverse": check_epsilon_inverse,
}


def verify_signs(seed: int = 0, trials: int = 100) -> Dict[str, Tuple[int, int]]:
    """(passed, total) per law."""
    out = {}
    for name, law in LAWS.items():
        rng = random.Random(f"{seed}:{name}")
        passed = sum(1 for _ in range(trials) if law(rng))
        out[name] = (passed, trials)
    return out


@dataclass
class SnikenInstance:
    E: Complex
    G: Complex
    l: int
    p: int
    identity: bool


def sniken_instances(seed: int = 0, count: int = 20) -> List[SnikenInstance]:
    """All (l, p) for ``count`` chain maps: lifts Koszul(f) -> Taylor(f), every
    fifth one replaced by an identity map (where D b = 0)."""
    rng = random.Random(seed)
    out: List[SnikenInstance] = []
    for i in range(count):
        n = rng.randint(1, 3)
        gens = random_monomials(rng, n, rng.randint(1, 3))
        K = koszul([Term.of(rng.choice([1, 2, -1, Fraction(1, 3)]), g) for g in gens])
        use_identity = i % 5 == 0
        G = K if use_identity else taylor_resolution(MonomialIdeal(n, gens), gens)
        for l in range(0, K.length):
            for p in range(1, K.length - l + 1):
                out.append(SnikenInstance(K, G, l, p, use_identity))
    return out


def verify_sniken(seed: int = 0, count: int = 20) -> Tuple[int, int, int]:
    """(passed, total, identity cases with vanishing delta, alpha and beta) over all (l, p)."""
    passed = degenerate = 0
    instances = sniken_instances(seed, count)
    maps = {}
    for inst in instances:
        key = (id(inst.E), id(inst.G))
        if key not in maps:
            if inst.identity:
                maps[key] = identity_map(inst.E)
            else:
                alpha = GradedMatrix.identity(inst.E.module(0), inst.G.module(0))
                maps[key] = lift_morphism(alpha, inst.E, inst.G)
        res = sniken_decomposition(inst.E, inst.G, maps[key], inst.l, inst.p,
                                   names=("E", "E") if inst.identity else ("E", "G"))
        passed += res.verified
        if inst.identity and res.verified and res.alpha.is_zero() and res.beta.is_zero() and res.delta.is_zero():
            degenerate += 1
    return passed, len(instances), degenerate
