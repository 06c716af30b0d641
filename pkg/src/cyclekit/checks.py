"""End-to-end checks run by ``cyclekit report`` (and mirrored by the test suite)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Sequence, Tuple

from .builders import big_diagram, koszul, taylor_resolution
from .homology import (
    complex_cycle,
    filtration_step_check,
    homology_table,
    koszul_binomial_check,
    module_cycle,
    rows_homology_check,
)
from .monomial import (
    MonomialIdeal,
    PrimeSupport,
    check_filtration,
    geometric_multiplicity,
    hilbert_samuel_multiplicity,
    minimal_primes,
    newton_covolume,
    prime_filtration,
)
from .poly import Term, default_names
from .residue import disputation_consistency, pl_verify
from .supercomplex import Complex, direct_sum, shift_levels
from .verify import verify_signs, verify_sniken


@dataclass
class CheckResult:
    label: str
    passed: bool
    detail: str


def _x(n: int, *pairs: Tuple[int, int]) -> Tuple[int, ...]:
    e = [0] * n
    for i, a in pairs:
        e[i] = a
    return tuple(e)


EXAMPLE_DOUBLE_POINT = MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)])
EXAMPLE_TWO_PLANES = MonomialIdeal(4, [(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)])

# monomial tuples (not complete intersections) with m - p in {1, 2}
BINOMIAL_TUPLES: List[Tuple[Sequence[Tuple[int, ...]], int]] = [
    ([(1, 0), (0, 1), (1, 1)], 2),
    ([(3, 0), (1, 1), (0, 2)], 2),
    ([(1, 0), (0, 1), (1, 0), (0, 1)], 2),
    ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], 3),
    ([(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 1)], 3),
    ([(1,), (1,)], 1),
    ([(2,), (3,)], 1),
    ([(1,), (1,), (1,)], 1),
]


def check_double_point_multiplicities() -> CheckResult:
    hs = hilbert_samuel_multiplicity(EXAMPLE_DOUBLE_POINT)
    vol = newton_covolume(EXAMPLE_DOUBLE_POINT.generators)
    geo = geometric_multiplicity(EXAMPLE_DOUBLE_POINT, PrimeSupport((0, 1)))
    return CheckResult("double point: Hilbert-Samuel vs geometric multiplicity",
                       hs == 4 and vol == 4 and geo == 3,
                       f"hilbert_samuel={hs} newton={vol} geometric={geo}")


def filtration_is_clean(ideal: MonomialIdeal) -> Tuple[bool, str]:
    f = prime_filtration(ideal)
    mins = minimal_primes(ideal)
    counts = f.prime_counts()
    ok = check_filtration(f)
    ok &= all(counts.get(P, 0) == 1 for P in mins)
    codim = min(P.codim for P in mins)
    for P in counts:
        if P not in mins:
            ok &= P.codim > codim and any(Q <= P for Q in mins)
    names = default_names(ideal.n)
    return ok, ", ".join(f"{c}x({','.join(names[i] for i in P.variables)})"
                         for P, c in sorted(counts.items(), key=lambda kv: kv[0].sort_key()))


def check_two_planes_filtration() -> CheckResult:
    ok, detail = filtration_is_clean(EXAMPLE_TWO_PLANES)
    return CheckResult("two planes: prime filtration", ok, detail)


def check_koszul_cancellation() -> CheckResult:
    K = koszul(EXAMPLE_DOUBLE_POINT.generators)
    total = complex_cycle(K)
    h0 = module_cycle(K, 0)
    ok = total.is_zero() and h0.components == {PrimeSupport((0, 1)): 3}
    extra = sum(koszul_binomial_check(f, p) for f, p in BINOMIAL_TUPLES)
    ok &= extra == len(BINOMIAL_TUPLES)
    return CheckResult("Koszul cycle cancels for non complete intersections", ok,
                       f"[E]={'0' if total.is_zero() else total}, H0={' + '.join(h0.lines())}, "
                       f"{extra}/{len(BINOMIAL_TUPLES)} further tuples")


def exponent_tuples(bound: int = 64, max_vars: int = 3) -> Iterator[Tuple[int, ...]]:
    """All (a_1..a_n), n <= max_vars, a_i >= 1 with product <= bound."""
    def rec(prefix, remaining, slots):
        if slots == 0:
            yield tuple(prefix)
            return
        for a in range(1, remaining + 1):
            yield from rec(prefix + [a], remaining // a, slots - 1)

    for n in range(1, max_vars + 1):
        yield from rec([], bound, n)


def pl_tuple(exps: Sequence[int], rng: random.Random) -> List[Term]:
    n = len(exps)
    out = []
    for i, a in enumerate(exps):
        c = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
        out.append(Term.of(c, _x(n, (i, a))))
    return out


def pl_exponent_set(seed: int = 0, bound: int = 64, exhaustive_vars: int = 3,
                    sampled_vars: int = 6, samples: int = 20) -> List[Tuple[int, ...]]:
    """Every tuple with at most ``exhaustive_vars`` entries, plus a seeded sample for each larger n."""
    out = list(exponent_tuples(bound, exhaustive_vars))
    rng = random.Random(seed)
    for n in range(exhaustive_vars + 1, sampled_vars + 1):
        pool = [e for e in exponent_tuples(bound, n) if len(e) == n]
        out += rng.sample(pool, min(samples, len(pool)))
    return out


def check_poincare_lelong(seed: int = 0, bound: int = 64) -> CheckResult:
    rng = random.Random(seed)
    tuples = pl_exponent_set(seed, bound)
    failed = [e for e in tuples if not pl_verify(pl_tuple(e, rng))]
    return CheckResult("residue current vs ideal length vs Koszul H0", not failed,
                       f"{len(tuples) - len(failed)}/{len(tuples)} tuples")


def check_sign_suite(seed: int = 0, trials: int = 100, maps: int = 20) -> CheckResult:
    laws = verify_signs(seed, trials)
    passed, total, degenerate = verify_sniken(seed, maps)
    ok = all(p == t for p, t in laws.values()) and passed == total and degenerate > 0
    return CheckResult("sign calculus laws and the D-eta/D-phi decomposition", ok,
                       f"{sum(p for p, _ in laws.values())}/{sum(t for _, t in laws.values())} law instances, "
                       f"decomposition {passed}/{total} over {maps} maps ({degenerate} with D b = 0)")


def random_ideal(rng: random.Random, n_max: int = 4, gens_max: int = 6, exp_max: int = 2) -> MonomialIdeal:
    while True:
        n = rng.randint(2, n_max)
        gens = []
        for _ in range(rng.randint(1, gens_max)):
            e = tuple(rng.randint(0, exp_max) for _ in range(n))
            if any(e):
                gens.append(e)
        if gens:
            return MonomialIdeal(n, gens)


def filtration_steps(ideal: MonomialIdeal):
    f = prime_filtration(ideal)
    for J, (m, P) in zip(f.ideals(), f.steps):
        yield J, m, P


def random_filtration_steps(seed: int = 0, count: int = 10):
    rng = random.Random(seed)
    steps = []
    while len(steps) < count:
        I = random_ideal(rng)
        steps.extend(filtration_steps(I))
    return steps


def check_cone_resolutions(seed: int = 0, count: int = 10) -> CheckResult:
    steps = random_filtration_steps(seed, count)
    good = sum(1 for J, m, P in steps if filtration_step_check(J, m, P.variables)["resolves_quotient"])
    return CheckResult("mapping cone resolves each filtration quotient", good == len(steps),
                       f"{good}/{len(steps)} short exact sequences")


def big_diagram_instances() -> List[Tuple[str, Complex, int]]:
    t = lambda *e: Term.of(1, e)  # noqa: E731
    extra = shift_levels(koszul([t(1, 0), t(0, 1)]), 1)
    return [
        ("Koszul(z1^2, z1 z2, z2^2)", koszul([t(2, 0), t(1, 1), t(0, 2)]), 1),
        ("Koszul(z1, z2, z1 z2)", koszul([t(1, 0), t(0, 1), t(1, 1)]), 1),
        ("Koszul(x^2, x y)", koszul([t(2, 0), t(1, 1)]), 1),
        ("Koszul(x, y, z, x y)", koszul([t(1, 0, 0), t(0, 1, 0), t(0, 0, 1), t(1, 1, 0)]), 1),
        ("Koszul(x, x)", koszul([t(1), t(1)]), 1),
        ("Taylor(z1^2, z1 z2, z2^2) + Koszul(z1, z2)[1]",
         direct_sum(taylor_resolution(EXAMPLE_DOUBLE_POINT), extra), 1),
    ]


def nonvanishing_levels(E: Complex) -> List[int]:
    return sorted(homology_table(E, 0))


def check_big_diagrams() -> CheckResult:
    instances = big_diagram_instances()
    good = 0
    for _, E, k in instances:
        if nonvanishing_levels(E) == [0, k] and rows_homology_check(big_diagram(E, k)):
            good += 1
    return CheckResult("three-row diagram homology", good == len(instances), f"{good}/{len(instances)} instances")


def check_additivity(seed: int = 0, count: int = 10) -> CheckResult:
    steps = list(filtration_steps(EXAMPLE_TWO_PLANES)) + random_filtration_steps(seed, count)
    good = sum(1 for J, m, P in steps if filtration_step_check(J, m, P.variables)["additive"])
    return CheckResult("cycle additivity along filtration steps", good == len(steps), f"{good}/{len(steps)} steps")


def check_disputation(seed: int = 0, bound: int = 64) -> CheckResult:
    rng = random.Random(seed)
    tuples = pl_exponent_set(seed, bound)
    good = sum(1 for e in tuples if disputation_consistency(pl_tuple(e, rng)))
    return CheckResult("p! normalisation of D phi_1 ... D phi_p", good == len(tuples), f"{good}/{len(tuples)} tuples")


ALL_CHECKS: List[Callable[[], CheckResult]] = [
    check_double_point_multiplicities,
    check_two_planes_filtration,
    check_koszul_cancellation,
    check_poincare_lelong,
    check_sign_suite,
    check_cone_resolutions,
    check_big_diagrams,
    check_additivity,
    check_disputation,
]


def run_all() -> List[CheckResult]:
    return [check() for check in ALL_CHECKS]
