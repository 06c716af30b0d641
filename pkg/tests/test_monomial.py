from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclekit.monomial import (
    DomainError,
    MonomialIdeal,
    PrimeSupport,
    check_filtration,
    colength,
    colon,
    geometric_multiplicity,
    hilbert_samuel_multiplicity,
    hull_volume,
    irreducible_decomposition,
    is_irreducible,
    minimal_primes,
    newton_covolume,
    prime_filtration,
    standard_monomials,
)

from oracles import colength_bruteforce, hs_bruteforce

TWO_PLANES = MonomialIdeal(4, [(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)])
DOUBLE_POINT = MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)])


@st.composite
def ideals(draw, n_max=3, gens_max=4, exp_max=3):
    n = draw(st.integers(1, n_max))
    gens = draw(st.lists(st.tuples(*[st.integers(0, exp_max)] * n).filter(any), min_size=1, max_size=gens_max))
    return MonomialIdeal(n, gens)


def test_minimalization():
    I = MonomialIdeal(2, [(2, 0), (3, 1), (2, 0), (0, 1)])
    assert I.generators == ((0, 1), (2, 0))
    assert (1, 5) in I and (1, 0) not in I


def test_unit_and_zero():
    assert MonomialIdeal(2, [(0, 0)]).is_unit()
    assert MonomialIdeal(2).is_zero()
    assert minimal_primes(MonomialIdeal.unit(2)) == []
    assert minimal_primes(MonomialIdeal(2)) == [PrimeSupport(())]
    with pytest.raises(DomainError):
        irreducible_decomposition(MonomialIdeal.unit(2))


def test_two_planes_decomposition():
    comps = irreducible_decomposition(TWO_PLANES)
    assert set(comps) == {MonomialIdeal(4, [(1, 0, 0, 0), (0, 1, 0, 0)]), MonomialIdeal(4, [(0, 0, 1, 0), (0, 0, 0, 1)])}
    assert minimal_primes(TWO_PLANES) == [PrimeSupport((0, 1)), PrimeSupport((2, 3))]


def test_double_point_decomposition():
    comps = irreducible_decomposition(DOUBLE_POINT)
    assert set(comps) == {MonomialIdeal(2, [(2, 0), (0, 1)]), MonomialIdeal(2, [(1, 0), (0, 2)])}
    assert all(is_irreducible(c) for c in comps)


@given(ideals())
@settings(max_examples=80, deadline=None)
def test_decomposition_intersects_back(I):
    comps = irreducible_decomposition(I)
    assert all(is_irreducible(c) for c in comps)
    top = tuple(e + 1 for e in I.max_exponents())
    for e in product(*(range(t + 1) for t in top)):
        assert (e in I) == all(e in c for c in comps)


@given(ideals())
@settings(max_examples=80, deadline=None)
def test_colon_by_bruteforce(I):
    m = tuple(e // 2 for e in I.max_exponents())
    Q = colon(I, m)
    top = I.max_exponents()
    for u in product(*(range(t + 1) for t in top)):
        assert (u in Q) == (tuple(a + b for a, b in zip(u, m)) in I)


def test_colength_examples():
    assert colength(DOUBLE_POINT) == 3
    assert colength(MonomialIdeal(2, [(3, 0), (1, 1), (0, 2)])) == 4
    assert sorted(standard_monomials(DOUBLE_POINT)) == [(0, 0), (0, 1), (1, 0)]
    with pytest.raises(DomainError):
        colength(MonomialIdeal(2, [(1, 1)]))


def test_geometric_multiplicity_at_components():
    assert geometric_multiplicity(DOUBLE_POINT, PrimeSupport((0, 1))) == 3
    assert geometric_multiplicity(TWO_PLANES, PrimeSupport((0, 1))) == 1
    # (x^2, x y): the line x = 0 carries multiplicity 1, the embedded origin is not counted
    I = MonomialIdeal(2, [(2, 0), (1, 1)])
    assert geometric_multiplicity(I, PrimeSupport((0,))) == 1
    with pytest.raises(DomainError):
        geometric_multiplicity(I, PrimeSupport((0, 1)))


def test_two_planes_filtration():
    f = prime_filtration(TWO_PLANES)
    assert check_filtration(f)
    counts = f.prime_counts()
    assert counts[PrimeSupport((0, 1))] == 1 and counts[PrimeSupport((2, 3))] == 1
    for P in counts:
        if P not in (PrimeSupport((0, 1)), PrimeSupport((2, 3))):
            assert P.codim >= 3


@given(ideals())
@settings(max_examples=60, deadline=None)
def test_filtration_replays(I):
    f = prime_filtration(I)
    assert check_filtration(f)
    mins = set(minimal_primes(I))
    counts = f.prime_counts()
    for P in mins:
        assert counts[P] == geometric_multiplicity(I, P)
    # every prime of the chain contains a minimal prime
    assert all(any(Q <= P for Q in mins) for P in f.primes())


def test_filtration_count_matches_length():
    I = MonomialIdeal(2, [(2, 0), (1, 1)])
    f = prime_filtration(I)
    assert f.prime_counts()[PrimeSupport((0,))] == geometric_multiplicity(I, PrimeSupport((0,))) == 1


def test_filtration_tamper_is_detected():
    f = prime_filtration(TWO_PLANES)
    bad = type(f)(f.base, ((f.steps[0][0], PrimeSupport((0,))),) + f.steps[1:])
    assert not check_filtration(bad)


@pytest.mark.parametrize("gens,n,expected", [
    ([(2, 0), (1, 1), (0, 2)], 2, 4),
    ([(3, 0), (1, 1), (0, 2)], 2, 5),
    ([(2, 0), (0, 3)], 2, 6),
    ([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3, 1),
    ([(2, 0, 0), (0, 3, 0), (0, 0, 4), (1, 1, 1)], 3, 24),
])
def test_hilbert_samuel(gens, n, expected):
    I = MonomialIdeal(n, gens)
    assert hilbert_samuel_multiplicity(I) == expected
    assert newton_covolume(I.generators) == expected
    assert hs_bruteforce(gens, n) == expected


def test_hilbert_samuel_needs_artinian():
    with pytest.raises(DomainError):
        hilbert_samuel_multiplicity(MonomialIdeal(2, [(1, 1)]))


def test_complete_intersection_multiplicities_agree():
    I = MonomialIdeal(3, [(2, 0, 0), (0, 3, 0), (0, 0, 1)])
    assert hilbert_samuel_multiplicity(I) == geometric_multiplicity(I, PrimeSupport((0, 1, 2))) == 6
    assert colength(I) == colength_bruteforce(list(I.generators), 3)


def test_hull_volume():
    assert hull_volume([(0, 0), (1, 0), (0, 1)]) == Fraction(1, 2)
    assert hull_volume([(0, 0, 0), (2, 0, 0), (0, 3, 0), (0, 0, 4)]) == 4


def test_prime_support_order_is_inclusion():
    a, b = PrimeSupport((0,)), PrimeSupport((0, 2))
    assert a <= b and a < b and not b <= a
    assert PrimeSupport((2, 0)).variables == (0, 2)
    assert b.ideal(3) == MonomialIdeal(3, [(1, 0, 0), (0, 0, 1)])


def test_json_roundtrip():
    assert MonomialIdeal.from_json(TWO_PLANES.to_json()) == TWO_PLANES
