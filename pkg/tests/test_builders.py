from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclekit.builders import (
    TAYLOR_LIMIT,
    ResolutionDefectError,
    ResourceError,
    as_term,
    big_diagram,
    cokernel_resolution,
    filtration_step_resolutions,
    koszul,
    koszul_D_contraction,
    lift_morphism,
    mapping_cone,
    taylor_resolution,
)
from cyclekit.monomial import DomainError, MonomialIdeal
from cyclekit.poly import DifferentialForm, Polynomial, Term, exterior_d, wedge
from cyclekit.supercomplex import ChainMap, ContractViolation, GradedMatrix, identity_map, twist

from oracles import box, colength_bruteforce, rows_match, strand_homology, total_homology_length


def total_positive_homology(E, margin=2):
    return sum(strand_homology(E, l, b) for l in range(1, E.length + 1) for b in box(E, margin))


@st.composite
def artinian_ideals(draw, n_max=3):
    n = draw(st.integers(1, n_max))
    gens = [tuple(draw(st.integers(1, 3)) if j == i else 0 for j in range(n)) for i in range(n)]
    extra = draw(st.lists(st.tuples(*[st.integers(0, 2)] * n).filter(any), max_size=2))
    return MonomialIdeal(n, gens + extra)


# -- Koszul -------------------------------------------------------------------------


def test_koszul_single_variable():
    K = koszul([(1,)])
    assert [m.rank for m in K.modules] == [1, 1]
    assert K.phi(1).coefficient(0, 0) == 1
    assert K.module(1).generators == ((1,),)


def test_koszul_two_variables():
    K = koszul([(1, 0), (0, 1)])
    assert K.module(1).generators == ((1, 0), (0, 1))
    assert K.module(2).generators == ((1, 1),)
    # phi_2(e_12) = z1 e_2 - z2 e_1
    assert K.phi(2).coefficient(1, 0) == 1 and K.phi(2).coefficient(0, 0) == -1


def test_koszul_ranks_are_binomial():
    K = koszul([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert [m.rank for m in K.modules] == [1, 3, 3, 1]


def test_koszul_keeps_coefficients():
    K = koszul([Term.of(3, (2, 0)), Term.of(-2, (0, 1))])
    assert K.phi(1).coefficient(0, 0) == 3 and K.phi(1).coefficient(0, 1) == -2


def test_koszul_rejects_empty_and_zero():
    with pytest.raises(DomainError):
        koszul([])
    with pytest.raises(DomainError):
        koszul([Term.of(0, (1, 0))])


def test_as_term_inputs():
    assert as_term((1, 2)) == Term.of(1, (1, 2))
    assert as_term(Polynomial.monomial((1, 0), 4)) == Term.of(4, (1, 0))
    with pytest.raises(DomainError):
        as_term(Polynomial.variable(2, 0) + Polynomial.variable(2, 1))


@pytest.mark.parametrize("f", [[(1, 0), (0, 1)], [(2, 0), (0, 3)], [(1, 0, 0), (0, 2, 0), (0, 0, 1)]])
def test_koszul_of_regular_sequence_resolves(f):
    K = koszul(f)
    assert total_positive_homology(K) == 0
    assert total_homology_length(K, 0) == colength_bruteforce(list(f), len(f))


# -- the D-contraction on a Koszul complex ------------------------------------------


def test_D_contraction_p_one():
    K = koszul([Term.of(2, (3, 0)), Term.of(1, (0, 1))])
    c = koszul_D_contraction(K, 1)
    assert c.entry(0, 0) == DifferentialForm(2, {(0,): Polynomial.monomial((2, 0), 6)})
    assert c.entry(0, 1) == DifferentialForm.dz(2, 1)


def test_D_contraction_p_two_is_twice_df1_wedge_df2():
    f = [Term.of(1, (2, 0)), Term.of(1, (0, 3))]
    c = koszul_D_contraction(koszul(f), 2)
    df = [DifferentialForm.function(t.to_polynomial()) for t in f]
    expected = wedge(exterior_d(df[0]), exterior_d(df[1]))
    assert expected == DifferentialForm(2, {(0, 1): Polynomial.monomial((1, 2), 6)})
    # the contraction carries a factor p!
    assert c.entry(0, 0) == expected.scale(2)


def test_D_contraction_range():
    with pytest.raises(ValueError):
        koszul_D_contraction(koszul([(1, 0)]), 2)


# -- Taylor -------------------------------------------------------------------------


def test_taylor_ranks_and_degrees():
    T = taylor_resolution(MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)]))
    assert [m.rank for m in T.modules] == [1, 3, 3, 1]
    assert T.module(3).generators == ((2, 2),)


def test_taylor_unit_and_bound():
    with pytest.raises(DomainError):
        taylor_resolution(MonomialIdeal.unit(2))
    gens = [(i, TAYLOR_LIMIT - i) for i in range(TAYLOR_LIMIT + 1)]
    with pytest.raises(ResourceError):
        taylor_resolution(MonomialIdeal(2, gens))


@given(artinian_ideals())
@settings(max_examples=25, deadline=None)
def test_taylor_is_a_resolution(I):
    T = taylor_resolution(I)
    assert total_positive_homology(T, margin=1) == 0
    assert total_homology_length(T, 0, margin=1) == colength_bruteforce(list(I.generators), I.n)


def test_taylor_on_a_redundant_list():
    I = MonomialIdeal(2, [(1, 0), (0, 1)])
    T = taylor_resolution(I, [(1, 0), (0, 1), (1, 1)])
    assert T.rank(1) == 3
    assert total_positive_homology(T) == 0


# -- cone -----------------------------------------------------------------------------


def test_cone_of_zero_map_is_a_direct_sum():
    K = koszul([(1, 0), (0, 1)])
    zero = ChainMap(K, K, {k: GradedMatrix.zero(K.module(k), K.module(k)) for k in range(3)})
    C = mapping_cone(zero)
    assert [m.rank for m in C.cone.modules] == [1, 3, 3, 1]
    assert C.theta.commutes() and C.vartheta.commutes()


def test_cone_of_identity_is_exact():
    K = koszul([(2, 0), (0, 1)])
    C = mapping_cone(identity_map(K)).cone
    assert sum(strand_homology(C, l, b) for l in range(C.length + 1) for b in box(C)) == 0


def test_cone_euler_characteristic():
    # the strand Euler characteristic of the cone is chi(K) - chi(L)
    K = taylor_resolution(MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)]))
    F = koszul([(2, 0), (0, 2)])
    c = lift_morphism(GradedMatrix.identity(F.module(0), K.module(0)), F, K)
    C = mapping_cone(c).cone

    def chi(E, b):
        return sum((-1) ** l * strand_homology(E, l, b) for l in range(E.length + 1))

    for b in box(C):
        assert chi(C, b) == chi(K, b) - chi(F, b)


def test_cone_rejects_non_chain_map():
    K = koszul([(1, 0), (0, 1)])
    bad = ChainMap(K, K, {1: GradedMatrix.identity(K.module(1))})
    with pytest.raises(ContractViolation):
        mapping_cone(bad)


# -- lifting ----------------------------------------------------------------------------


def test_lift_multiplication_by_a_variable():
    # z1 : O/(z1^2, z2)(-1) -> O/(z1^2, z2)
    E = koszul([(2, 0), (0, 1)])
    F = twist(E, (1, 0))
    a = lift_morphism(GradedMatrix(F.module(0), E.module(0), {(0, 0): 1}), F, E)
    assert a.commutes()
    assert a.block(2).exponent(0, 0) == (1, 0)


def test_lift_into_non_exact_target_fails():
    # Koszul(z1 z2, z1 z2) is not exact at level 1; the column (-1, 0) has no preimage
    E = koszul([(1, 1), (1, 1)])
    fixed = {0: GradedMatrix.identity(E.module(0)), 1: GradedMatrix(E.module(1), E.module(1), {(0, 0): 1})}
    with pytest.raises(ResolutionDefectError):
        lift_morphism(fixed, E, E)


def test_lift_respects_fixed_blocks():
    K = koszul([(1, 0), (0, 1)])
    b = lift_morphism({0: GradedMatrix.identity(K.module(0)), 1: GradedMatrix.identity(K.module(1))}, K, K)
    assert b.block(2) == GradedMatrix.identity(K.module(2))


# -- the three-row diagram ------------------------------------------------------------------


def test_big_diagram_k_zero():
    E = koszul([(1, 0), (0, 1)])
    D = big_diagram(E, 0)
    assert D.G.length == 1
    assert D.b.commutes() and D.a.commutes()
    assert rows_match(D)


@pytest.mark.parametrize("E,k", [
    (koszul([(2, 0), (1, 1), (0, 2)]), 1),
    (taylor_resolution(MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)])), 1),
    (koszul([Term.of(2, (1, 0, 0)), Term.of(-1, (0, 1, 0)), Term.of(Fraction(1, 2), (0, 0, 1))]), 1),
    (koszul([(1, 0), (1, 0)]), 1),
])
def test_big_diagram_instances(E, k):
    D = big_diagram(E, k)
    assert D.b.commutes() and D.a.commutes()
    for l in range(k + 1):
        assert D.b.block(l) == GradedMatrix.identity(E.module(l), D.G.module(l))
    assert all(strand_homology(D.G, l, b) == 0 for l in range(k + 1, D.G.length + 1) for b in box(D.G))
    assert rows_match(D)


def test_cokernel_resolution_is_exact_above_k():
    E = koszul([(2, 0), (1, 1), (0, 2)])
    G = cokernel_resolution(E, 1)
    for l in range(1, G.length + 1):
        assert all(strand_homology(G, l, b) == 0 for b in box(G))


def test_cokernel_resolution_needs_rank_one():
    E = koszul([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(ContractViolation):
        cokernel_resolution(E, 2)


# -- filtration steps -----------------------------------------------------------------------


def test_filtration_step_cone_resolves_the_next_quotient():
    J = MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)])
    step = filtration_step_resolutions(J, (1, 0), (0, 1))
    C = step.cone.cone
    assert step.a.commutes()
    assert sum(strand_homology(C, l, b) for l in range(1, C.length + 1) for b in box(C)) == 0
    bigger = MonomialIdeal(2, list(J.generators) + [(1, 0)])
    assert total_homology_length(C, 0) == colength_bruteforce(list(bigger.generators), 2)
