import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclekit.builders import koszul, lift_morphism, taylor_resolution
from cyclekit.monomial import MonomialIdeal
from cyclekit.poly import DifferentialForm, Polynomial, Term, exterior_d, wedge
from cyclekit.supercomplex import (
    ChainMap,
    Complex,
    CompositionError,
    ContractViolation,
    FormEndomorphism,
    FreeModule,
    GradedMatrix,
    Slot,
    compose,
    connection_D,
    dal_identity_check,
    direct_sum,
    epsilon,
    epsilon_inv,
    graded_trace,
    identity_map,
    phi_form,
    shift_levels,
    sniken_decomposition,
    tilde,
    tilde_and_epsilon,
    twist,
)
from cyclekit.verify import random_map, random_slot

from oracles import section_action

N = 3


def one(n=N):
    return DifferentialForm.function(Polynomial.constant(n, 1))


def dz(i, n=N):
    return DifferentialForm.dz(n, i)


# -- graded matrices and complexes --------------------------------------------------


def test_graded_matrix_rejects_wrong_degree():
    src = FreeModule(1, ((1, 0),))
    tgt = FreeModule(0, ((0, 1),))
    with pytest.raises(ContractViolation):
        GradedMatrix(src, tgt, {(0, 0): 1})


def test_graded_matrix_term_exponent():
    src = FreeModule(1, ((2, 1),))
    tgt = FreeModule(0, ((0, 0),))
    m = GradedMatrix(src, tgt, {(0, 0): 3})
    assert m.term(0, 0) == Term.of(3, (2, 1))


def test_complex_checks_phi_squared():
    m0 = FreeModule(0, ((0,),))
    m1 = FreeModule(1, ((1,),))
    m2 = FreeModule(2, ((2,),))
    d1 = GradedMatrix(m1, m0, {(0, 0): 1})
    d2 = GradedMatrix(m2, m1, {(0, 0): 1})
    with pytest.raises(ContractViolation):
        Complex(1, [m0, m1, m2], [d1, d2])


def test_complex_json_roundtrip():
    K = koszul([Term.of(Fraction(3, 2), (2, 0)), Term.of(-1, (1, 1)), Term.of(1, (0, 2))])
    back = Complex.from_json(K.to_json())
    assert back.to_json() == K.to_json()
    for k in range(1, 4):
        assert back.phi(k) == K.phi(k)


def test_complex_json_rejects_bad_exponent():
    data = koszul([(1, 0)]).to_json()
    data["differentials"][0]["entries"][0][3] = [2, 0]
    with pytest.raises(ContractViolation):
        Complex.from_json(data)


def test_structural_helpers():
    K = koszul([(1, 0), (0, 1)])
    S = shift_levels(K, 1)
    assert [m.rank for m in S.modules] == [0, 1, 2, 1]
    D = direct_sum(K, S)
    assert [m.rank for m in D.modules] == [1, 3, 3, 1]
    T = twist(K, (1, 1))
    assert T.module(0).generators == ((1, 1),)


def test_chain_map_validity():
    K = koszul([(1, 0), (0, 1)])
    assert identity_map(K).commutes()
    bad = {0: GradedMatrix.identity(K.module(0)), 1: GradedMatrix.identity(K.module(1)).scale(2)}
    assert not ChainMap(K, K, bad).commutes()


# -- composition, trace, D ------------------------------------------------------------


def test_degree_zero_composition_is_plain_product():
    a, b, c = Slot("A", 0, False, 2), Slot("B", 0, False, 2), Slot("C", 0, False, 1)
    x = DifferentialForm.function(Polynomial.variable(N, 0))
    beta = FormEndomorphism(N, a, b, 0, {(0, 0): x, (1, 1): one()})
    alpha = FormEndomorphism(N, b, c, 0, {(0, 0): one(), (0, 1): x})
    assert compose(alpha, beta) == FormEndomorphism(N, a, c, 0, {(0, 0): x, (0, 1): x})


def test_odd_endomorphism_after_one_form_flips_sign():
    a, b, c = Slot("A", 0, False, 1), Slot("B", 0, False, 1), Slot("C", 1, False, 1)
    beta = FormEndomorphism(N, a, b, 1, {(0, 0): dz(0)})
    alpha = FormEndomorphism(N, b, c, 1, {(0, 0): dz(1)})
    assert alpha.deg_e == 1 and beta.deg_f == 1
    naive = wedge(dz(1), dz(0))
    assert compose(alpha, beta).entry(0, 0) == -naive


def test_composition_level_mismatch():
    a, b = Slot("A", 0, False, 1), Slot("B", 1, False, 1)
    alpha = FormEndomorphism(N, a, b, 0, {(0, 0): one()})
    with pytest.raises(CompositionError):
        compose(alpha, alpha)


@given(st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_composition_matches_section_action(seed):
    rng = random.Random(seed)
    a, b, c = (random_slot(rng, s) for s in "ABC")
    beta, alpha = random_map(rng, a, b), random_map(rng, b, c)
    q = rng.randint(0, 1)
    xi = [DifferentialForm(N, {tuple(range(q)): Polynomial(N, {(rng.randint(0, 2), 0, 1): rng.randint(1, 4)})})
          for _ in range(a.rank)]
    assert section_action(compose(alpha, beta), xi, q) == section_action(alpha, section_action(beta, xi, q), q + beta.deg_f)


@given(st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_associativity(seed):
    rng = random.Random(seed)
    a, b, c, d = (random_slot(rng, s) for s in "ABCD")
    f, g, h = random_map(rng, a, b), random_map(rng, b, c), random_map(rng, c, d)
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_trace_examples():
    s = Slot("E", 2, False, 3)
    assert graded_trace(FormEndomorphism.identity(N, s)) == DifferentialForm.function(Polynomial.constant(N, 3))
    nil = FormEndomorphism(N, s, s, 1, {(0, 1): dz(0), (1, 2): dz(2), (0, 2): dz(1)})
    assert graded_trace(nil).is_zero()
    with pytest.raises(CompositionError):
        graded_trace(FormEndomorphism.zero(N, s, Slot("E", 1, False, 3)))


@given(st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_trace_commutation(seed):
    rng = random.Random(seed)
    a, b = random_slot(rng, "A"), random_slot(rng, "B")
    alpha, beta = random_map(rng, b, a), random_map(rng, a, b)
    sign = (-1) ** ((alpha.deg * beta.deg - alpha.deg_e * beta.deg_e) % 2)
    assert graded_trace(compose(alpha, beta)) == graded_trace(compose(beta, alpha)).scale(sign)


def test_D_of_constant_matrix_vanishes():
    s = Slot("E", 0, False, 2)
    c = FormEndomorphism(N, s, s, 0, {(0, 1): DifferentialForm.function(Polynomial.constant(N, 5))})
    assert connection_D(c).is_zero()
    assert connection_D(c).form_degree == 1


@given(st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_leibniz(seed):
    rng = random.Random(seed)
    a, b, c = (random_slot(rng, s) for s in "ABC")
    beta, alpha = random_map(rng, a, b, q=rng.randint(0, 1)), random_map(rng, b, c, q=rng.randint(0, 1))
    sign = (-1) ** (alpha.deg % 2)
    assert connection_D(compose(alpha, beta)) == compose(connection_D(alpha), beta) + compose(alpha, connection_D(beta)).scale(sign)


def _commutator_D(alpha):
    """D_E alpha - (-1)^deg alpha alpha D_E applied to a section, D_E = d."""
    def apply(xi, q):
        first = [exterior_d(w) for w in section_action(alpha, xi, q)]
        second = section_action(alpha, [exterior_d(w) for w in xi], q + 1)
        sign = -1 if alpha.deg % 2 else 1
        return [x - y.scale(sign) for x, y in zip(first, second)]
    return apply


@given(st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_entrywise_d_is_the_commutator_connection(seed):
    rng = random.Random(seed)
    a, b = random_slot(rng, "A"), random_slot(rng, "B")
    alpha = random_map(rng, a, b, q=rng.randint(0, 1))
    q = rng.randint(0, 1)
    xi = [DifferentialForm(N, {tuple(range(q)): Polynomial(N, {(1, rng.randint(0, 2), 0): 1})}) for _ in range(a.rank)]
    assert section_action(connection_D(alpha), xi, q) == _commutator_D(alpha)(xi, q)


def test_phi_D_phi_commutes_in_a_complex():
    K = koszul([(2, 0, 0), (1, 1, 0), (0, 0, 3)])
    for m in range(1, K.length):
        lhs = compose(phi_form(K, m), connection_D(phi_form(K, m + 1)))
        rhs = compose(connection_D(phi_form(K, m)), phi_form(K, m + 1))
        assert lhs == rhs


# -- the alternating D-phi identity ---------------------------------------------------------


def test_dal_zero_differentials():
    mods = [FreeModule(k, ((k,),)) for k in range(3)]
    diffs = [GradedMatrix.zero(mods[k], mods[k - 1]) for k in (1, 2)]
    assert dal_identity_check(Complex(1, mods, diffs), 1, 2)


def test_dal_koszul_of_variables():
    assert dal_identity_check(koszul([(1, 0, 0), (0, 1, 0), (0, 0, 1)]), 1, 3)


def test_dal_taylor_double_point():
    T = taylor_resolution(MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)]))
    for l in range(1, T.length):
        for k in range(l + 1, T.length + 1):
            assert dal_identity_check(T, l, k)


# -- epsilon and tilde ----------------------------------------------------------------------


def test_epsilon_with_degree_zero_map():
    a, b = Slot("E", 1, False, 2), Slot("E", 0, False, 1)
    x = DifferentialForm.function(Polynomial.variable(N, 0))
    gamma = FormEndomorphism(N, a, b, 0, {(0, 0): x, (0, 1): one()})
    assert tilde_and_epsilon(gamma, "left") == tilde_and_epsilon(gamma, "right")


def test_epsilon_with_one_form():
    a, b = Slot("E", 1, False, 1), Slot("E", 0, False, 1)
    alpha = FormEndomorphism(N, a, b, 1, {(0, 0): dz(2)})
    assert tilde_and_epsilon(alpha, "left") == -tilde_and_epsilon(alpha, "right")


def test_epsilon_inverse():
    s = Slot("E", 2, False, 3)
    assert compose(epsilon_inv(N, s.flipped()), epsilon(N, s)) == FormEndomorphism.identity(N, s)
    assert compose(epsilon(N, s), epsilon_inv(N, s.flipped())) == FormEndomorphism.identity(N, s.flipped())


def test_tilde_flips_parity_only():
    s, t = Slot("E", 1, False, 1), Slot("E", 0, False, 1)
    alpha = FormEndomorphism(N, s, t, 1, {(0, 0): dz(0)})
    assert tilde(alpha).deg_e == alpha.deg_e
    assert tilde(tilde(alpha)) == alpha


# -- the decomposition identity -------------------------------------------------------------


def test_decomposition_with_identity_map():
    K = koszul([(2, 0), (1, 1), (0, 2)])
    b = identity_map(K)
    res = sniken_decomposition(K, K, b, 0, 2, names=("E", "E"))
    assert res.verified
    assert res.delta.is_zero() and res.alpha.is_zero() and res.beta.is_zero()
    expected = compose(connection_D(phi_form(K, 1)), connection_D(phi_form(K, 2)))
    assert res.gamma == expected


def test_decomposition_p_equals_one():
    K = koszul([(1, 0), (0, 1)])
    T = taylor_resolution(MonomialIdeal(2, [(1, 0), (0, 1)]))
    b = lift_morphism(GradedMatrix.identity(K.module(0), T.module(0)), K, T)
    for l in (0, 1):
        assert sniken_decomposition(K, T, b, l, 1).verified


def test_decomposition_koszul_to_taylor():
    f = [Term.of(1, (2, 0)), Term.of(1, (0, 1))]
    K = koszul(f)
    T = taylor_resolution(MonomialIdeal(2, [(2, 0), (0, 1)]))
    b = lift_morphism(GradedMatrix.identity(K.module(0), T.module(0)), K, T)
    for l, p in [(0, 1), (0, 2), (1, 1)]:
        assert sniken_decomposition(K, T, b, l, p).verified


def test_decomposition_with_nonconstant_lift():
    # Koszul of (x^2, x y, y^2) maps to the Taylor resolution of the same ideal
    # with coefficients; the lift has non-identity blocks
    K = koszul([Term.of(2, (2, 0)), Term.of(-1, (1, 1)), Term.of(Fraction(1, 3), (0, 2))])
    T = taylor_resolution(MonomialIdeal(2, [(2, 0), (1, 1), (0, 2)]))
    b = lift_morphism(GradedMatrix.identity(K.module(0), T.module(0)), K, T)
    assert b.commutes()
    for l in range(0, 3):
        for p in range(1, 4 - l):
            assert sniken_decomposition(K, T, b, l, p).verified


def test_decomposition_rejects_non_chain_map():
    K = koszul([(1, 0), (0, 1)])
    bad = ChainMap(K, K, {1: GradedMatrix.identity(K.module(1))})
    with pytest.raises(ContractViolation):
        sniken_decomposition(K, K, bad, 0, 1)
