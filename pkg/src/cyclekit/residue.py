"""Coleff-Herrera products for monomial complete intersections, acting on polynomial jets.

For f_i = c_i z_{s(i)}^{a_i} with distinct variables, the current
dbar(1/f_p) ^ ... ^ dbar(1/f_1) ^ df_1 ^ ... ^ df_p splits into one-variable
factors dbar(1/f_i) ^ df_i.  Each factor is a (1, 1)-current, hence even, so
the reordering is sign-free.  Up to 2 pi i, dbar(1/(c z^a)) ^ dz sends psi to
(1/c) times the z^(a-1) Taylor coefficient of psi, and df = c a z^(a-1) dz.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial, prod
from typing import Dict, Sequence, Tuple

from .builders import as_term, koszul, koszul_D_contraction
from .homology import module_cycle
from .monomial import DomainError, MonomialIdeal, PrimeSupport, geometric_multiplicity
from .poly import DifferentialForm, Exponent, Polynomial, d_function, wedge
from .supercomplex import FormEndomorphism


@dataclass
class JetFunctional:
    """psi -> sum_beta c_beta (d^beta psi / beta!)(0)."""

    support_codim: int
    coefficients: Dict[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.coefficients = {tuple(b): Fraction(c) for b, c in self.coefficients.items() if c}

    @classmethod
    def delta(cls, p: int, weight=1) -> "JetFunctional":
        return cls(p, {(0,) * p: Fraction(weight)})

    def apply(self, psi: Polynomial) -> Fraction:
        return sum((c * psi.coefficient(b) for b, c in self.coefficients.items()), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, JetFunctional):
            return NotImplemented
        return self.support_codim == other.support_codim and self.coefficients == other.coefficients


def _shape(f: Sequence) -> Tuple[int, list]:
    """(n, [(variable, exponent, coefficient)]) for a monomial complete intersection."""
    terms = [as_term(t) for t in f]
    if not terms:
        raise DomainError("empty tuple")
    n = terms[0].n
    out = []
    for t in terms:
        support = [i for i, a in enumerate(t.exponents) if a]
        if len(support) != 1 or not t.coefficient:
            raise DomainError(f"{t} is not of the form c z_i^a with c != 0, a >= 1")
        i = support[0]
        out.append((i, t.exponents[i], t.coefficient))
    if len({v for v, _, _ in out}) != len(out):
        raise DomainError("repeated variable: not a complete intersection of the supported shape")
    return n, out


def _residue_factor(a: int, c: Fraction, k: int) -> Fraction:
    """(1/2 pi i) <dbar(1/(c z^a)) ^ dz, z^k>."""
    return Fraction(1) / c if k == a - 1 else Fraction(0)


def ch_product_functional(f: Sequence) -> JetFunctional:
    """The functional of dbar(1/f_p)^...^dbar(1/f_1)^df_1^...^df_p on the active variables."""
    n, shape = _shape(f)
    p = len(shape)
    # df_i = c_i a_i z^(a_i - 1) dz, so the factor tests z^(a_i - 1) * z^beta_i
    coeffs: Dict[Exponent, Fraction] = {}
    for beta in product(*(range(a) for _, a, _ in shape)):
        value = Fraction(1)
        for (_, a, c), bi in zip(shape, beta):
            value *= c * a * _residue_factor(a, c, a - 1 + bi)
            if not value:
                break
        if value:
            coeffs[beta] = value
    return JetFunctional(p, coeffs)


def pl_multiplicities(f: Sequence) -> Dict[str, object]:
    """The three independent multiplicity computations for a monomial complete intersection."""
    n, shape = _shape(f)
    p = len(shape)
    if p != n:
        raise DomainError("point support needs one function per variable")
    expected = prod(a for _, a, _ in shape)
    functional = ch_product_functional(f)
    ideal = MonomialIdeal(n, [tuple(a if j == i else 0 for j in range(n)) for i, a, _ in shape])
    origin = PrimeSupport(tuple(range(n)))
    geometric = geometric_multiplicity(ideal, origin)
    h0 = module_cycle(koszul(f), 0)
    return {
        "expected": expected,
        "functional": functional,
        "functional_weight": functional.coefficients.get((0,) * p, Fraction(0)) if len(functional.coefficients) == 1 else None,
        "ideal_length": geometric,
        "koszul_h0": h0.multiplicity(origin) if set(h0.components) == {origin} else None,
    }


def pl_verify(f: Sequence) -> bool:
    r = pl_multiplicities(f)
    p = len(f)
    return (
        r["functional"] == JetFunctional.delta(p, r["expected"])
        and r["ideal_length"] == r["expected"]
        and r["koszul_h0"] == r["expected"]
    )


def disputation_consistency(f: Sequence) -> bool:
    """D phi_1 ... D phi_p on Koszul(f) equals p! df_1 ^ ... ^ df_p on the rank-one top block."""
    terms = [as_term(t) for t in f]
    n = terms[0].n
    p = len(terms)
    if p != n:
        raise DomainError("need p = n")
    K = koszul(terms)
    lhs = koszul_D_contraction(K, p)
    form = DifferentialForm.function(Polynomial.constant(n, factorial(p)))
    for t in terms:
        form = wedge(form, d_function(t.to_polynomial()))
    rhs = FormEndomorphism(n, lhs.source, lhs.target, p, {(0, 0): form})
    return lhs == rhs
