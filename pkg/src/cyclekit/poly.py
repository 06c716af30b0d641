"""Sparse exact polynomials and holomorphic differential forms over Q.

Polynomials are maps from exponent tuples to nonzero ``Fraction`` values.
Forms are maps from strictly increasing index tuples (the ``dz`` factors)
to polynomials.  Both are immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Tuple

Exponent = Tuple[int, ...]


class DimensionError(ValueError):
    """Operands live in polynomial rings with different variable counts."""


def grlex_key(e: Exponent):
    return (sum(e), e)


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    return Fraction(c)


class Term(NamedTuple):
    """A single coefficient times monomial."""

    coefficient: Fraction
    exponents: Exponent

    @classmethod
    def of(cls, coefficient, exponents) -> "Term":
        c = as_fraction(coefficient)
        e = tuple(int(a) for a in exponents)
        if any(a < 0 for a in e):
            raise ValueError(f"negative exponent in {e}")
        if c == 0:
            e = (0,) * len(e)
        return cls(c, e)

    @property
    def n(self) -> int:
        return len(self.exponents)

    def to_polynomial(self) -> "Polynomial":
        return Polynomial(len(self.exponents), {self.exponents: self.coefficient})


class Polynomial:
    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | Iterable = ()):
        self.n = int(n)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: Dict[Exponent, Fraction] = {}
        for e, c in items:
            e = tuple(int(a) for a in e)
            if len(e) != self.n:
                raise DimensionError(f"exponent {e} does not have length {self.n}")
            if any(a < 0 for a in e):
                raise ValueError(f"negative exponent in {e}")
            c = as_fraction(c)
            if c:
                c = clean.get(e, 0) + c
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, exponents, coefficient=1) -> "Polynomial":
        e = tuple(exponents)
        return cls(len(e), {e: coefficient})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    # -- views ----------------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order."""
        for e in sorted(self._terms, key=grlex_key, reverse=True):
            yield e, self._terms[e]

    def coefficient(self, e: Exponent) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.n != other.n:
            raise DimensionError(f"ring sizes differ: {self.n} vs {other.n}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.n, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Polynomial(self.n, out)

    def restrict(self, keep: Tuple[int, ...]) -> "Polynomial":
        """Set every variable not listed in ``keep`` to 1."""
        out: Dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            k = tuple(e[i] for i in keep)
            out[k] = out.get(k, 0) + c
        return Polynomial(len(keep), out)

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.n}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def _monomial_str(e: Exponent, names) -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 1:
            parts.append(names[i])
        elif a > 1:
            parts.append(f"{names[i]}^{a}")
    return "*".join(parts)


def default_names(n: int):
    return [f"z{i + 1}" for i in range(n)]


def format_polynomial(p: Polynomial, names=None) -> str:
    names = names or default_names(p.n)
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.items():
        m = _monomial_str(e, names)
        if not m:
            s = str(c)
        elif c == 1:
            s = m
        elif c == -1:
            s = "-" + m
        else:
            s = f"{c}*{m}"
        out.append(s)
    return " + ".join(out).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# exterior forms


def _merge_sign(a: Tuple[int, ...], b: Tuple[int, ...]):
    """Sign and sorted union of dz_a ^ dz_b, or (0, None) if they overlap."""
    if set(a) & set(b):
        return 0, None
    # count inversions between the two increasing blocks
    inv = 0
    for x in a:
        for y in b:
            if y < x:
                inv += 1
    return (-1) ** inv, tuple(sorted(a + b))


class DifferentialForm:
    """A holomorphic form sum_I p_I dz_I with polynomial coefficients."""

    __slots__ = ("n", "_comp", "_hash")

    def __init__(self, n: int, components: Mapping[Tuple[int, ...], Polynomial] = ()):
        self.n = int(n)
        items = components.items() if isinstance(components, Mapping) else components
        comp: Dict[Tuple[int, ...], Polynomial] = {}
        for idx, p in items:
            idx = tuple(idx)
            if any(j < 0 or j >= self.n for j in idx):
                raise DimensionError(f"dz index out of range in {idx}")
            if len(set(idx)) != len(idx):
                continue
            order = sorted(range(len(idx)), key=lambda t: idx[t])
            sign = _perm_sign(order)
            key = tuple(idx[t] for t in order)
            if not isinstance(p, Polynomial):
                p = Polynomial.constant(self.n, p)
            if p.n != self.n:
                raise DimensionError("coefficient ring mismatch")
            acc = comp.get(key, Polynomial.zero(self.n)) + (p if sign > 0 else -p)
            if acc:
                comp[key] = acc
            else:
                comp.pop(key, None)
        self._comp = comp
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "DifferentialForm":
        return cls(n)

    @classmethod
    def function(cls, p: Polynomial) -> "DifferentialForm":
        return cls(p.n, {(): p})

    @classmethod
    def dz(cls, n: int, *indices: int) -> "DifferentialForm":
        return cls(n, {tuple(indices): Polynomial.constant(n, 1)})

    @property
    def components(self) -> Dict[Tuple[int, ...], Polynomial]:
        return dict(self._comp)

    def items(self):
        for k in sorted(self._comp, key=lambda t: (len(t), t)):
            yield k, self._comp[k]

    def degrees(self) -> set:
        return {len(k) for k in self._comp}

    def is_pure(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        """Form degree of a nonzero pure form; ``None`` for zero."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("form is not of pure degree")
        return next(iter(ds))

    def is_zero(self) -> bool:
        return not self._comp

    def __bool__(self):
        return bool(self._comp)

    def _check(self, other):
        if self.n != other.n:
            raise DimensionError(f"ring sizes differ: {self.n} vs {other.n}")

    def __add__(self, other: "DifferentialForm"):
        self._check(other)
        out = dict(self._comp)
        for k, p in other._comp.items():
            out[k] = out.get(k, Polynomial.zero(self.n)) + p
        return DifferentialForm(self.n, out)

    def __neg__(self):
        return DifferentialForm(self.n, {k: -p for k, p in self._comp.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DifferentialForm":
        if isinstance(c, Polynomial):
            return DifferentialForm(self.n, {k: p * c for k, p in self._comp.items()})
        c = as_fraction(c)
        return DifferentialForm(self.n, {k: p * c for k, p in self._comp.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self.n == other.n and self._comp == other._comp

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._comp.items())))
        return self._hash

    def __repr__(self):
        if not self._comp:
            return "DifferentialForm(0)"
        parts = []
        for k, p in self.items():
            dz = "^".join(f"dz{j + 1}" for j in k)
            parts.append(f"({p})" + (f" {dz}" if dz else ""))
        return "DifferentialForm(" + " + ".join(parts) + ")"


def _perm_sign(order) -> int:
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.n != b.n:
        raise DimensionError(f"ring sizes differ: {a.n} vs {b.n}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def wedge(omega: DifferentialForm, tau: DifferentialForm) -> DifferentialForm:
    omega._check(tau)
    out: Dict[Tuple[int, ...], Polynomial] = {}
    zero = Polynomial.zero(omega.n)
    for a, p in omega._comp.items():
        for b, q in tau._comp.items():
            sign, key = _merge_sign(a, b)
            if not sign:
                continue
            pq = p * q
            out[key] = out.get(key, zero) + (pq if sign > 0 else -pq)
    return DifferentialForm(omega.n, out)


def exterior_d(omega: DifferentialForm) -> DifferentialForm:
    """Holomorphic exterior derivative, d(p dz_I) = sum_j dp/dz_j dz_j ^ dz_I."""
    n = omega.n
    out = DifferentialForm.zero(n)
    for idx, p in omega._comp.items():
        for j in range(n):
            dp = p.derivative(j)
            if dp:
                out = out + wedge(DifferentialForm(n, {(j,): dp}), DifferentialForm.dz(n, *idx))
    return out


def d_function(p: Polynomial) -> DifferentialForm:
    return exterior_d(DifferentialForm.function(p))


def monomials_in_box(upper: Exponent) -> Iterator[Exponent]:
    """All exponent vectors e with 0 <= e <= upper, componentwise."""
    yield from _cartesian(*(range(u + 1) for u in upper))


# -- serialization ----------------------------------------------------------


def polynomial_to_json(p: Polynomial):
    return [[str(c), list(e)] for e, c in p.items()]


def polynomial_from_json(data, n: int | None = None) -> Polynomial:
    if not data:
        if n is None:
            raise ValueError("cannot infer ring size of an empty polynomial")
        return Polynomial.zero(n)
    terms = [(tuple(e), Fraction(c)) for c, e in data]
    size = len(terms[0][0]) if n is None else n
    return Polynomial(size, terms)


def form_to_json(w: DifferentialForm):
    return [[list(k), polynomial_to_json(p)] for k, p in w.items()]


def form_from_json(data, n: int) -> DifferentialForm:
    return DifferentialForm(n, {tuple(k): polynomial_from_json(p, n) for k, p in data})
