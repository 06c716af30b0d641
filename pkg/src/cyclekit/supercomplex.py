"""Multigraded complexes of free modules and the sign calculus on form-valued maps.

A ``GradedMatrix`` is a map between free modules whose basis elements carry
multidegrees; every entry is a single term c * x^(deg source - deg target),
so only the coefficient is stored.  ``FormEndomorphism`` is a matrix of
holomorphic forms between two *slots* (a level of a named complex, possibly
with reversed parity); composition follows the rule

    (w (x) g)(w' (x) g') = (-1)^(deg_e g * deg_f w') w ^ w' (x) g g'.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .poly import (
    DifferentialForm,
    Exponent,
    Polynomial,
    Term,
    as_fraction,
    exterior_d,
    wedge,
)


class CompositionError(ValueError):
    """Operands of a composition do not line up."""


class ContractViolation(ValueError):
    """A structural precondition (chain map, complex) does not hold."""


def _leq(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class FreeModule:
    level: int
    generators: Tuple[Exponent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(int(a) for a in g) for g in self.generators))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def at_level(self, level: int) -> "FreeModule":
        return FreeModule(level, self.generators)


class GradedMatrix:
    """Degree-zero map between multigraded free modules."""

    __slots__ = ("source", "target", "_entries")

    def __init__(self, source: FreeModule, target: FreeModule, entries: Mapping[Tuple[int, int], object] = ()):
        self.source = source
        self.target = target
        clean: Dict[Tuple[int, int], Fraction] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), v in items:
            v = as_fraction(v)
            if not v:
                continue
            if not (0 <= r < target.rank and 0 <= c < source.rank):
                raise IndexError(f"entry ({r}, {c}) outside a {target.rank}x{source.rank} matrix")
            if not _leq(target.generators[r], source.generators[c]):
                raise ContractViolation(
                    f"entry ({r}, {c}) is not multigraded: {target.generators[r]} does not divide "
                    f"{source.generators[c]}"
                )
            clean[(r, c)] = clean.get((r, c), 0) + v
        self._entries = {k: v for k, v in clean.items() if v}

    @classmethod
    def zero(cls, source: FreeModule, target: FreeModule) -> "GradedMatrix":
        return cls(source, target)

    @classmethod
    def identity(cls, module: FreeModule, target: FreeModule | None = None) -> "GradedMatrix":
        target = target or module
        return cls(module, target, {(i, i): 1 for i in range(module.rank)})

    @property
    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self._entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.target.rank, self.source.rank)

    def coefficient(self, r: int, c: int) -> Fraction:
        return self._entries.get((r, c), Fraction(0))

    def exponent(self, r: int, c: int) -> Exponent:
        return tuple(a - b for a, b in zip(self.source.generators[c], self.target.generators[r]))

    def term(self, r: int, c: int) -> Term:
        return Term.of(self.coefficient(r, c), self.exponent(r, c))

    def polynomial(self, r: int, c: int, n: int) -> Polynomial:
        v = self._entries.get((r, c))
        if not v:
            return Polynomial.zero(n)
        return Polynomial(n, {self.exponent(r, c): v})

    def is_zero(self) -> bool:
        return not self._entries

    def _same_shape(self, other: "GradedMatrix"):
        if self.source.generators != other.source.generators or self.target.generators != other.target.generators:
            raise CompositionError("matrices act between different modules")

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        self._same_shape(other)
        out = dict(self._entries)
        for k, v in other._entries.items():
            out[k] = out.get(k, 0) + v
        return GradedMatrix(self.source, self.target, out)

    def __neg__(self) -> "GradedMatrix":
        return GradedMatrix(self.source, self.target, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GradedMatrix":
        c = as_fraction(c)
        return GradedMatrix(self.source, self.target, {k: v * c for k, v in self._entries.items()})

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        """self after other."""
        if self.source.generators != other.target.generators:
            raise CompositionError("inner modules differ")
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (k, c), v in other._entries.items():
            by_row.setdefault(k, []).append((c, v))
        out: Dict[Tuple[int, int], Fraction] = {}
        for (r, k), a in self._entries.items():
            for c, b in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + a * b
        return GradedMatrix(other.source, self.target, out)

    def equal_entries(self, other: "GradedMatrix") -> bool:
        return self.shape == other.shape and self._entries == other._entries

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (
            self.source.generators == other.source.generators
            and self.target.generators == other.target.generators
            and self._entries == other._entries
        )

    __hash__ = None

    def transpose_blocks(self):
        return {(c, r): v for (r, c), v in self._entries.items()}

    def __repr__(self):
        return f"GradedMatrix({self.target.rank}x{self.source.rank}, {len(self._entries)} nonzero)"


def block_matrix(rows: Sequence[Sequence[Optional[GradedMatrix]]], sources: Sequence[FreeModule],
                 targets: Sequence[FreeModule], source_level: int, target_level: int) -> GradedMatrix:
    """Assemble a block matrix; ``None`` blocks are zero.

    ``sources``/``targets`` are the summands in order; the result acts
    between their direct sums (placed at the given levels).
    """
    src = FreeModule(source_level, tuple(g for m in sources for g in m.generators))
    tgt = FreeModule(target_level, tuple(g for m in targets for g in m.generators))
    entries: Dict[Tuple[int, int], Fraction] = {}
    roff = 0
    for i, row in enumerate(rows):
        coff = 0
        for j, blk in enumerate(row):
            if blk is not None:
                if blk.shape != (targets[i].rank, sources[j].rank):
                    raise CompositionError(f"block ({i}, {j}) has shape {blk.shape}")
                for (r, c), v in blk._entries.items():
                    entries[(roff + r, coff + c)] = v
            coff += sources[j].rank
        roff += targets[i].rank
    return GradedMatrix(src, tgt, entries)


def sub_block(m: GradedMatrix, rows: Sequence[int], cols: Sequence[int], source: FreeModule,
              target: FreeModule) -> GradedMatrix:
    rindex = {r: i for i, r in enumerate(rows)}
    cindex = {c: j for j, c in enumerate(cols)}
    out = {}
    for (r, c), v in m._entries.items():
        if r in rindex and c in cindex:
            out[(rindex[r], cindex[c])] = v
    return GradedMatrix(source, target, out)


class Complex:
    """Bounded complex 0 -> E_N -> ... -> E_0 -> 0 of multigraded free modules.

    ``differentials[k - 1]`` is phi_k : E_k -> E_{k-1}.  The complex is
    validated on construction: every phi is multigraded and phi_k phi_{k+1} = 0.
    """

    def __init__(self, n: int, modules: Sequence[FreeModule], differentials: Sequence[GradedMatrix],
                 parity_shift: bool = False, validate: bool = True):
        self.n = int(n)
        self.modules = tuple(m.at_level(k) for k, m in enumerate(modules))
        if len(differentials) != max(len(self.modules) - 1, 0):
            raise ContractViolation("need exactly one differential per positive level")
        diffs = []
        for k, d in enumerate(differentials, start=1):
            if d.source.generators != self.modules[k].generators or d.target.generators != self.modules[k - 1].generators:
                raise ContractViolation(f"differential {k} does not match the modules")
            diffs.append(GradedMatrix(self.modules[k], self.modules[k - 1], d.entries))
        self.differentials = tuple(diffs)
        self.parity_shift = bool(parity_shift)
        for m in self.modules:
            for g in m.generators:
                if len(g) != self.n:
                    raise ContractViolation(f"generator degree {g} does not have length {self.n}")
        self._cache: dict = {}
        if validate:
            for k in range(1, self.length):
                if not (self.phi(k) @ self.phi(k + 1)).is_zero():
                    raise ContractViolation(f"phi_{k} phi_{k + 1} != 0")

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def module(self, k: int) -> FreeModule:
        if 0 <= k < len(self.modules):
            return self.modules[k]
        return FreeModule(k, ())

    def rank(self, k: int) -> int:
        return self.module(k).rank

    def phi(self, k: int) -> GradedMatrix:
        if 1 <= k <= self.length:
            return self.differentials[k - 1]
        return GradedMatrix.zero(self.module(k), self.module(k - 1))

    def max_degrees(self) -> Exponent:
        """Componentwise max of all generator degrees."""
        out = [0] * self.n
        for m in self.modules:
            for g in m.generators:
                for i, a in enumerate(g):
                    if a > out[i]:
                        out[i] = a
        return tuple(out)

    def tilde(self) -> "Complex":
        return Complex(self.n, self.modules, self.differentials, not self.parity_shift, validate=False)

    def __repr__(self):
        ranks = ",".join(str(m.rank) for m in self.modules)
        return f"Complex(n={self.n}, ranks=[{ranks}])"

    def to_json(self):
        return {
            "n": self.n,
            "parity_shift": self.parity_shift,
            "levels": [{"generators": [list(g) for g in m.generators]} for m in self.modules],
            "differentials": [
                {"entries": [[r, c, str(v), list(d.exponent(r, c))] for (r, c), v in sorted(d.entries.items())]}
                for d in self.differentials
            ],
        }

    @classmethod
    def from_json(cls, data) -> "Complex":
        n = int(data["n"])
        modules = [FreeModule(k, tuple(tuple(g) for g in lvl["generators"])) for k, lvl in enumerate(data["levels"])]
        diffs = [matrix_from_entries(d["entries"], modules[k], modules[k - 1])
                 for k, d in enumerate(data.get("differentials", []), start=1)]
        return cls(n, modules, diffs, parity_shift=bool(data.get("parity_shift", False)))


def twist(E: Complex, shift: Sequence[int]) -> Complex:
    """Add a fixed multidegree to every basis element (E(-shift))."""
    shift = tuple(shift)
    mods = [FreeModule(m.level, tuple(tuple(a + s for a, s in zip(g, shift)) for g in m.generators)) for m in E.modules]
    diffs = [GradedMatrix(mods[k], mods[k - 1], E.phi(k).entries) for k in range(1, E.length + 1)]
    return Complex(E.n, mods, diffs, E.parity_shift, validate=False)


def shift_levels(E: Complex, s: int) -> Complex:
    """Move E up by ``s`` levels, padding with zero modules."""
    if s < 0:
        raise ValueError("only upward shifts are supported")
    mods = [FreeModule(k, ()) for k in range(s)] + [m.at_level(m.level + s) for m in E.modules]
    diffs = []
    for k in range(1, len(mods)):
        if k - s >= 1:
            d = E.phi(k - s)
            diffs.append(GradedMatrix(mods[k], mods[k - 1], d.entries))
        else:
            diffs.append(GradedMatrix.zero(mods[k], mods[k - 1]))
    return Complex(E.n, mods, diffs, validate=False)


def direct_sum(E: Complex, F: Complex) -> Complex:
    if E.n != F.n:
        raise ContractViolation("complexes over different rings")
    top = max(E.length, F.length)
    mods = [FreeModule(k, E.module(k).generators + F.module(k).generators) for k in range(top + 1)]
    diffs = []
    for k in range(1, top + 1):
        diffs.append(block_matrix([[E.phi(k), None], [None, F.phi(k)]],
                                  [E.module(k), F.module(k)], [E.module(k - 1), F.module(k - 1)], k, k - 1))
    return Complex(E.n, mods, diffs)


@dataclass
class ChainMap:
    """Per-level maps between two complexes.

    degree 0: block k maps source_k -> target_k and
        target.phi(k) @ b_k == b_{k-1} @ source.phi(k);
    degree -1: block k maps source_{k+1} -> target_k and
        target.phi(k) @ b_k == b_{k-1} @ source.phi(k+1).
    """

    source: Complex
    target: Complex
    blocks: Dict[int, GradedMatrix]
    degree: int = 0

    def block(self, k: int) -> GradedMatrix:
        if k in self.blocks:
            return self.blocks[k]
        return GradedMatrix.zero(self.source.module(k - self.degree), self.target.module(k))

    def levels(self) -> range:
        top = max(self.source.length - self.degree, self.target.length)
        return range(0, top + 1)

    def commutes(self) -> bool:
        for k in self.levels():
            lhs = self.target.phi(k) @ self.block(k)
            rhs = self.block(k - 1) @ self.source.phi(k - self.degree)
            if not lhs.equal_entries(rhs):
                return False
        return True

    @property
    def is_valid(self) -> bool:
        return self.commutes()

    def to_json(self):
        return {
            "degree": self.degree,
            "blocks": [
                {"level": k, "entries": [[r, c, str(v), list(b.exponent(r, c))] for (r, c), v in sorted(b.entries.items())]}
                for k, b in sorted(self.blocks.items())
            ],
        }

    @classmethod
    def from_json(cls, data, source: Complex, target: Complex) -> "ChainMap":
        degree = int(data.get("degree", 0))
        blocks = {}
        for blk in data["blocks"]:
            k = int(blk["level"])
            blocks[k] = matrix_from_entries(blk["entries"], source.module(k - degree), target.module(k))
        out = cls(source, target, blocks, degree)
        if not out.commutes():
            raise ContractViolation("the blocks do not commute with the differentials")
        return out


def matrix_from_entries(entries, source: FreeModule, target: FreeModule) -> GradedMatrix:
    """GradedMatrix from [[row, col, coeff, [exponents]], ...]; exponents are checked."""
    m = GradedMatrix.zero(source, target)
    out = {}
    for r, c, v, e in entries:
        if not (0 <= r < target.rank and 0 <= c < source.rank):
            raise ContractViolation(f"entry ({r}, {c}) outside a {target.rank}x{source.rank} matrix")
        if tuple(e) != m.exponent(r, c):
            raise ContractViolation(f"entry ({r}, {c}) has exponent {list(e)}, expected {list(m.exponent(r, c))}")
        out[(r, c)] = Fraction(v)
    return GradedMatrix(source, target, out)


def identity_map(E: Complex) -> ChainMap:
    return ChainMap(E, E, {k: GradedMatrix.identity(E.module(k)) for k in range(E.length + 1)})


# ---------------------------------------------------------------------------
# form-valued maps


class Slot(NamedTuple):
    """One level of a named complex; ``tilde`` reverses its parity."""

    name: str
    level: int
    tilde: bool
    rank: int

    @property
    def parity(self) -> int:
        return (self.level + int(self.tilde)) % 2

    def flipped(self) -> "Slot":
        return self._replace(tilde=not self.tilde)


def slot(E: Complex, k: int, name: str = "E") -> Slot:
    return Slot(name, k, E.parity_shift, E.rank(k))


class FormEndomorphism:
    """Matrix of forms of pure degree ``form_degree`` from ``source`` to ``target``."""

    __slots__ = ("n", "source", "target", "form_degree", "_entries")

    def __init__(self, n: int, source: Slot, target: Slot, form_degree: int,
                 entries: Mapping[Tuple[int, int], DifferentialForm] = ()):
        self.n = int(n)
        self.source = source
        self.target = target
        self.form_degree = int(form_degree)
        clean = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), w in items:
            if isinstance(w, Polynomial):
                w = DifferentialForm.function(w)
            if not w:
                continue
            if not (0 <= r < target.rank and 0 <= c < source.rank):
                raise IndexError(f"entry ({r}, {c}) outside a {target.rank}x{source.rank} matrix")
            if w.degree() != self.form_degree:
                raise ValueError(f"entry ({r}, {c}) has form degree {w.degree()}, expected {self.form_degree}")
            clean[(r, c)] = w
        self._entries = clean

    @property
    def entries(self) -> Dict[Tuple[int, int], DifferentialForm]:
        return dict(self._entries)

    @property
    def source_level(self) -> int:
        return self.source.level

    @property
    def target_level(self) -> int:
        return self.target.level

    @property
    def deg_e(self) -> int:
        return (self.target.level + int(self.target.tilde)) - (self.source.level + int(self.source.tilde))

    @property
    def deg_f(self) -> int:
        return self.form_degree

    @property
    def deg(self) -> int:
        return self.deg_e + self.deg_f

    def entry(self, r: int, c: int) -> DifferentialForm:
        return self._entries.get((r, c), DifferentialForm.zero(self.n))

    def is_zero(self) -> bool:
        return not self._entries

    def __add__(self, other: "FormEndomorphism") -> "FormEndomorphism":
        if (self.source, self.target) != (other.source, other.target):
            raise CompositionError("cannot add maps between different slots")
        if self.form_degree != other.form_degree and not (self.is_zero() or other.is_zero()):
            raise CompositionError("cannot add maps of different form degree")
        q = other.form_degree if self.is_zero() else self.form_degree
        out = dict(self._entries)
        for k, w in other._entries.items():
            out[k] = out[k] + w if k in out else w
        return FormEndomorphism(self.n, self.source, self.target, q, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FormEndomorphism":
        return FormEndomorphism(self.n, self.source, self.target, self.form_degree,
                                {k: w.scale(c) for k, w in self._entries.items()})

    def __eq__(self, other):
        if not isinstance(other, FormEndomorphism):
            return NotImplemented
        if (self.source, self.target) != (other.source, other.target):
            return False
        if self._entries != other._entries:
            return False
        return self.form_degree == other.form_degree or not self._entries

    __hash__ = None

    def __repr__(self):
        return (f"FormEndomorphism({self.source.name}{self.source.level}{'~' if self.source.tilde else ''} -> "
                f"{self.target.name}{self.target.level}{'~' if self.target.tilde else ''}, q={self.form_degree}, "
                f"{len(self._entries)} nonzero)")

    @classmethod
    def from_matrix(cls, m: GradedMatrix, n: int, source: Slot, target: Slot) -> "FormEndomorphism":
        return cls(n, source, target, 0, {(r, c): m.polynomial(r, c, n) for (r, c) in m.entries})

    @classmethod
    def identity(cls, n: int, s: Slot) -> "FormEndomorphism":
        one = DifferentialForm.function(Polynomial.constant(n, 1))
        return cls(n, s, s, 0, {(i, i): one for i in range(s.rank)})

    @classmethod
    def zero(cls, n: int, source: Slot, target: Slot, form_degree: int = 0) -> "FormEndomorphism":
        return cls(n, source, target, form_degree)


def compose(alpha: FormEndomorphism, beta: FormEndomorphism) -> FormEndomorphism:
    """alpha after beta, with sign (-1)^(deg_e alpha * deg_f beta)."""
    if beta.target != alpha.source:
        raise CompositionError(f"cannot compose: {beta.target} != {alpha.source}")
    if alpha.n != beta.n:
        raise CompositionError("forms over different rings")
    sign = -1 if (alpha.deg_e * beta.deg_f) % 2 else 1
    by_row: Dict[int, List[Tuple[int, DifferentialForm]]] = {}
    for (k, c), w in beta._entries.items():
        by_row.setdefault(k, []).append((c, w))
    out: Dict[Tuple[int, int], DifferentialForm] = {}
    for (r, k), a in alpha._entries.items():
        for c, b in by_row.get(k, ()):
            ab = wedge(a, b)
            if ab:
                out[(r, c)] = out[(r, c)] + ab if (r, c) in out else ab
    if sign < 0:
        out = {k: -w for k, w in out.items()}
    return FormEndomorphism(alpha.n, beta.source, alpha.target, alpha.form_degree + beta.form_degree, out)


def compose_all(factors: Sequence[FormEndomorphism]) -> FormEndomorphism:
    out = factors[-1]
    for f in reversed(factors[:-1]):
        out = compose(f, out)
    return out


def graded_trace(alpha: FormEndomorphism) -> DifferentialForm:
    if alpha.source != alpha.target:
        raise CompositionError("trace of a map between different slots")
    out = DifferentialForm.zero(alpha.n)
    for i in range(alpha.source.rank):
        out = out + alpha.entry(i, i)
    return out


def connection_D(alpha: FormEndomorphism) -> FormEndomorphism:
    """D alpha for the trivial connection: entrywise holomorphic d."""
    return FormEndomorphism(alpha.n, alpha.source, alpha.target, alpha.form_degree + 1,
                            {k: exterior_d(w) for k, w in alpha._entries.items()})


def tilde(alpha: FormEndomorphism) -> FormEndomorphism:
    return FormEndomorphism(alpha.n, alpha.source.flipped(), alpha.target.flipped(), alpha.form_degree, alpha._entries)


def epsilon(n: int, s: Slot) -> FormEndomorphism:
    """The odd identification E_k -> E~_k."""
    one = DifferentialForm.function(Polynomial.constant(n, 1))
    return FormEndomorphism(n, s, s.flipped(), 0, {(i, i): one for i in range(s.rank)})


def epsilon_inv(n: int, s: Slot) -> FormEndomorphism:
    """The inverse E~_k -> E_k of ``epsilon(n, s.flipped())``."""
    one = DifferentialForm.function(Polynomial.constant(n, 1))
    return FormEndomorphism(n, s, s.flipped(), 0, {(i, i): one for i in range(s.rank)})


def tilde_and_epsilon(alpha: FormEndomorphism, side: str) -> FormEndomorphism:
    """``left``: epsilon alpha.  ``right``: alpha~ epsilon.

    The two agree up to the sign (-1)^deg_f(alpha).
    """
    if side == "left":
        return compose(epsilon(alpha.n, alpha.target), alpha)
    if side == "right":
        return compose(tilde(alpha), epsilon(alpha.n, alpha.source))
    raise ValueError("side must be 'left' or 'right'")


# -- complexes as form-valued maps ------------------------------------------------


def phi_form(E: Complex, k: int, name: str = "E") -> FormEndomorphism:
    return FormEndomorphism.from_matrix(E.phi(k), E.n, slot(E, k, name), slot(E, k - 1, name))


def D_phi(E: Complex, k: int, name: str = "E") -> FormEndomorphism:
    return connection_D(phi_form(E, k, name))


def _product_or_identity(factors: List[FormEndomorphism], n: int, s: Slot) -> FormEndomorphism:
    return compose_all(factors) if factors else FormEndomorphism.identity(n, s)


def dal_identity_check(E: Complex, l: int, k: int, name: str = "E") -> bool:
    """D phi_l ... D phi_{k-1} phi_k == phi_l D phi_{l+1} ... D phi_k."""
    if not l < k:
        raise ValueError("need l < k")
    lhs = compose_all([D_phi(E, j, name) for j in range(l, k)] + [phi_form(E, k, name)])
    rhs = compose_all([phi_form(E, l, name)] + [D_phi(E, j, name) for j in range(l + 1, k + 1)])
    return lhs == rhs


@dataclass
class SnikenResult:
    delta: FormEndomorphism
    alpha: FormEndomorphism
    beta: FormEndomorphism
    gamma: FormEndomorphism
    lhs: FormEndomorphism
    verified: bool


def sniken_decomposition(E: Complex, G: Complex, b: ChainMap, l: int, p: int,
                         names: Tuple[str, str] = ("E", "G")) -> SnikenResult:
    """Split D eta_{l+1} ... D eta_{l+p} b_{l+p} as alpha_l + beta_l + gamma_l.

    With delta_j = sum_{i=j}^{j+p-1} D eta_{j+1}..D eta_i  D b_i  D phi_{i+1}..D phi_{j+p-1}:
    alpha_l = eta_{l+1} delta_{l+1}, beta_l = delta_l phi_{l+p},
    gamma_l = b_l D phi_{l+1} ... D phi_{l+p}.  Trivial connection on every level.
    """
    if b.degree != 0 or b.source is not E or b.target is not G:
        raise ContractViolation("b must be a degree-0 map E -> G")
    if not b.commutes():
        raise ContractViolation("b is not a chain map")
    if p < 1:
        raise ValueError("p must be positive")
    n = E.n
    en, gn = names

    def s_e(k):
        return slot(E, k, en)

    def s_g(k):
        return slot(G, k, gn)

    def phi(k):
        return phi_form(E, k, en)

    def eta(k):
        return phi_form(G, k, gn)

    def bb(k):
        return FormEndomorphism.from_matrix(b.block(k), n, s_e(k), s_g(k))

    def Dphi(k):
        return connection_D(phi(k))

    def Deta(k):
        return connection_D(eta(k))

    def delta(j):
        total = FormEndomorphism.zero(n, s_e(j + p - 1), s_g(j), p)
        for i in range(j, j + p):
            left = [Deta(t) for t in range(j + 1, i + 1)]
            right = [Dphi(t) for t in range(i + 1, j + p)]
            term = compose_all(left + [connection_D(bb(i))] + right)
            total = total + term
        return total

    d_l = delta(l)
    alpha = compose(eta(l + 1), delta(l + 1))
    beta = compose(d_l, phi(l + p))
    gamma = compose_all([bb(l)] + [Dphi(t) for t in range(l + 1, l + p + 1)])
    lhs = compose_all([Deta(t) for t in range(l + 1, l + p + 1)] + [bb(l + p)])
    return SnikenResult(d_l, alpha, beta, gamma, lhs, lhs == alpha + beta + gamma)
