"""Text grammar for monomials and terms: ``3/2*x1^2*x2``, ``z^3``, ``x*y``.

Variables are either indexed (``x1, x2, ...`` with one shared prefix; n is
the largest index) or single letters, ordered alphabetically with w
placed after z, unless ``names`` declares the order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence, Tuple

from .monomial import MonomialIdeal
from .poly import Term

# alphabetical, but w after z so that x, y, z, w keep their usual order
_LETTER_ORDER = "abcdefghijklmnopqrstuvxyzwABCDEFGHIJKLMNOPQRSTUVXYZW"
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z]+\d*)|(?P<op>[*^,+-]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _tokens(s: str):
    pos = 0
    out = []
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos == len(s):
            break
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {s[pos]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


def _split_terms(s: str) -> List[Tuple[int, list]]:
    """Comma-separated list of products -> per item (offset, tokens)."""
    if not s.strip():
        raise ParseError("empty expression", 0)
    items: List[Tuple[int, list]] = []
    current: list = []
    start = 0
    for tok in _tokens(s):
        if tok[0] == "op" and tok[1] == ",":
            if not current:
                raise ParseError("empty item", tok[2])
            items.append((start, current))
            current = []
            start = tok[2] + 1
        else:
            current.append(tok)
    if not current:
        raise ParseError("empty item", len(s))
    items.append((start, current))
    return items


def _variable_names(items, names: Sequence[str] | None) -> List[str]:
    seen: List[str] = []
    for _, toks in items:
        for kind, value, _ in toks:
            if kind == "var" and value not in seen:
                seen.append(value)
    if names is not None:
        names = list(names)
        for v in seen:
            if v not in names:
                raise ParseError(f"undeclared variable {v!r}", 0)
        return names
    indexed = [re.fullmatch(r"([A-Za-z]+)(\d+)", v) for v in seen]
    if seen and all(indexed) and len({m.group(1) for m in indexed}) == 1:
        prefix = indexed[0].group(1)
        n = max(int(m.group(2)) for m in indexed)
        if min(int(m.group(2)) for m in indexed) < 1:
            raise ParseError("variable indices start at 1", 0)
        return [f"{prefix}{i}" for i in range(1, n + 1)]
    for v in seen:
        if len(v) != 1:
            raise ParseError(f"mixing indexed and single-letter variables ({v!r})", 0)
    return sorted(seen, key=_LETTER_ORDER.index)


def _parse_product(toks, names: List[str]) -> Term:
    exps = [0] * len(names)
    coeff = Fraction(1)
    sign = 1
    i = 0
    if toks and toks[0][0] == "op" and toks[0][1] in "+-":
        sign = -1 if toks[0][1] == "-" else 1
        i = 1
    expect_factor = True
    while i < len(toks):
        kind, value, pos = toks[i]
        if expect_factor:
            if kind == "num":
                coeff *= Fraction(value)
            elif kind == "var":
                power = 1
                if i + 1 < len(toks) and toks[i + 1][1] == "^":
                    if i + 2 >= len(toks) or toks[i + 2][0] != "num" or "/" in toks[i + 2][1]:
                        raise ParseError("exponent must be a non-negative integer", toks[i + 1][2])
                    power = int(toks[i + 2][1])
                    i += 2
                exps[names.index(value)] += power
            else:
                raise ParseError(f"unexpected {value!r}", pos)
            expect_factor = False
        else:
            if kind == "op" and value == "*":
                expect_factor = True
            elif kind == "var":  # implicit product such as 2z1^3
                expect_factor = True
                continue
            else:
                raise ParseError(f"unexpected {value!r}", pos)
        i += 1
    if expect_factor:
        raise ParseError("dangling operator", toks[-1][2] if toks else 0)
    return Term.of(sign * coeff, tuple(exps))


def parse_term_list(s: str, names: Sequence[str] | None = None) -> Tuple[List[Term], List[str]]:
    items = _split_terms(s)
    names = _variable_names(items, names)
    if not names:
        raise ParseError("no variables", 0)
    return [_parse_product(toks, names) for _, toks in items], names


def parse_ideal_expr(s: str, names: Sequence[str] | None = None) -> Tuple[MonomialIdeal, List[str]]:
    """Monomial ideal from "x1^2, x1*x2, x2^2"; coefficients other than 1 are rejected."""
    terms, names = parse_term_list(s, names)
    for (offset, _), t in zip(_split_terms(s), terms):
        if t.coefficient != 1:
            raise ParseError("monomial generators take no coefficient", offset)
    return MonomialIdeal(len(names), [t.exponents for t in terms]), names


def parse_names(s: str | None) -> List[str] | None:
    if s is None:
        return None
    names = [v.strip() for v in s.split(",") if v.strip()]
    if not names:
        raise ParseError("empty variable list", 0)
    return names
