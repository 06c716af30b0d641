"""Command-line front end.

Exit status: 0 success, 2 parse/usage error, 3 precondition violated,
4 a verification reported FAIL.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Sequence

from . import builders, homology, monomial, residue
from .checks import run_all
from .homology import Cycle
from .monomial import PrimeSupport
from .parsing import ParseError, parse_ideal_expr, parse_names, parse_term_list
from .poly import DimensionError, default_names
from .supercomplex import ChainMap, Complex, CompositionError, ContractViolation, matrix_from_entries
from .verify import verify_signs, verify_sniken

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_FAIL = 4

PRECONDITION_ERRORS = (
    monomial.DomainError,
    monomial.ConsistencyError,
    ContractViolation,
    CompositionError,
    DimensionError,
    builders.ResourceError,
    builders.ResolutionDefectError,
    ArithmeticError,
)


class Fail(Exception):
    """A verification command found a counterexample."""


def _emit(args, text_lines: Sequence[str], payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _prime_str(P: PrimeSupport, names) -> str:
    return "(" + ", ".join(names[i] for i in P.variables) + ")"


def _monomial_str(e, names) -> str:
    parts = [names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a]
    return "*".join(parts) or "1"


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}", 0) from exc


def _load_complex(path: str) -> Complex:
    data = _load_json(path)
    try:
        return Complex.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ContractViolation):
            raise
        raise ParseError(f"malformed complex: {exc}", 0) from exc


def _ideal(args):
    return parse_ideal_expr(args.ideal, parse_names(args.vars))


def _tuple(s: str, args):
    return parse_term_list(s, parse_names(args.vars))


def _cycle_lines(c: Cycle, names, codim: int | None) -> List[str]:
    if codim is not None:
        c = c.codim_part(codim)
    return ["  " + line for line in c.lines(names)]


# -- commands ---------------------------------------------------------------------


def cmd_cycle(args) -> int:
    if args.koszul:
        terms, names = _tuple(args.koszul, args)
        E = builders.koszul(terms)
    elif args.ideal:
        ideal, names = _ideal(args)
        E = builders.taylor_resolution(ideal)
    elif args.complex:
        E = _load_complex(args.complex)
        names = parse_names(args.vars) or default_names(E.n)
    else:
        raise ParseError("one of --koszul, --ideal, --complex is required", 0)
    levels = homology.level_cycles(E)
    total = homology.complex_cycle(E)
    restricted = homology.restricted_cycle(E)
    lines = []
    for l, c in levels.items():
        lines.append(f"H_{l}:")
        lines += _cycle_lines(c, names, args.codim)
    lines.append("total:")
    lines += _cycle_lines(total, names, args.codim)
    lines.append("restricted to components of the support:")
    lines += _cycle_lines(restricted, names, args.codim)
    payload = {
        "variables": names,
        "levels": {str(l): c.to_json() for l, c in levels.items()},
        "total": total.to_json(),
        "restricted": restricted.to_json(),
    }
    _emit(args, lines, payload)
    return 0


def cmd_mult(args) -> int:
    ideal, names = _ideal(args)
    if args.prime:
        wanted = parse_names(args.prime)
        unknown = [v for v in wanted if v not in names]
        if unknown:
            raise ParseError(f"unknown variable {unknown[0]!r} in --prime", 0)
        prime = PrimeSupport(tuple(names.index(v) for v in wanted))
    else:
        prime = PrimeSupport(ideal.support_variables())
    hs = monomial.hilbert_samuel_multiplicity(ideal)
    geo = monomial.geometric_multiplicity(ideal, prime)
    vol = monomial.newton_covolume(ideal.restrict(ideal.support_variables()).generators)
    _emit(args, [f"hilbert_samuel: {hs}, geometric: {geo}"],
          {"hilbert_samuel": hs, "geometric": geo, "newton_covolume": vol,
           "prime": [names[i] for i in prime.variables]})
    return 0


def cmd_filtration(args) -> int:
    ideal, names = _ideal(args)
    f = monomial.prime_filtration(ideal)
    ok = monomial.check_filtration(f)
    lines = [f"{i}: m = {_monomial_str(m, names)}, P = {_prime_str(P, names)}" for i, (m, P) in enumerate(f.steps, 1)]
    lines.append(f"replay: {'PASS' if ok else 'FAIL'}")
    _emit(args, lines, {
        "variables": names,
        "steps": [{"witness": list(m), "prime": list(P.variables)} for m, P in f.steps],
        "replay": ok,
    })
    if not ok:
        raise Fail()
    return 0


def _complex_lines(E: Complex) -> List[str]:
    lines = [f"ranks: {[m.rank for m in E.modules]}"]
    for k in range(1, E.length + 1):
        lines.append(f"phi_{k}: {len(E.phi(k).entries)} nonzero entries")
    return lines


def cmd_koszul(args) -> int:
    terms, _ = _tuple(args.tuple, args)
    E = builders.koszul(terms)
    _emit(args, _complex_lines(E), E.to_json())
    return 0


def cmd_taylor(args) -> int:
    ideal, _ = _ideal(args)
    E = builders.taylor_resolution(ideal)
    _emit(args, _complex_lines(E), E.to_json())
    return 0


def _step_map(args):
    ideal, _ = _ideal(args)
    steps = list(monomial.prime_filtration(ideal).steps)
    if not 1 <= args.step <= len(steps):
        raise monomial.DomainError(f"step must lie in 1..{len(steps)}")
    J = ideal
    for m, _ in steps[: args.step - 1]:
        J = J.add_monomial(m)
    m, P = steps[args.step - 1]
    return builders.filtration_step_resolutions(J, m, P.variables)


def cmd_cone(args) -> int:
    if args.complex:
        data = _load_json(args.complex)
        try:
            L, K = Complex.from_json(data["source"]), Complex.from_json(data["target"])
            c = ChainMap.from_json(data["chain_map"], L, K)
        except KeyError as exc:
            raise ParseError(f"missing key {exc}", 0) from exc
    elif args.ideal:
        c = _step_map(args).a
    else:
        raise ParseError("one of --complex, --ideal is required", 0)
    mc = builders.mapping_cone(c)
    _emit(args, _complex_lines(mc.cone),
          {"cone": mc.cone.to_json(), "theta": mc.theta.to_json(), "vartheta": mc.vartheta.to_json()})
    return 0


def cmd_lift(args) -> int:
    if args.complex:
        data = _load_json(args.complex)
        try:
            F, E = Complex.from_json(data["source"]), Complex.from_json(data["target"])
            alpha = matrix_from_entries(data["alpha"]["entries"], F.module(0), E.module(0))
        except KeyError as exc:
            raise ParseError(f"missing key {exc}", 0) from exc
        a = builders.lift_morphism(alpha, F, E)
    elif args.ideal:
        a = _step_map(args).a
    else:
        raise ParseError("one of --complex, --ideal is required", 0)
    lines = [f"level {k}: {len(b.entries)} nonzero entries" for k, b in sorted(a.blocks.items())]
    lines.append(f"commutes: {'PASS' if a.commutes() else 'FAIL'}")
    _emit(args, lines, {"chain_map": a.to_json()})
    return 0


def cmd_bigdiagram(args) -> int:
    if args.koszul:
        terms, _ = _tuple(args.koszul, args)
        E = builders.koszul(terms)
    elif args.complex:
        E = _load_complex(args.complex)
    else:
        raise ParseError("one of --koszul, --complex is required", 0)
    k = args.level
    if not homology.is_exact_above(E, k):
        raise monomial.DomainError(f"homology above level {k} does not vanish")
    d = builders.big_diagram(E, k)
    ok = homology.rows_homology_check(d)
    lines = [
        f"F ranks: {[m.rank for m in d.F.modules]}",
        f"E ranks: {[m.rank for m in d.E.modules]}",
        f"G ranks: {[m.rank for m in d.G.modules]}",
        f"rows homology: {'PASS' if ok else 'FAIL'}",
    ]
    _emit(args, lines, {"F": d.F.to_json(), "G": d.G.to_json(), "a": d.a.to_json(), "b": d.b.to_json(),
                        "rows_homology": ok})
    if not ok:
        raise Fail()
    return 0


def cmd_verify_pl(args) -> int:
    terms, _ = _tuple(args.tuple, args)
    r = residue.pl_multiplicities(terms)
    ok = residue.pl_verify(terms)
    lines = [
        f"residue functional: {r['functional_weight']}",
        f"ideal length: {r['ideal_length']}",
        f"koszul H_0: {r['koszul_h0']}",
        "PASS" if ok else "FAIL",
    ]
    _emit(args, lines, {
        "residue_functional": str(r["functional_weight"]),
        "ideal_length": r["ideal_length"],
        "koszul_h0": r["koszul_h0"],
        "pass": ok,
    })
    if not ok:
        raise Fail()
    return 0


def cmd_verify_signs(args) -> int:
    laws = verify_signs(args.seed, args.trials)
    passed, total, degenerate = verify_sniken(args.seed, args.maps)
    ok = all(p == t for p, t in laws.values()) and passed == total
    lines = [f"{name}: {p}/{t}" for name, (p, t) in laws.items()]
    lines.append(f"decomposition over lifted maps: {passed}/{total}")
    lines.append("PASS" if ok else "FAIL")
    _emit(args, lines, {"laws": {k: list(v) for k, v in laws.items()},
                        "decomposition": [passed, total, degenerate], "pass": ok})
    if not ok:
        raise Fail()
    return 0


def cmd_report(args) -> int:
    results = run_all()
    width = max(len(r.label) for r in results)
    lines = [f"{r.label.ljust(width)}  {'PASS' if r.passed else 'FAIL'}  {r.detail}" for r in results]
    _emit(args, lines, [{"check": r.label, "pass": r.passed, "detail": r.detail} for r in results])
    if not all(r.passed for r in results):
        raise Fail()
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--vars", help="declare variable order, e.g. \"x,y,z,w\"")

    p = argparse.ArgumentParser(prog="cyclekit", description="Cycles, multiplicities and sign checks for monomial complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cycle", parents=[common], help="per-level and total cycles of a complex")
    s.add_argument("--koszul", help="Koszul complex of a term list")
    s.add_argument("--ideal", help="Taylor resolution of O/I")
    s.add_argument("--complex", help="path to a complex in JSON")
    s.add_argument("--codim", type=int)
    s.set_defaults(func=cmd_cycle)

    s = sub.add_parser("mult", parents=[common], help="Hilbert-Samuel and geometric multiplicity")
    s.add_argument("--ideal", required=True)
    s.add_argument("--prime", help="variables of the prime, e.g. \"x,y\"")
    s.set_defaults(func=cmd_mult)

    s = sub.add_parser("filtration", parents=[common], help="prime filtration of O/I")
    s.add_argument("--ideal", required=True)
    s.set_defaults(func=cmd_filtration)

    s = sub.add_parser("koszul", parents=[common], help="build a Koszul complex")
    s.add_argument("--tuple", required=True)
    s.set_defaults(func=cmd_koszul)

    s = sub.add_parser("taylor", parents=[common], help="build a Taylor resolution")
    s.add_argument("--ideal", required=True)
    s.set_defaults(func=cmd_taylor)

    for name, func, text in (("cone", cmd_cone, "mapping cone of a chain map"),
                             ("lift", cmd_lift, "lift a map of cokernels to a chain map")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--complex", help="JSON with source, target and the map")
        s.add_argument("--ideal", help="use a prime-filtration step of O/I instead")
        s.add_argument("--step", type=int, default=1)
        s.set_defaults(func=func)

    s = sub.add_parser("bigdiagram", parents=[common], help="three-row diagram at level k")
    s.add_argument("--koszul")
    s.add_argument("--complex")
    s.add_argument("--level", type=int, required=True)
    s.set_defaults(func=cmd_bigdiagram)

    v = sub.add_parser("verify", help="verification suites")
    vsub = v.add_subparsers(dest="suite", required=True)
    s = vsub.add_parser("pl", parents=[common], help="three-way multiplicity agreement")
    s.add_argument("--tuple", required=True)
    s.set_defaults(func=cmd_verify_pl)
    s = vsub.add_parser("signs", parents=[common], help="randomized sign-law suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--maps", type=int, default=20)
    s.set_defaults(func=cmd_verify_signs)

    s = sub.add_parser("report", parents=[common], help="run every end-to-end check")
    s.set_defaults(func=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PRECONDITION_ERRORS as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Fail:
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
