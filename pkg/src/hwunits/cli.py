"""Command-line entry point; every command prints a JSON report."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import sympy

from .coefficients import modulo
from .dihedral import DecompositionError, decompose_unitary, project_ring
from .group import BallCapExceeded, ball, format_element
from .lifting import DEFAULT_RADIUS_CAP, LiftError, lift_to_modulus, twisted_lift_probe
from .matrix import active_representation, det, rho_ring
from .ring import RingElement
from .sat import (
    BRUTE_FORCE_CAP,
    EncodingError,
    SearchSpec,
    SolverError,
    SpecError,
    default_solver_command,
    search,
    support_from_lines,
)
from .units import (
    murray_unit,
    murray_unit_as_printed,
    resolve_conventions,
    u57,
    u57_as_printed,
    u67,
    u67_as_printed,
    verify_unit_claims,
)

DISPLAYED_UNITS = {"u57": u57, "u67": u67, "u57-printed": u57_as_printed, "u67-printed": u67_as_printed}

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def element_report(u: RingElement) -> dict:
    return {"ring": u.ring.describe(), "support": len(u), "terms": [[c, format_element(g)] for c, g in u.terms()]}


def load_unit(selector: str, char: int) -> RingElement:
    if selector in ("murray", "murray-printed"):
        if not sympy.isprime(char):
            raise UsageError(f"the Murray unit needs a prime characteristic, got {char}")
        return murray_unit(char) if selector == "murray" else murray_unit_as_printed(char)
    if selector in DISPLAYED_UNITS:
        if char != 2:
            raise UsageError(f"{selector} is defined over ZZ/2 only")
        return DISPLAYED_UNITS[selector]()
    if selector.startswith("file:"):
        path = Path(selector[5:])
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from exc
        return RingElement.from_text(text, modulo(char))
    raise UsageError(f"unknown unit selector {selector!r}")


def determinant_report(u: RingElement) -> dict:
    d = det(rho_ring(u))
    constant_unit = d.is_constant() and u.ring.is_unit(d.constant_term())
    return {
        "representation": active_representation().name,
        "constant_unit": constant_unit,
        "value": str(d) if len(d) <= 20 else f"<{len(d)} terms>",
        "terms": len(d),
    }


def decomposition_report(u: RingElement) -> dict:
    w = project_ring(u)
    try:
        form = decompose_unitary(w)
    except DecompositionError as exc:
        return {"projection": str(w), "error": str(exc)}
    j, indices = form.as_tuple()
    indices = list(indices)
    return {"projection": str(w), "j": j, "I": indices, "epsilon_product": form.expression()}


def cmd_verify(args) -> tuple[int, dict]:
    u = load_unit(args.unit, args.char)
    claims = verify_unit_claims(u)
    report = {"command": "verify", "unit": args.unit, "char": args.char, "claims": claims.as_dict()}
    report["determinant"] = determinant_report(u)
    report["conventions"] = [c.as_dict() for c in resolve_conventions(u)]
    if args.char == 2:
        report["dihedral"] = decomposition_report(u)
    if args.compare:
        other = load_unit(f"file:{args.compare}", args.char)
        report["equals_reference"] = other == u
    ok = claims.all_hold and report["determinant"]["constant_unit"]
    report["ok"] = ok
    return (EXIT_OK if ok else EXIT_CLAIM), report


def cmd_search(args) -> tuple[int, dict]:
    flags = dict(theta_unitary=args.theta_unitary, tau_symmetric=args.tau_symmetric, exclude_trivial=args.exclude_trivial)
    if (args.radius is None) == (args.support_file is None):
        raise UsageError("give exactly one of --radius and --support-file")
    if args.radius is not None:
        spec = SearchSpec.from_radius(args.radius, **flags)
    else:
        try:
            lines = Path(args.support_file).read_text().splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read {args.support_file}: {exc}") from exc
        spec = SearchSpec(tuple(support_from_lines(lines)), **flags)
    solver = args.solver or default_solver_command()
    start = time.perf_counter()
    result = search(spec, solver=solver, cnf_path=args.cnf, cap=args.cap, timeout=args.timeout)
    report = {
        "command": "search",
        "support_size": len(spec.support),
        "flags": flags,
        "status": result.status,
        "method": result.method,
        "unknowns": result.unknowns,
        "cnf": {"vars": result.cnf_vars, "clauses": result.cnf_clauses, "path": args.cnf},
        "seconds": round(time.perf_counter() - start, 3),
    }
    if result.unit is not None:
        report["unit"] = element_report(result.unit)
        report["claims"] = verify_unit_claims(result.unit).as_dict()
    return EXIT_OK, report


def cmd_lift(args) -> tuple[int, dict]:
    if args.modulus < 2:
        raise UsageError("modulus must be at least 2")
    result = lift_to_modulus(args.modulus, args.radius_cap)
    report = {"command": "lift", **result.as_dict()}
    if result.u is not None and args.terms:
        report["u"] = element_report(result.u)
        report["u_prime"] = element_report(result.u_prime)
    return (EXIT_OK if result.verified else EXIT_CLAIM), report


def cmd_probe(args) -> tuple[int, dict]:
    u0 = load_unit(args.unit, 2)
    radii = range(args.radius + 1) if args.all_radii else [args.radius]
    reports = [twisted_lift_probe(u0, r).as_dict() for r in radii]
    return EXIT_OK, {"command": "probe-mod4", "unit": args.unit, "probes": reports}


def cmd_project(args) -> tuple[int, dict]:
    if args.char != 2:
        raise UsageError("the projection to F_2[D] needs --char 2")
    u = load_unit(args.unit, 2)
    report = {"command": "project", "unit": args.unit, **decomposition_report(u)}
    return (EXIT_CLAIM if "error" in report else EXIT_OK), report


def cmd_ball(args) -> tuple[int, dict]:
    elements = ball(args.radius)
    report = {"command": "ball", "radius": args.radius, "size": len(elements)}
    if args.list:
        report["elements"] = [format_element(g) for g in elements]
    return EXIT_OK, report


def cmd_det(args) -> tuple[int, dict]:
    u = load_unit(args.unit, args.char)
    rep = determinant_report(u)
    rep["value"] = str(det(rho_ring(u)))
    return EXIT_OK, {"command": "det", "unit": args.unit, "char": args.char, **rep}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hwunits", description=__doc__)
    parser.add_argument("--output", help="also write the report to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    def unit_args(p, default_char=None):
        p.add_argument("--unit", required=True, help="murray | u57 | u67 (add -printed for the literal tables) | file:PATH")
        p.add_argument("--char", type=int, required=default_char is None, default=default_char)

    p = sub.add_parser("verify", help="check the unit claims for a known or supplied element")
    unit_args(p)
    p.add_argument("--compare", metavar="PATH", help="unit file to compare against for equality")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="SAT search for units on a support")
    p.add_argument("--radius", type=int)
    p.add_argument("--support-file")
    p.add_argument("--theta-unitary", action="store_true")
    p.add_argument("--tau-symmetric", action="store_true")
    p.add_argument("--exclude-trivial", action="store_true")
    p.add_argument("--solver", help="'pysat[:name]' or a command template containing {cnf}")
    p.add_argument("--cnf", help="write the CNF here")
    p.add_argument("--cap", type=int, default=BRUTE_FORCE_CAP, help="brute-force variable cap")
    p.add_argument("--timeout", type=float)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("lift", help="inverse pair modulo n")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--radius-cap", type=int, default=DEFAULT_RADIUS_CAP)
    p.add_argument("--terms", action="store_true", help="include the lifted elements")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("probe-mod4", help="twisted-unitary lift to ZZ/4")
    p.add_argument("--unit", default="murray")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--all-radii", action="store_true", help="probe every radius up to --radius")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("project", help="image in F_2[D] and its Mirowicz decomposition")
    unit_args(p, 2)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("ball", help="word-metric ball")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("det", help="determinant under the 4x4 representation")
    unit_args(p)
    p.set_defaults(func=cmd_det)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = args.func(args)
    except LiftError as exc:
        code, report = EXIT_CLAIM, {"command": args.command, "error": str(exc)}
    except (UsageError, SpecError, BallCapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        code, report = EXIT_SOLVER, {"command": args.command, "error": str(exc)}
    except EncodingError as exc:
        code, report = EXIT_CLAIM, {"command": args.command, "error": f"internal encoding error: {exc}"}
    text = json.dumps(report, indent=2)
    print(text)
    if args.output:
        Path(args.output).write_text(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
