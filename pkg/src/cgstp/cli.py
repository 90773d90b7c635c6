"""Command-line entry point.

Exit codes: 0 success, 1 infeasible or inadmissible input (the report is
still written), 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .admissibility import (check_admissible, decode_tour, induce_selection, selection_from_json,
                            selection_to_json, verdict_to_json)
from .complex import (Complex, ComplexError, delaunay_candidates, full_complex,
                      read_triangle_list, restricted_complex)
from .encode import fan_encode
from .ilp import emit_lp, parse_assignment, validate_external
from .instance import Instance, InstanceError, instance_from_json, parse_tsplib, random_euclidean, to_tsplib
from .objective import IdentityPreconditionError, check_boundary_identity, net_weight
from .oracle import (BRUTEFORCE_MAX_N, HELD_KARP_MAX_N, tsp_oracle_bruteforce,
                     tsp_oracle_held_karp)
from .render import render_svg
from .solver import SolveOptions, solve_exact
from .tours import format_tour, parse_tour

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def load_instance(path: str) -> Instance:
    text = Path(path).read_text()
    if path.endswith(".json"):
        return instance_from_json(json.loads(text))
    return parse_tsplib(text)


def build_complex(mode: str, inst: Instance) -> Complex:
    if mode == "full":
        return full_complex(inst.n)
    if mode == "delaunay":
        if inst.coords is None:
            raise UsageError("--complex delaunay needs an instance with coordinates")
        return restricted_complex(inst.n, delaunay_candidates(inst))
    if mode.startswith("file:"):
        return restricted_complex(inst.n, read_triangle_list(Path(mode[5:]).read_text(), inst.n))
    raise UsageError(f"unknown complex mode {mode!r} (full, delaunay or file:PATH)")


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")


def cmd_gen(args) -> int:
    _need(args, "n")
    inst = random_euclidean(args.n, args.seed, args.range)
    _emit(to_tsplib(inst), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    _need(args, "instance")
    inst = load_instance(args.instance)
    cx = build_complex(args.complex, inst)
    rep = solve_exact(inst, cx, SolveOptions(use_bound=args.bound, node_limit=args.node_limit))
    _emit(rep.dumps(), args.out)
    if args.svg_out and rep.best_K:
        Path(args.svg_out).write_text(
            render_svg(inst, induce_selection(cx, rep.best_K), title=f"length {rep.tour_length}"))
    return EXIT_OK if rep.status == "optimal" else EXIT_INFEASIBLE


def _load_selection(args, cx):
    return selection_from_json(json.loads(Path(args.selection).read_text()), cx)


def cmd_verify(args) -> int:
    _need(args, "instance", "selection")
    inst = load_instance(args.instance)
    cx = build_complex(args.complex, inst)
    sel = _load_selection(args, cx)
    verdict = check_admissible(sel)
    try:
        identity = check_boundary_identity(sel, inst)
    except IdentityPreconditionError:
        identity = None
    report = verdict_to_json(verdict)
    report["objective"] = net_weight(sel, inst).to_json()
    report["boundary_identity"] = identity
    report["tour"] = list(decode_tour(sel)) if verdict.admissible else None
    _emit(_dump(report), args.out)
    return EXIT_OK if verdict.admissible else EXIT_INFEASIBLE


def cmd_encode(args) -> int:
    _need(args, "instance", "tour")
    inst = load_instance(args.instance)
    cx = build_complex(args.complex, inst)
    tour = parse_tour(Path(args.tour).read_text())
    sel = fan_encode(tour, args.apex, cx)
    _emit(_dump(selection_to_json(sel)), args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    _need(args, "instance", "selection")
    inst = load_instance(args.instance)
    cx = build_complex(args.complex, inst)
    sel = _load_selection(args, cx)
    verdict = check_admissible(sel)
    if not verdict.admissible:
        sys.stderr.write(_dump(verdict_to_json(verdict)))
        return EXIT_INFEASIBLE
    _emit(format_tour(decode_tour(sel)), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    _need(args, "instance")
    inst = load_instance(args.instance)
    report = {"n": inst.n}
    for key, fn, cap in (("bruteforce", tsp_oracle_bruteforce, BRUTEFORCE_MAX_N),
                         ("held_karp", tsp_oracle_held_karp, HELD_KARP_MAX_N)):
        if inst.n <= cap:
            tour, length = fn(inst)
            report[key] = {"tour": list(tour), "length": length}
        else:
            report[key] = None
    ran = [report[k]["length"] for k in ("bruteforce", "held_karp") if report[k]]
    report["agree"] = len(set(ran)) == 1 if ran else None
    _emit(_dump(report), args.out)
    return EXIT_OK if report["agree"] is not False else EXIT_INFEASIBLE


def cmd_emit_lp(args) -> int:
    _need(args, "instance")
    inst = load_instance(args.instance)
    _emit(emit_lp(inst, build_complex(args.complex, inst)), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    _need(args, "instance", "assignment")
    inst = load_instance(args.instance)
    cx = build_complex(args.complex, inst)
    assignment = parse_assignment(Path(args.assignment).read_text())
    verdict, tour, breakdown = validate_external(assignment, inst, cx)
    report = verdict_to_json(verdict)
    report["tour"] = list(tour) if tour is not None else None
    report["objective"] = breakdown.to_json()
    _emit(_dump(report), args.out)
    return EXIT_OK if verdict.admissible else EXIT_INFEASIBLE


def cmd_render(args) -> int:
    _need(args, "instance")
    inst = load_instance(args.instance)
    sel = tour = None
    if args.selection:
        sel = _load_selection(args, build_complex(args.complex, inst))
    elif args.tour:
        tour = parse_tour(Path(args.tour).read_text())
    _emit(render_svg(inst, sel, tour), args.svg_out or args.out)
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen, "solve": cmd_solve, "verify": cmd_verify, "encode": cmd_encode,
    "decode": cmd_decode, "oracle": cmd_oracle, "emit-lp": cmd_emit_lp,
    "validate": cmd_validate, "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cgstp", description=(
        "Symmetric TSP as a constrained group Steiner tree over triangle selections."))
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--instance", help="TSPLIB file (or .json instance)")
    p.add_argument("--tour", help="tour file: n space-separated 0-based cities")
    p.add_argument("--selection", help='selection JSON {"K": [[i,j,k],...]}')
    p.add_argument("--assignment", help="solver output: JSON map or 'name value' lines")
    p.add_argument("--complex", default="full", help="full, delaunay or file:PATH")
    p.add_argument("--apex", type=int, default=0, help="fan apex position in the tour")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int)
    p.add_argument("--range", type=int, default=1000, help="coordinate range for gen")
    p.add_argument("--bound", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--node-limit", type=int)
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--svg-out", help="SVG output for solve/render")
    return p


def run(args: argparse.Namespace) -> int:
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InstanceError, ComplexError, OSError, ValueError) as exc:
        sys.stderr.write(f"cgstp {args.command}: {exc}\n")
        return EXIT_USAGE


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
