"""Command line interface.

Exit codes: 0 on success or an optimal solution, 2 when the instance is
infeasible, 1 on any error (message on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import TooLarge, TwoFaceError
from .formats import (
    dumps,
    generate_grid_instance,
    read_instance,
    read_solution,
    solution_to_dict,
    write_instance,
    write_solution,
)
from .oracle import brute_force_optimum, mu_table, verify_solution
from .render import write_svg
from .rotation import solve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2


def _solve_file(src: str, dst: str | None, fixed_winding: int | None, seed_u: int | None) -> int:
    sol = solve(read_instance(src), fixed_winding=fixed_winding, seed_u=seed_u)
    if dst is None:
        print(dumps(solution_to_dict(sol)), end="")
    else:
        write_solution(sol, dst)
    return EXIT_OK if sol.feasible else EXIT_INFEASIBLE


def _solve_job(args: tuple[str, str | None, int | None, int | None]) -> tuple[int, str]:
    try:
        return _solve_file(*args), ""
    except (TwoFaceError, OSError) as exc:
        return EXIT_ERROR, f"{args[0]}: {exc}"


def cmd_solve(ns: argparse.Namespace) -> int:
    inputs = ns.instances
    if len(inputs) == 1:
        return _solve_file(inputs[0], ns.output, ns.fixed_winding, ns.seed_u)
    if ns.output is None:
        raise TwoFaceError("several instances need -o naming an output directory")
    outdir = Path(ns.output)
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = [
        (src, str(outdir / (Path(src).stem + ".solution.json")), ns.fixed_winding, ns.seed_u)
        for src in inputs
    ]
    if ns.jobs > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            results = list(pool.map(_solve_job, jobs))
    else:
        results = [_solve_job(job) for job in jobs]
    for _, msg in results:
        if msg:
            print(msg, file=sys.stderr)
    codes = {code for code, _ in results}
    if EXIT_ERROR in codes:
        return EXIT_ERROR
    return EXIT_INFEASIBLE if EXIT_INFEASIBLE in codes else EXIT_OK


def cmd_oracle(ns: argparse.Namespace) -> int:
    inst = read_instance(ns.instance)
    best = brute_force_optimum(inst)
    doc = {"brute_force": solution_to_dict(best)}
    if not ns.no_mu:
        try:
            table = mu_table(inst, seed_u=ns.seed_u)
        except TooLarge as exc:
            doc["mu"] = None
            doc["mu_error"] = str(exc)
        else:
            doc["mu"] = {str(w): c for w, c in sorted(table.costs.items())}
            doc["m"] = table.m
    print(json.dumps(doc, indent=1))
    return EXIT_OK if best.feasible else EXIT_INFEASIBLE


def cmd_verify(ns: argparse.Namespace) -> int:
    inst = read_instance(ns.instance)
    sol = read_solution(ns.solution)
    if not sol.feasible:
        print(f"infeasible ({sol.reason}); nothing to verify")
        return EXIT_INFEASIBLE
    rep = verify_solution(inst, sol)
    if rep.ok:
        print(f"ok: {len(sol.paths)} disjoint paths, total length {rep.total}")
        return EXIT_OK
    for msg in rep.failures:
        print(msg, file=sys.stderr)
    return EXIT_ERROR


def cmd_gen(ns: argparse.Namespace) -> int:
    inst = generate_grid_instance(
        ns.rows, ns.cols, ns.k, seed=ns.seed, length_range=(ns.min_length, ns.max_length)
    )
    write_instance(inst, ns.output)
    return EXIT_OK


def cmd_render(ns: argparse.Namespace) -> int:
    inst = read_instance(ns.instance)
    sol = read_solution(ns.solution) if ns.solution else None
    write_svg(inst, ns.output, sol)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twoface",
        description="Shortest vertex-disjoint paths between terminals on two faces of a planar digraph.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve one or more instance files")
    sp.add_argument("instances", nargs="+", metavar="instance")
    sp.add_argument("-o", "--output", help="solution file, or a directory for several instances")
    sp.add_argument("--fixed-winding", type=int, metavar="W", help="require winding number W")
    sp.add_argument("--seed-u", type=int, metavar="N", help="seed for the choice of the dual path U")
    sp.add_argument("--jobs", type=int, default=1, help="parallel workers for several instances")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("oracle", help="brute-force optimum and winding table of a small instance")
    sp.add_argument("instance")
    sp.add_argument("--seed-u", type=int, metavar="N")
    sp.add_argument("--no-mu", action="store_true", help="skip the winding table")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify", help="check a solution file against its instance")
    sp.add_argument("instance")
    sp.add_argument("solution")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="generate a random grid instance")
    sp.add_argument("--rows", type=int, required=True)
    sp.add_argument("--cols", type=int, required=True)
    sp.add_argument("-k", type=int, required=True, help="number of terminal pairs")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--min-length", type=int, default=0)
    sp.add_argument("--max-length", type=int, default=9)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("render", help="draw an instance (and solution) as SVG")
    sp.add_argument("instance")
    sp.add_argument("solution", nargs="?")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_render)
    return p


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return ns.func(ns)
    except (TwoFaceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_cli())
