"""Command-line front end.

Exit codes: 0 when the decision answer is yes (isomorphic / subgraph
found) or a non-decision command succeeds, 1 when the answer is no, 2 on
any error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from . import __version__
from . import fixtures
from .autgroup import Permutation, decode_ground_strings, group_report
from .compile.chimera import chimera, read_disabled
from .compile.embed import embed_minor
from .compile.poly import expand_cost, locality_bound, term_stats
from .compile.qubo import export_qubo
from .compile.quadratize import quadratize
from .cost import GIInstance, SGIInstance, brute_force_ground, sgi_witness
from .dynamics import EvolutionConfig, find_adiabatic_time, run_protocol
from .errors import AdiabaticGIError
from .graphs import Graph, read_edge_list
from .hamiltonian import DEFAULT_QUBIT_LIMIT, build_problem_diagonal, min_gap_scan

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class CLIError(AdiabaticGIError):
    pass


# -- helpers ------------------------------------------------------------------

def _pair(args, needs_pair: bool = True) -> Tuple[Graph, Graph]:
    if args.fixture:
        name = args.fixture
        if name in fixtures.GI_PAIRS:
            p = fixtures.GI_PAIRS[name]
            return p["g"], p["gp"]
        if name in fixtures.SINGLE_GRAPHS:
            g = fixtures.SINGLE_GRAPHS[name]
            return g, g
        raise CLIError(
            f"unknown fixture {name!r}; pairs: {sorted(fixtures.GI_PAIRS)}, "
            f"self-instances: {sorted(fixtures.SINGLE_GRAPHS)}"
        )
    if len(args.graphs) == 1 and not needs_pair:
        g = read_edge_list(args.graphs[0])
        return g, g
    if len(args.graphs) != 2:
        raise CLIError("give two edge-list files (G and G') or --fixture NAME")
    return read_edge_list(args.graphs[0]), read_edge_list(args.graphs[1])


def _instance(args) -> GIInstance:
    g, gp = _pair(args, needs_pair=False)
    return GIInstance(g, gp)


def _emit(args, report: dict, text: str) -> None:
    body = json.dumps(report, indent=2) + "\n" if args.json else text
    if args.out:
        Path(args.out).write_text(body)
    else:
        sys.stdout.write(body)


def _qubit_guard(args, inst) -> None:
    if inst.num_qubits > args.limit_qubits:
        raise CLIError(
            f"instance needs {inst.num_qubits} qubits; --limit-qubits is {args.limit_qubits}"
        )


def _evolve_report(args, inst, oracle_min) -> dict:
    _qubit_guard(args, inst)
    hp = build_problem_diagonal(inst, args.limit_qubits)
    T = args.T
    history = None
    if T is None:
        T, history = find_adiabatic_time(hp, dt=args.dt, integrator=args.integrator)
        if T is None:
            T = history[-1][0]
    cfg = EvolutionConfig(T=T, dt=args.dt, integrator=args.integrator, seed=args.seed)
    rep = run_protocol(inst, cfg, args.epsilon, args.delta, args.runs, oracle_min, hp).to_json()
    if history is not None:
        rep["T_search"] = [{"T": t, "ground_population": p} for t, p in history]
    return rep


# -- subcommands --------------------------------------------------------------

def cmd_oracle(args) -> int:
    inst = _instance(args)
    summary = brute_force_ground(inst, args.limit_qubits)
    rep = summary.to_json()
    text = (
        f"min_cost {summary.min_cost}\ndegeneracy {summary.degeneracy}\n"
        + "".join(f"{s}\n" for s in summary.minimizer_strings())
    )
    _emit(args, rep, text)
    return EXIT_YES


def cmd_gi(args) -> int:
    g, gp = _pair(args)
    inst = GIInstance(g, gp)
    summary = brute_force_ground(inst, args.limit_qubits)
    rep = summary.to_json()
    if args.evolve:
        rep["evolution"] = _evolve_report(args, inst, summary.min_cost)
    verdict = "isomorphic" if summary.is_isomorphic else "non-isomorphic"
    lines = [verdict, f"min_cost {summary.min_cost}", f"degeneracy {summary.degeneracy}"]
    if summary.is_isomorphic:
        lines.append("isomorphisms: " + " ".join(summary.minimizer_strings()))
    if args.evolve:
        ev = rep["evolution"]
        lines.append(f"evolution T={ev['T']:g} ground_population={ev['ground_population']:.4f} "
                     f"min_cost_observed={ev['min_cost_observed']}")
    _emit(args, rep, "\n".join(lines) + "\n")
    return EXIT_YES if summary.is_isomorphic else EXIT_NO


def cmd_aut(args) -> int:
    if args.fixture:
        if args.fixture not in fixtures.SINGLE_GRAPHS:
            raise CLIError(f"unknown graph fixture {args.fixture!r}; choose from {sorted(fixtures.SINGLE_GRAPHS)}")
        g = fixtures.SINGLE_GRAPHS[args.fixture]
    elif len(args.graphs) == 1:
        g = read_edge_list(args.graphs[0])
    else:
        raise CLIError("give one edge-list file or --fixture NAME")
    summary = brute_force_ground(GIInstance(g, g), args.limit_qubits)
    perms = decode_ground_strings(summary)
    prefer = None
    table = fixtures.AUT_TABLES.get(args.fixture or "")
    if table:
        prefer = (Permutation.parse(table["alpha"]), Permutation.parse(table["beta"]))
    rep = group_report(perms, prefer)
    lines = [f"order {rep['order']}", "elements " + " ".join(rep["elements"])]
    if rep["generators"]:
        lines.append(f"generators alpha={rep['generators']['alpha']} beta={rep['generators']['beta']}")
        lines.append(f"dihedral_n {rep['dihedral_n']}")
        for k, v in rep["relations_checked"].items():
            lines.append(f"  {k}: {v}")
    _emit(args, rep, "\n".join(lines) + "\n")
    return EXIT_YES


def cmd_sgi(args) -> int:
    if args.fixture:
        if args.fixture not in fixtures.SGI_PAIRS:
            raise CLIError(f"unknown SGI fixture {args.fixture!r}; choose from {sorted(fixtures.SGI_PAIRS)}")
        p = fixtures.SGI_PAIRS[args.fixture]
        g, h = p["g"], p["h"]
    elif len(args.graphs) == 2:
        g, h = read_edge_list(args.graphs[0]), read_edge_list(args.graphs[1])
    else:
        raise CLIError("give host and pattern edge-list files or --fixture NAME")
    inst = SGIInstance(g, h)
    summary = brute_force_ground(inst, args.limit_qubits)
    rep = summary.to_json()
    rep["contains_subgraph"] = rep.pop("is_isomorphic")
    lines = [
        "subgraph found" if summary.is_isomorphic else "no subgraph",
        f"min_cost {summary.min_cost}",
        f"degeneracy {summary.degeneracy}",
    ]
    if summary.is_isomorphic:
        s = summary.minimizers[0]
        alpha = sgi_witness(s, inst)
        rep["witness"] = {"string": str(s), "subset": list(alpha)}
        lines.append(f"witness string {s} subset {' '.join(map(str, alpha))}")
    if args.evolve:
        rep["evolution"] = _evolve_report(args, inst, summary.min_cost)
    _emit(args, rep, "\n".join(lines) + "\n")
    return EXIT_YES if summary.is_isomorphic else EXIT_NO


def cmd_gapscan(args) -> int:
    inst = _instance(args)
    _qubit_guard(args, inst)
    scan = min_gap_scan(build_problem_diagonal(inst, args.limit_qubits), grid=args.grid)
    if args.out:
        Path(args.out).write_text(scan.to_tsv())
        sys.stdout.write(scan.dumps() + "\n" if args.json else
                         f"Delta_min {scan.delta_min:.6g}\nM {scan.m:.6g}\nT_bound {scan.t_bound:.6g}\n")
    else:
        sys.stdout.write(scan.dumps() + "\n" if args.json else scan.to_tsv())
    return EXIT_YES


def cmd_evolve(args) -> int:
    inst = _instance(args)
    oracle = None
    if inst.num_qubits <= min(args.limit_qubits, 24):
        oracle = brute_force_ground(inst, args.limit_qubits).min_cost
    rep = _evolve_report(args, inst, oracle)
    text = (
        f"T {rep['T']:g}\ndt {rep['dt']:.6g}\nintegrator {rep['integrator']}\n"
        f"ground_population {rep['ground_population']:.6f}\nruns {rep['k']}\n"
        f"min_cost_observed {rep['min_cost_observed']}\nmatches_oracle {rep['matches_oracle']}\n"
    )
    _emit(args, rep, text)
    return EXIT_YES


def cmd_compile(args) -> int:
    inst = _instance(args)
    exp = expand_cost(inst)
    poly = exp.total
    stats = term_stats(poly, inst.n)
    qp = quadratize(poly, exp.num_vars)
    rep = {
        "stats": stats.to_json(),
        "locality": {
            "c1_c2_max_degree": max(exp.c1.degree, exp.c2.degree),
            "c3_max_degree": exp.c3.degree,
            "bounds": locality_bound(inst.n),
        },
        "quadratic_program": {
            "original_vars": qp.num_original,
            "ancillas": qp.num_ancillas,
            "linear_terms": len(qp.linear),
            "quadratic_terms": len(qp.quadratic),
        },
    }
    emb = hw = None
    if args.embed:
        rows, cols, half = args.chimera
        hw = chimera(rows, cols, half, read_disabled(args.disabled) if args.disabled else ())
        res = embed_minor(qp, hw, seed=args.seed)
        rep["embedding"] = res.embedding.to_json(hw) if res.found else {"found": False, "reason": res.reason}
        emb = res.embedding
    qubo_text = export_qubo(qp, emb, hw)
    if args.out:
        Path(args.out).write_text(qubo_text)
    else:
        sys.stdout.write(qubo_text)
    # the QUBO may occupy stdout, so the stats go to stderr unless --json asks for them
    stream = sys.stdout if args.json else sys.stderr
    stream.write(json.dumps(rep, indent=2) + "\n")
    return EXIT_YES


# -- parser -------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, graphs_help: str) -> None:
    p.add_argument("graphs", nargs="*", help=graphs_help)
    p.add_argument("--fixture", help="use a built-in instance instead of files")
    p.add_argument("--seed", type=int, default=0, help="master random seed (default 0)")
    p.add_argument("--out", help="write the main artifact here instead of stdout")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--limit-qubits", type=int, default=DEFAULT_QUBIT_LIMIT,
                   help=f"refuse instances above this many qubits (default {DEFAULT_QUBIT_LIMIT})")


def _evolution(p: argparse.ArgumentParser) -> None:
    p.add_argument("--T", type=float, default=None,
                   help="total evolution time; default doubles T from 1 until ground population >= 0.9")
    p.add_argument("--dt", type=float, default=None,
                   help="time step; default keeps dt*(max cost + L) <= 0.05")
    p.add_argument("--integrator", choices=("split", "rk4"), default="split")
    p.add_argument("--runs", type=int, default=None,
                   help="measurement runs; default k = ceil(ln(1-delta)/ln(epsilon))")
    p.add_argument("--epsilon", type=float, default=0.1,
                   help="per-run failure probability (default 0.1)")
    p.add_argument("--delta", type=float, default=0.99,
                   help="target overall success probability (default 0.99)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adiabatic-gi",
        description="Adiabatic quantum algorithms for graph and subgraph isomorphism.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gi", help="decide isomorphism of G and G'")
    _common(p, "edge-list files for G and G'")
    p.add_argument("--evolve", action="store_true", help="also simulate the quantum evolution")
    _evolution(p)
    p.set_defaults(func=cmd_gi)

    p = sub.add_parser("aut", help="automorphism group of G")
    _common(p, "edge-list file for G")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("sgi", help="decide whether G contains a subgraph isomorphic to H")
    _common(p, "edge-list files for G (host) and H (pattern)")
    p.add_argument("--evolve", action="store_true", help="also simulate the quantum evolution")
    _evolution(p)
    p.set_defaults(func=cmd_sgi)

    p = sub.add_parser("gapscan", help="instantaneous spectrum and minimum gap")
    _common(p, "edge-list files for G and G' (one file means a self-instance)")
    p.add_argument("--grid", type=int, default=51, help="number of s points (default 51)")
    p.set_defaults(func=cmd_gapscan)

    p = sub.add_parser("evolve", help="simulate the adiabatic evolution and measure")
    _common(p, "edge-list files for G and G' (one file means a self-instance)")
    _evolution(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("compile", help="expand, quadratize and export a QUBO")
    _common(p, "edge-list files for G and G' (one file means a self-instance)")
    p.add_argument("--embed", action="store_true", help="minor-embed onto Chimera hardware")
    p.add_argument("--chimera", type=int, nargs=3, default=(4, 4, 4),
                   metavar=("ROWS", "COLS", "HALF"), help="Chimera dimensions (default 4 4 4)")
    p.add_argument("--disabled", help="file listing unusable qubit indices")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("oracle", help="exhaustive ground-state summary")
    _common(p, "edge-list files for G and G' (one file means a self-instance)")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AdiabaticGIError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
