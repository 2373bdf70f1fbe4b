"""Command-line front end.

Exit codes: 0 success or consensus, 1 no consensus, 2 bad input,
3 fault detected.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .consensus import (
    RNG_ALGORITHM,
    SwitchingSchedule,
    converges_all_inits_fixed,
    fault_check,
    min_zero_exponent,
    run_fixed,
    run_switching,
)
from .errors import DimensionError, ParseError
from .generators import FAMILIES, MAX_SEED, GenSpec, generate
from .graph import (
    INFINITE,
    adjacency,
    dependency_graph,
    diameter,
    format_edge_list,
    from_edges,
    is_strongly_connected,
    parse_edge_list,
    to_dot,
)
from .mortality import mortality_witness
from .tropical import NEG_INF, TropicalAdjMatrix, parse_matrix, parse_scalar

EXIT_OK = 0
EXIT_NO_CONSENSUS = 1
EXIT_INPUT = 2
EXIT_FAULT = 3


class InputError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}") from None
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _looks_like_matrix(text: str) -> bool:
    body = [ln.split() for ln in text.splitlines()[1:]]
    return any(t == "0" or t.lower() == "-inf" for toks in body for t in toks)


def read_network(path: str | Path) -> TropicalAdjMatrix:
    """Load an edge-list or matrix file (the format is auto-detected)."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        if _looks_like_matrix(text):
            return parse_matrix(text)
        return adjacency(parse_edge_list(text))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _inline_matrix(obj: Any, where: str) -> TropicalAdjMatrix:
    if isinstance(obj, dict):
        try:
            return adjacency(from_edges(obj["n"], [tuple(e) for e in obj.get("edges", [])]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{where}: bad edge-list object ({exc})") from None
    try:
        entries = [[parse_scalar(str(v)) for v in row] for row in obj]
        return TropicalAdjMatrix.from_entries(entries)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: bad inline matrix ({exc})") from None


def read_pool(items: Any, base: Path, where: str) -> list[TropicalAdjMatrix]:
    """Pool entries are file paths (relative to ``base``) or inline matrices."""
    if not isinstance(items, list) or not items:
        raise InputError(f"{where}: pool must be a non-empty list")
    pool = []
    for k, item in enumerate(items, 1):
        if isinstance(item, str):
            pool.append(read_network(base / item))
        else:
            pool.append(_inline_matrix(item, f"{where} pool[{k}]"))
    n = pool[0].n
    if any(M.n != n for M in pool):
        raise InputError(f"{where}: pool matrices differ in size")
    return pool


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from None


def _init_vector(values: Sequence[str], random_seed: int | None, n: int) -> tuple:
    if random_seed is not None:
        if values:
            raise InputError("give either initial values or --random, not both")
        rng = np.random.Generator(np.random.PCG64(random_seed))
        return tuple(int(v) for v in rng.permutation(n) + 1)
    if not values:
        raise InputError("initial values required (or --random SEED)")
    try:
        x = tuple(parse_scalar(v) for v in values)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if any(v is NEG_INF for v in x):
        raise InputError("initial values must be finite")
    if len(x) != n:
        raise InputError(f"{len(x)} initial values for a {n}-node network")
    return x


def _dump(obj: Any) -> str:
    return json.dumps(obj) + "\n"


def cmd_analyze(args) -> int:
    A = read_network(args.graph)
    G = dependency_graph(A)
    d = diameter(G)
    verdict = converges_all_inits_fixed(A)
    report = {
        "n": A.n,
        "strongly_connected": is_strongly_connected(G),
        "diameter": "inf" if d == INFINITE else d,
        "min_zero_exponent": min_zero_exponent(A),
        "converges_all_inits": verdict.converges_for_all_inits,
        "steps": verdict.steps,
    }
    sys.stdout.write(_dump(report))
    return EXIT_OK


def _emit_trace(trace, as_json: bool) -> int:
    if as_json:
        sys.stdout.write(_dump(trace.to_records()))
    else:
        sys.stdout.write(trace.to_lines())
    return EXIT_OK if trace.converged_at is not None else EXIT_NO_CONSENSUS


def cmd_simulate(args) -> int:
    A = read_network(args.graph)
    x0 = _init_vector(args.values, args.random, A.n)
    max_steps = args.max_steps if args.max_steps is not None else A.n
    return _emit_trace(run_fixed(A, x0, max_steps), args.json)


def cmd_switching(args) -> int:
    doc = _load_json(args.schedule)
    if not isinstance(doc, dict) or "pool" not in doc or "sequence" not in doc:
        raise InputError(f"{args.schedule}: expected an object with 'pool' and 'sequence'")
    pool = read_pool(doc["pool"], Path(args.schedule).parent, args.schedule)
    if "n" in doc and doc["n"] != pool[0].n:
        raise InputError(f"{args.schedule}: n={doc['n']} but pool matrices are {pool[0].n}x{pool[0].n}")
    try:
        schedule = SwitchingSchedule(tuple(pool), tuple(doc["sequence"]))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{args.schedule}: {exc}") from None
    x0 = _init_vector(args.values, args.random, schedule.n)
    return _emit_trace(run_switching(schedule, x0), args.json)


def cmd_mortality(args) -> int:
    doc = _load_json(args.pool)
    if isinstance(doc, dict):
        doc = doc.get("pool")
    pool = read_pool(doc, Path(args.pool).parent, args.pool)
    sys.stdout.write(_dump(mortality_witness(pool).to_dict()))
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        if args.spec:
            spec = GenSpec.from_dict(_load_json(args.spec))
        else:
            params = {}
            for name in ("p", "k", "beta", "m"):
                value = getattr(args, name)
                if value is not None:
                    params[name] = value
            spec = GenSpec(args.family, args.n, params, args.seed)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid generator spec: {exc}") from None
    G = generate(spec)
    if args.json:
        text = _dump({"spec": spec.to_dict(), "rng": RNG_ALGORITHM, "n": G.n,
                      "edges": [list(e) for e in G.sorted_edges()]})
    elif args.dot:
        text = to_dot(G)
    else:
        text = format_edge_list(G)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_faultscan(args) -> int:
    A = read_network(args.graph)
    trials = args.trials if args.trials is not None else A.n
    report = fault_check(A, args.expected_steps, trials, args.seed)
    if args.json:
        sys.stdout.write(_dump(report.to_dict()))
    elif report.clean:
        sys.stdout.write("CLEAN\n")
    else:
        failed = ",".join(str(t) for t in report.failed_trials)
        sys.stdout.write(f"FAULT failed_trials={failed}\n")
    return EXIT_OK if report.clean else EXIT_FAULT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxconsensus",
        description="Max-consensus analysis over directed networks in the max-plus semiring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="connectivity, diameter and convergence verdict")
    p.add_argument("graph", help="edge-list or matrix file")
    p.add_argument("--json", action="store_true", help="accepted for uniformity; output is always JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="run the protocol on a fixed network")
    p.add_argument("graph")
    p.add_argument("values", nargs="*", help="initial value per node")
    p.add_argument("--random", type=_seed, metavar="SEED", help="random distinct initial values")
    p.add_argument("--max-steps", type=_positive, help="round limit (default: n)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("switching", help="run the protocol over a switching schedule")
    p.add_argument("schedule", help="JSON {n, pool, sequence}")
    p.add_argument("values", nargs="*")
    p.add_argument("--random", type=_seed, metavar="SEED")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_switching)

    p = sub.add_parser("mortality", help="decide mortality of a matrix pool")
    p.add_argument("pool", help="JSON list of matrix files or inline matrices")
    p.add_argument("--json", action="store_true", help="accepted for uniformity; output is always JSON")
    p.set_defaults(func=cmd_mortality)

    p = sub.add_parser("generate", help="emit a seeded network")
    p.add_argument("--spec", help="GenSpec JSON file (overrides the flags below)")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=_positive)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("-o", "--output")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--dot", action="store_true", help="Graphviz output instead of an edge list")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("faultscan", help="detect faults by timed consensus rounds")
    p.add_argument("graph")
    p.add_argument("--expected-steps", type=_positive, required=True)
    p.add_argument("--trials", type=int, help="number of trials (default: n)")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_faultscan)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate" and not args.spec and (args.family is None or args.n is None):
        parser.error("generate needs --spec or both --family and --n")
    try:
        return args.func(args)
    except (InputError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
