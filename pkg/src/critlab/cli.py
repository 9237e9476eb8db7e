"""Command-line front end.

Subcommands: ``graph info``, ``critgroup``, ``snf``, ``profile``,
``filtration``, ``sandpile``, ``moore analyze``.  Graphs come from a builtin
name (--graph) or an edge-list file (--edges); matrix commands read the
plain-text matrix format (--matrix), with "-" meaning stdin.  Output is
deterministic text or JSON ("schema": 1, sorted keys), so identical
invocations produce byte-identical reports.

Exit codes: 0 success, 1 usage or input errors, 2 infeasible-parameter or
contradiction outcomes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .arith import is_prime
from .critical import bicycle_dimension, critical_group
from .exact import elem_divisor_profile, snf
from .filtration import verify_filtration_dims
from .graphs import (
    ExistenceUnknownError,
    Graph,
    InfeasibleParametersError,
    SrgParams,
    complete_graph,
    cycle_graph,
    hoffman_singleton_graph,
    laplacian_matrix,
    moore_graph,
    parse_edge_list,
    path_graph,
    petersen_graph,
)
from .intmatrix import IntMatrix, parse_matrix
from .moore import ContradictionError, analyze
from .sandpile import SizeGuardError, recurrent_count, sandpile_group_structure


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract here is 1
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _builtin_graph(name: str) -> Graph:
    key = name.lower().replace("_", "-")
    if key == "petersen":
        return petersen_graph()
    if key in ("hoffman-singleton", "hosi"):
        return hoffman_singleton_graph()
    if key.startswith("moore") and key[5:].isdigit():
        return moore_graph(int(key[5:]))
    if key.startswith("c") and key[1:].isdigit():
        return cycle_graph(int(key[1:]))
    if key.startswith("k") and key[1:].isdigit():
        return complete_graph(int(key[1:]))
    if key.startswith("p") and key[1:].isdigit():
        return path_graph(int(key[1:]))
    raise ValueError(f"unknown graph name {name!r}")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(args) -> tuple[Graph, str]:
    if getattr(args, "graph", None) and getattr(args, "edges", None):
        raise ValueError("give exactly one of --graph and --edges")
    if getattr(args, "graph", None):
        return _builtin_graph(args.graph), args.graph
    if getattr(args, "edges", None):
        return parse_edge_list(_read_text(args.edges)), args.edges
    raise ValueError("a graph source is required (--graph or --edges)")


def _load_matrix_or_graph(args) -> tuple[IntMatrix, str]:
    sources = [
        s
        for s in (
            getattr(args, "matrix", None),
            getattr(args, "graph", None),
            getattr(args, "edges", None),
        )
        if s
    ]
    if len(sources) != 1:
        raise ValueError(
            "give exactly one input source (--matrix, --graph or --edges)"
        )
    if getattr(args, "matrix", None):
        return parse_matrix(_read_text(args.matrix)), args.matrix
    g, name = _load_graph(args)
    return laplacian_matrix(g), f"laplacian({name})"


def _parse_primes(args) -> list[int]:
    primes = args.prime or []
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"--prime {p}: not a prime")
    return primes


def _thread_count(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("CRITLAB_THREADS", "")
    if env.isdigit() and int(env) > 0:
        return int(env)
    return 1


def _emit(args, report: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _factored_str(fd: dict[int, int]) -> str:
    if not fd:
        return "1"
    return " * ".join(
        f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(fd.items())
    )


# -- subcommand bodies ---------------------------------------------------------


def _cmd_graph_info(args) -> int:
    g, name = _load_graph(args)
    degs = g.degrees()
    report = {
        "schema": 1,
        "name": name,
        "n": g.n,
        "m": g.m,
        "connected": g.is_connected(),
        "regular": len(set(degs)) <= 1,
        "min_degree": min(degs) if degs else 0,
        "max_degree": max(degs) if degs else 0,
    }
    text = (
        f"graph: {name} (n={g.n}, m={g.m})\n"
        f"connected: {report['connected']}\n"
        f"regular: {report['regular']}"
        + (f" (degree {degs[0]})" if report["regular"] and degs else "")
        + "\n"
    )
    _emit(args, report, text)
    return 0


def _cmd_critgroup(args) -> int:
    g, name = _load_graph(args)
    cg = critical_group(g)
    bic = bicycle_dimension(g) if g.is_connected() else None
    report = {
        "schema": 1,
        "graph": name,
        "invariant_factors": list(cg.invariant_factors),
        "order_factored": {str(p): e for p, e in sorted(cg.order_factored().items())},
        "free_rank": cg.free_rank,
        "bicycle_dim": bic,
    }
    lines = [
        f"graph: {name} (n={g.n}, m={g.m})",
        "invariant factors: "
        + (" ".join(str(d) for d in cg.invariant_factors) or "(trivial)"),
        f"order: {cg.order}",
        f"order factored: {_factored_str(cg.order_factored())}",
        f"free rank: {cg.free_rank}",
    ]
    if bic is not None:
        lines.append(f"bicycle dimension: {bic}")
    _emit(args, report, "\n".join(lines) + "\n")
    return 0


def _cmd_snf(args) -> int:
    m, _ = _load_matrix_or_graph(args)
    result = snf(m)
    report = {"schema": 1, "invariant_factors": list(result.invariant_factors)}
    text = " ".join(str(d) for d in result.invariant_factors) + "\n"
    _emit(args, report, text)
    return 0


def _cmd_profile(args) -> int:
    m, name = _load_matrix_or_graph(args)
    primes = _parse_primes(args)
    if not primes:
        raise ValueError("profile needs at least one --prime")
    threads = _thread_count(args)
    if threads > 1 and len(primes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            profiles = list(pool.map(lambda p: elem_divisor_profile(m, p), primes))
    else:
        profiles = [elem_divisor_profile(m, p) for p in primes]
    report = {
        "schema": 1,
        "source": name,
        "profiles": [
            {
                "p": prof.p,
                "multiplicities": list(prof.multiplicities),
                "kernel_rank": prof.kernel_rank,
                "total_valuation": prof.total_valuation,
            }
            for prof in profiles
        ],
    }
    lines = []
    for prof in profiles:
        mult = ",".join(str(e) for e in prof.multiplicities) or "-"
        lines.append(
            f"p={prof.p} multiplicities=({mult}) kernel_rank={prof.kernel_rank} "
            f"total_valuation={prof.total_valuation}"
        )
    _emit(args, report, "\n".join(lines) + "\n")
    return 0


def _cmd_filtration(args) -> int:
    m, name = _load_matrix_or_graph(args)
    primes = _parse_primes(args)
    if len(primes) != 1:
        raise ValueError("filtration needs exactly one --prime")
    rep = verify_filtration_dims(m, primes[0])
    report = {"schema": 1, "source": name, **rep.to_json_dict()}
    text = (
        f"p={rep.p} pass={rep.passed}\n"
        f"dims_M: {' '.join(str(d) for d in rep.dims_M)}\n"
        f"dims_N: {' '.join(str(d) for d in rep.dims_N)}\n"
        f"kernel_dim: {rep.kernel_dim}\n"
    )
    _emit(args, report, text)
    return 0


def _cmd_sandpile(args) -> int:
    g, name = _load_graph(args)
    count = recurrent_count(g, args.sink)
    structure = sandpile_group_structure(g, args.sink)
    cg = critical_group(g)
    matches = tuple(d for d in structure if d > 1) == cg.invariant_factors
    report = {
        "schema": 1,
        "graph": name,
        "sink": args.sink,
        "recurrent_count": count,
        "invariant_factors": list(structure),
        "matches_snf": matches,
    }
    text = (
        f"graph: {name} (sink {args.sink})\n"
        f"recurrent configurations: {count}\n"
        f"group structure: {' '.join(str(d) for d in structure) or '(trivial)'}\n"
        f"matches Laplacian Smith form: {matches}\n"
    )
    _emit(args, report, text)
    return 0 if matches else 2


def _cmd_moore_analyze(args) -> int:
    parts = args.params.split(",")
    if len(parts) != 4:
        raise ValueError("--params must be v,k,lambda,mu")
    try:
        v, k, lam, mu = (int(x) for x in parts)
    except ValueError as exc:
        raise ValueError("--params must be four integers") from exc
    params = SrgParams(v, k, lam, mu)
    primes = _parse_primes(args)
    report = analyze(params, primes)
    lines = [
        f"params: v={v} k={k} lambda={lam} mu={mu}",
        f"identity: (L - {report['identity']['c']}I)L = "
        f"-{report['identity']['w']}I + {report['identity']['j_coeff']}J",
        "allowed elementary divisors: "
        + " ".join(str(d) for d in report["divisor_bound"]),
        "order: "
        + _factored_str({int(p): e for p, e in report["order_factored"].items()}),
        "forced multiplicities: "
        + (
            " ".join(f"{q}->{m}" for q, m in sorted(report["forced"].items(), key=lambda kv: int(kv[0])))
            or "(none)"
        ),
    ]
    for q, fams in report["families"].items():
        lines.append(f"families for prime {q}:")
        for fam in fams:
            rng = fam["t_range"]
            lines.append(
                f"  case {fam['case']}: e = ({', '.join(fam['e'])}) "
                f"for t in [{rng[0]}, {rng[1]}]"
            )
            if fam["e_of_rank"]:
                lines.append(
                    f"    in terms of e0: ({', '.join(fam['e_of_rank'])})"
                )
    _emit(args, report, "\n".join(lines) + "\n")
    return 0


# -- parser wiring ---------------------------------------------------------------


def _add_common(sub, graph=False, matrix=False, primes=False):
    if graph or matrix:
        sub.add_argument("--graph", help="builtin graph name (e.g. petersen, hosi, c5, k4)")
        sub.add_argument("--edges", help="edge-list file path, '-' for stdin")
    if matrix:
        sub.add_argument("--matrix", help="matrix file path, '-' for stdin")
    if primes:
        sub.add_argument(
            "--prime", type=int, action="append", help="prime (repeatable)"
        )
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument(
        "--threads", type=int, help="worker threads (default CRITLAB_THREADS or 1)"
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="critlab", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    graph = subs.add_parser("graph", help="graph utilities")
    gsubs = graph.add_subparsers(dest="graph_command", required=True)
    info = gsubs.add_parser("info", help="basic graph facts")
    _add_common(info, graph=True)
    info.set_defaults(func=_cmd_graph_info)

    crit = subs.add_parser("critgroup", help="critical group of a graph")
    _add_common(crit, graph=True)
    crit.set_defaults(func=_cmd_critgroup)

    snf_cmd = subs.add_parser("snf", help="Smith normal form invariant factors")
    _add_common(snf_cmd, graph=True, matrix=True)
    snf_cmd.set_defaults(func=_cmd_snf)

    prof = subs.add_parser("profile", help="per-prime elementary-divisor profile")
    _add_common(prof, graph=True, matrix=True, primes=True)
    prof.set_defaults(func=_cmd_profile)

    filt = subs.add_parser("filtration", help="verify the filtration dimension identities")
    _add_common(filt, graph=True, matrix=True, primes=True)
    filt.set_defaults(func=_cmd_filtration)

    sand = subs.add_parser("sandpile", help="chip-firing oracle report")
    _add_common(sand, graph=True)
    sand.add_argument("--sink", type=int, default=0)
    sand.set_defaults(func=_cmd_sandpile)

    moore = subs.add_parser("moore", help="Moore/SRG constraint analysis")
    msubs = moore.add_subparsers(dest="moore_command", required=True)
    an = msubs.add_parser("analyze", help="critical-group constraints for SRG parameters")
    an.add_argument("--params", required=True, help="v,k,lambda,mu")
    an.add_argument("--prime", type=int, action="append", help="enumerate families for this prime")
    an.add_argument("--format", choices=("text", "json"), default="text")
    an.add_argument("--threads", type=int)
    an.set_defaults(func=_cmd_moore_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except (ContradictionError, InfeasibleParametersError, ExistenceUnknownError) as exc:
        sys.stderr.write(f"critlab: {exc}\n")
        return 2
    except (ValueError, SizeGuardError, OSError) as exc:
        sys.stderr.write(f"critlab: error: {exc}\n")
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
