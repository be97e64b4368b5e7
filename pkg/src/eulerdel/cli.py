"""Command-line surface: solve, verify, gen, oracle, bench.

Exit codes: 0 = YES / verified, 1 = NO / rejected, 2 = error,
3 = oracle mismatch under --oracle-check.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import oracle as oracle_mod
from .graphs import Digraph, Graph, ParseError, edge_lines, mask_of, parse_instance
from .solver import (
    SolveResult,
    SolverError,
    solve_directed,
    solve_ucoed,
    solve_ueed,
)

MODES = ("ueed", "ucoed", "deed")


@dataclass
class RunConfig:
    mode: str
    k: int
    input: str
    seed: int = 0
    truncate: str = "random"
    field_bits: int = 16
    output: str = "text"
    oracle_check: bool = False

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode {self.mode!r} not in {MODES}")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if not 8 <= self.field_bits <= 32:
            raise ValueError("field-bits must lie in 8..32")
        if self.truncate not in ("random", "off"):
            raise ValueError("truncate must be 'random' or 'off'")


def _read_instance(path: str) -> Graph | Digraph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_instance(text)


def _dispatch_solve(inst: Graph | Digraph, cfg: RunConfig) -> SolveResult:
    kw = dict(truncate=cfg.truncate, seed=cfg.seed, field_bits=cfg.field_bits)
    if cfg.mode == "deed":
        if not isinstance(inst, Digraph):
            raise ValueError("deed needs a 'p arc' instance")
        return solve_directed(inst, cfg.k, **kw)
    if not isinstance(inst, Graph):
        raise ValueError(f"{cfg.mode} needs a 'p edge' instance")
    solver = solve_ueed if cfg.mode == "ueed" else solve_ucoed
    return solver(inst, cfg.k, **kw)


def cmd_solve(args: argparse.Namespace) -> int:
    cfg = RunConfig(args.mode, args.k, args.input, args.seed, args.truncate,
                    args.field_bits, "json" if args.json else "text",
                    args.oracle_check)
    inst = _read_instance(cfg.input)
    start = time.perf_counter()
    result = _dispatch_solve(inst, cfg)
    wall_ms = (time.perf_counter() - start) * 1000.0

    status = 0 if result.found else 1
    if cfg.oracle_check:
        if inst.m <= oracle_mod.BRUTE_FORCE_EDGE_CEILING:
            try:
                verdict = oracle_mod.brute_force(cfg.mode, inst, cfg.k)
            except ValueError:
                verdict = None
            if verdict is not None and (
                verdict.found != result.found
                or (result.found and verdict.min_size != result.size)
            ):
                print(
                    f"oracle mismatch: solver "
                    f"{'YES ' + str(result.size) if result.found else 'NO'}, "
                    f"oracle "
                    f"{'YES ' + str(verdict.min_size) if verdict.found else 'NO'}",
                    file=sys.stderr,
                )
                status = 3
        else:
            print("oracle-check skipped: instance above brute-force ceiling",
                  file=sys.stderr)

    if cfg.output == "json":
        pairs = inst.arcs if isinstance(inst, Digraph) else inst.edges
        payload = {
            "verdict": "YES" if result.found else "NO",
            "size": result.size,
            "edges": [[pairs[e][0] + 1, pairs[e][1] + 1] for e in (result.edges or ())],
            "rounds": len(result.rounds),
            "cells": sum(rs.cells for rs in result.rounds),
            "repset_sizes": [rs.max_family_kept for rs in result.rounds],
            "seed": result.seed,
            "wall_ms": wall_ms,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        if result.found:
            print(f"YES {result.size}")
            for line in edge_lines(inst, result.mask):
                print(line)
        else:
            print("NO")
    return status


def _parse_solution(text: str, inst: Graph | Digraph) -> int:
    """Edge mask for ``e u v`` / ``a u v`` lines; raises ValueError when
    a listed edge does not exist in the instance."""
    directed = isinstance(inst, Digraph)
    tag = "a" if directed else "e"
    index: dict[tuple[int, int], int] = {}
    for eid, (u, v) in enumerate(inst.arcs if directed else inst.edges):
        key = (u, v) if directed else (min(u, v), max(u, v))
        index[key] = eid
    mask = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != tag:
            raise ParseError(f"solution line {lineno}: expected '{tag} <u> <v>'")
        try:
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
        except ValueError:
            raise ParseError(f"solution line {lineno}: non-integer endpoint") from None
        key = (u, v) if directed else (min(u, v), max(u, v))
        eid = index.get(key)
        if eid is None:
            raise ValueError(f"solution line {lineno}: edge not in instance")
        if mask >> eid & 1:
            raise ValueError(f"solution line {lineno}: edge listed twice")
        mask |= 1 << eid
    return mask


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _read_instance(args.input)
    if args.mode == "deed" and not isinstance(inst, Digraph):
        raise ValueError("deed needs a 'p arc' instance")
    if args.mode != "deed" and not isinstance(inst, Graph):
        raise ValueError(f"{args.mode} needs a 'p edge' instance")
    text = sys.stdin.read() if args.solution == "-" else Path(args.solution).read_text()
    try:
        mask = _parse_solution(text, inst)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        print(f"verify: {exc}", file=sys.stderr)
        return 1
    if args.mode == "ueed" or args.mode == "deed":
        ok = inst.is_eulerian(mask)
    else:
        ok = inst.is_connected(mask) and len(inst.odd_vertices(mask)) == inst.n
    print("OK" if ok else "FAIL")
    return 0 if ok else 1


def cmd_gen(args: argparse.Namespace) -> int:
    inst, k, planted = oracle_mod.gen_yes_instance(
        args.mode, args.n, args.extra, args.seed, target_m=args.target_m)
    body = inst.serialize()
    planted_lines = [f"# planted deletion set, k={k}"]
    planted_lines += edge_lines(inst, mask_of(planted))
    sidecar = "\n".join(planted_lines) + "\n"
    if args.out:
        Path(args.out).write_text(body)
        Path(args.out + ".planted").write_text(sidecar)
    else:
        sys.stdout.write(body)
        sys.stdout.write("".join(f"# planted {line}\n"
                                 for line in edge_lines(inst, mask_of(planted))))
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    inst = _read_instance(args.input)
    verdict = oracle_mod.brute_force(args.mode, inst, args.k)
    if verdict.found:
        print(f"YES {verdict.min_size}")
        for line in edge_lines(inst, verdict.witness):
            print(line)
        return 0
    print("NO")
    return 1


BENCH_GRID = ((9, 1), (12, 2), (15, 3), (18, 4))


def cmd_bench(args: argparse.Namespace) -> int:
    modes = [args.mode] if args.mode else ["ueed", "deed"]
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["n", "m", "k", "mode", "verdict", "size", "wall_ms",
                         "max_cell", "repset_max"])
        for mode in modes:
            for row, (n, extra) in enumerate(BENCH_GRID):
                inst, k, _ = oracle_mod.gen_yes_instance(
                    mode, n, extra, args.seed * 100 + row, target_m=2 * n)
                start = time.perf_counter()
                result = _dispatch_solve(inst, RunConfig(mode, k, "-", args.seed))
                wall_ms = (time.perf_counter() - start) * 1000.0
                writer.writerow([
                    inst.n, inst.m, k, mode,
                    "YES" if result.found else "NO",
                    result.size if result.found else "",
                    f"{wall_ms:.2f}",
                    max((rs.cells for rs in result.rounds), default=0),
                    max((rs.max_family_kept for rs in result.rounds), default=0),
                ])
    finally:
        if args.out:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulerdel",
        description="Exact solvers for Eulerian edge-deletion problems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_k: bool = True) -> None:
        p.add_argument("--mode", required=True, choices=MODES)
        p.add_argument("--input", required=True,
                       help="instance file, or - for stdin")
        if with_k:
            p.add_argument("--k", type=int, required=True)

    p_solve = sub.add_parser("solve", help="run the exact solver")
    add_common(p_solve)
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--truncate", choices=("random", "off"), default="random")
    p_solve.add_argument("--field-bits", type=int, default=16)
    p_solve.add_argument("--json", action="store_true")
    p_solve.add_argument("--oracle-check", action="store_true")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="check a deletion set")
    add_common(p_verify, with_k=False)
    p_verify.add_argument("--solution", required=True,
                          help="file of 'e u v' / 'a u v' lines, or - for stdin")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a planted YES instance")
    p_gen.add_argument("--mode", required=True, choices=("ueed", "deed"))
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--extra", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--target-m", type=int, default=None)
    p_gen.add_argument("--out", default=None,
                       help="instance path; planted set goes to <out>.planted")
    p_gen.set_defaults(func=cmd_gen)

    p_oracle = sub.add_parser("oracle", help="brute-force reference answer")
    add_common(p_oracle)
    p_oracle.set_defaults(func=cmd_oracle)

    p_bench = sub.add_parser("bench", help="seeded scaling grid, CSV output")
    p_bench.add_argument("--mode", choices=("ueed", "deed"), default=None)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", default=None)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError, SolverError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
