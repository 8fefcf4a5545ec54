"""Command-line interface: ``galois <subcommand>``.

Subcommands::

    lattice    build the concept lattice of a context
    concepts   enumerate concepts only (no edges)
    iceberg    build the frequent sub-lattice for a support threshold
    check      verify the builders against the brute-force referee
    gen        emit a random context (cross-table format)
    bench      time both builders and report work counters

Inputs come from ``--input PATH`` or standard input (``-``, the default)
in one of the three formats of :mod:`galois_lattice.formats`.  Results go
to standard output; ``--stats`` adds a JSON counters sidecar on standard
error so stdout stays machine-parseable.  Exit codes: 0 success, 1 I/O
error, 2 bad flags or unparseable input, 3 verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import List, Optional, Tuple

from .builders import (
    ConceptLattice, build_lattice_bfs_basic, build_lattice_two_level,
    canonical_serialization, complete_bottom, enumerate_concepts,
    _iceberg_with_stats,
)
from .context import Context
from .formats import (
    ParseError, lattice_document, parse_context, write_context,
    write_lattice,
)
from .oracle import OracleGuardError, oracle_concepts, oracle_hasse

__all__ = ["main"]

_DENSITIES = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="galois",
        description="Concept (Galois) lattice construction toolkit.")
    sub = top.add_subparsers(dest="command", required=True)

    def add_io(p, out_default="text"):
        p.add_argument("--input", default="-", metavar="PATH",
                       help="input file, or - for standard input")
        p.add_argument("--format", default="cxt",
                       choices=["cxt", "fimi", "csv"],
                       help="input format (default cxt)")
        p.add_argument("--out", default=out_default,
                       choices=["text", "json", "dot"],
                       help=f"output kind (default {out_default})")
        p.add_argument("--stats", action="store_true",
                       help="write build counters as JSON to stderr")

    p = sub.add_parser("lattice", help="build the concept lattice")
    add_io(p)
    p.add_argument("--algo", default="condensed",
                   choices=["basic", "condensed"],
                   help="construction algorithm (default condensed)")
    p.add_argument("--bottom", default="natural",
                   choices=["natural", "completed"],
                   help="natural output or adjoin the formal bottom")

    p = sub.add_parser("concepts", help="enumerate concepts only")
    add_io(p)

    p = sub.add_parser("iceberg", help="frequent sub-lattice")
    add_io(p)
    p.add_argument("--min-support", type=int, default=1, metavar="K",
                   help="minimum extent size (default 1)")
    p.add_argument("--mode", default="extent-dict",
                   choices=["extent-dict", "intent-dict"],
                   help="closure/existence machinery (default extent-dict)")

    p = sub.add_parser("check", help="verify builders against the referee")
    p.add_argument("--input", default=None, metavar="PATH",
                   help="context file to check (or - for stdin)")
    p.add_argument("--format", default="cxt",
                   choices=["cxt", "fimi", "csv"])
    p.add_argument("--fuzz", type=int, default=0, metavar="N",
                   help="check N random contexts instead of an input file")
    p.add_argument("--max-n", type=int, default=8, metavar="A",
                   help="fuzz: maximum object count (default 8)")
    p.add_argument("--max-m", type=int, default=8, metavar="B",
                   help="fuzz: maximum attribute count (default 8)")
    p.add_argument("--seed", type=int, default=0, metavar="S",
                   help="fuzz: base random seed (default 0)")

    p = sub.add_parser("gen", help="emit a random context")
    p.add_argument("--n", type=int, default=8, help="objects (default 8)")
    p.add_argument("--m", type=int, default=8, help="attributes (default 8)")
    p.add_argument("--density", type=float, default=0.3,
                   help="incidence probability per cell (default 0.3)")
    p.add_argument("--seed", type=int, default=0, help="random seed")

    p = sub.add_parser("bench", help="time both builders")
    p.add_argument("--input", default=None, metavar="PATH",
                   help="context file (omit to generate one)")
    p.add_argument("--format", default="cxt",
                   choices=["cxt", "fimi", "csv"])
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--m", type=int, default=25)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    return top


def _read_input(path: str, fmt: str) -> Context:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_context(text, fmt)


def random_context(rng: random.Random, n: int, m: int,
                   density: float) -> Context:
    """Bernoulli context: each cell incident with probability ``density``.

    Cells are drawn row-major, one uniform draw per cell, so a fixed seed
    pins the exact incidence.
    """
    rows = [[i for i in range(m) if rng.random() < density]
            for _ in range(n)]
    return Context(n, m, rows, [f"t{k}" for k in range(n)],
                   [str(i) for i in range(m)])


def _emit_stats(stats) -> None:
    sys.stderr.write(json.dumps(stats.as_dict()) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_lattice(args) -> int:
    ctx = _read_input(args.input, args.format)
    builder = (build_lattice_two_level if args.algo == "condensed"
               else build_lattice_bfs_basic)
    lat, stats = builder(ctx)
    if args.bottom == "completed":
        lat = complete_bottom(lat, ctx)
    doc = lattice_document(lat, ctx, algorithm=args.algo,
                           stats=stats.as_dict() if args.stats else None)
    sys.stdout.write(write_lattice(doc, args.out))
    if args.stats:
        _emit_stats(stats)
    return 0


def _cmd_concepts(args) -> int:
    ctx = _read_input(args.input, args.format)
    lat, stats = build_lattice_two_level(ctx)
    doc = lattice_document(lat, ctx, algorithm="condensed",
                           stats=stats.as_dict() if args.stats else None,
                           include_edges=False)
    sys.stdout.write(write_lattice(doc, args.out))
    if args.stats:
        _emit_stats(stats)
    return 0


def _cmd_iceberg(args) -> int:
    ctx = _read_input(args.input, args.format)
    lat, stats = _iceberg_with_stats(ctx, args.min_support, args.mode,
                                     engine="auto")
    doc = lattice_document(lat, ctx, algorithm="condensed",
                           stats=stats.as_dict() if args.stats else None)
    sys.stdout.write(write_lattice(doc, args.out))
    if args.stats:
        _emit_stats(stats)
    return 0


def _cmd_gen(args) -> int:
    if not (0.0 <= args.density <= 1.0):
        raise ValueError(f"density must be in [0, 1], got {args.density}")
    if args.n < 0 or args.m < 0:
        raise ValueError("n and m must be >= 0")
    ctx = random_context(random.Random(args.seed), args.n, args.m,
                         args.density)
    sys.stdout.write(write_context(ctx))
    return 0


def _cmd_bench(args) -> int:
    if args.input is not None:
        ctx = _read_input(args.input, args.format)
    else:
        ctx = random_context(random.Random(args.seed), args.n, args.m,
                             args.density)
    report = {"n": ctx.n, "m": ctx.m}
    for algo, builder in (("basic", build_lattice_bfs_basic),
                          ("condensed", build_lattice_two_level)):
        t0 = time.perf_counter()
        lat, stats = builder(ctx)
        seconds = time.perf_counter() - t0
        report[algo] = {"seconds": round(seconds, 4),
                        "touches": stats.touches_total}
        report["concepts"] = len(lat)
        report["edges"] = lat.edge_count
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return 0


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def _diff_concept_sets(got, want) -> Optional[str]:
    missing = want - got
    if missing:
        c = min(missing, key=lambda c: (c.extent, c.intent))
        return f"missing concept (extent={c.extent}, intent={c.intent})"
    extra = got - want
    if extra:
        c = min(extra, key=lambda c: (c.extent, c.intent))
        return f"spurious concept (extent={c.extent}, intent={c.intent})"
    return None


def _diff_edge_sets(got, want) -> Optional[str]:
    def key(e):
        return (e[0].extent, e[1].extent)
    missing = want - got
    if missing:
        u, v = min(missing, key=key)
        return f"missing edge {u.extent} -> {v.extent}"
    extra = got - want
    if extra:
        u, v = min(extra, key=key)
        return f"spurious edge {u.extent} -> {v.extent}"
    return None


def _lattice_concept_edges(lat: ConceptLattice):
    concepts = set(lat.concepts)
    edges = {(lat.concept(u), lat.concept(v)) for u, v in lat.edges}
    return concepts, edges


def check_one(ctx: Context) -> Optional[str]:
    """Full verification of one context; None if everything matches."""
    want_concepts = oracle_concepts(ctx)
    want_edges = oracle_hasse(want_concepts)
    for name, builder in (("condensed", build_lattice_two_level),
                          ("basic", build_lattice_bfs_basic)):
        lat, _ = builder(ctx)
        full = complete_bottom(lat, ctx)
        got_c, got_e = _lattice_concept_edges(full)
        msg = _diff_concept_sets(got_c, want_concepts)
        if msg:
            return f"{name} builder: {msg}"
        msg = _diff_edge_sets(got_e, want_edges)
        if msg:
            return f"{name} builder: {msg}"
    lat_c, _ = build_lattice_two_level(ctx)
    lat_b, _ = build_lattice_bfs_basic(ctx)
    if canonical_serialization(lat_c) != canonical_serialization(lat_b):
        return "basic and condensed serializations differ"
    seq = list(enumerate_concepts(ctx))
    want_natural = {c for c in want_concepts if c.extent or ctx.n == 0}
    if len(seq) != len(set(seq)):
        return "enumerate produced a duplicate concept"
    msg = _diff_concept_sets(set(seq), want_natural)
    if msg:
        return f"enumerate: {msg}"
    ice, _ = _iceberg_with_stats(ctx, 1, "extent-dict", "auto")
    if canonical_serialization(ice) != canonical_serialization(lat_c):
        return "iceberg at threshold 1 differs from the natural lattice"
    return None


def _cmd_check(args) -> int:
    cases: List[Tuple[str, Context]] = []
    if args.fuzz > 0:
        for k in range(args.fuzz):
            rng = random.Random(args.seed * 1_000_003 + k)
            n = rng.randint(1, max(1, args.max_n))
            m = rng.randint(1, max(1, args.max_m))
            density = _DENSITIES[k % len(_DENSITIES)]
            cases.append((f"case {k}", random_context(rng, n, m, density)))
    else:
        path = args.input if args.input is not None else "-"
        cases.append((path, _read_input(path, args.format)))
    for label, ctx in cases:
        divergence = check_one(ctx)
        if divergence is None:
            print(f"{label}: PASS ({ctx.n}x{ctx.m})")
        else:
            print(f"{label}: FAIL ({ctx.n}x{ctx.m})")
            print(f"first divergence: {divergence}")
            return 3
    return 0


_COMMANDS = {
    "lattice": _cmd_lattice,
    "concepts": _cmd_concepts,
    "iceberg": _cmd_iceberg,
    "check": _cmd_check,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        sys.stderr.write(f"galois: parse error: {exc}\n")
        return 2
    except (ValueError, OracleGuardError) as exc:
        sys.stderr.write(f"galois: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"galois: i/o error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
