"""Command-line interface: ``bananagon <command> ...``.

Exit codes: 0 success, 1 property or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import divisors
from .divisors import CapExceeded, format_divisor
from .experiments import conjecture_check, domain_count, selftest, table1_row
from .graph_core import BananaPath, BananaStar, GraphFormatError, describe, genus, read_graph, ripen
from .invariants import (
    NotComputable,
    bn_bound,
    compute_gonality,
    construct_gap,
    invariant_report,
    scramble_screewidth,
    star_witness,
)
from .path_dp import gonality_dp, positive_rank_path

TABLE1 = {
    2: [2],
    3: [1, 5],
    4: [1, 6, 33],
    5: [1, 9, 60, 255],
    6: [1, 13, 149, 655, 3178],
    7: [1, 17, 311, 1975, 9803, 46889],
    8: [1, 22, 643, 5311, 36634, 151517, 856496],
}


class Failure(Exception):
    """A checked property did not hold."""


def _emit(args, record: dict, tsv_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(record, sort_keys=True, indent=2))
    else:
        print("\n".join(tsv_lines))


def _witness_for(G):
    """A minimum-degree positive-rank divisor when one is cheap to produce."""
    if isinstance(G, BananaPath):
        return gonality_dp(G).witness
    if isinstance(G, BananaStar):
        return star_witness(G)
    try:
        return divisors.gonality_oracle(G).witness
    except CapExceeded:
        return None


def cmd_gonality(args) -> int:
    G = read_graph(args.graph)
    gon, method = compute_gonality(G)
    stats = {"method": method}
    if isinstance(G, BananaPath):
        result = gonality_dp(G)
        stats.update(states=result.stats["states"], pieces=result.stats["pieces"])
    if args.oracle_check:
        try:
            # Contracting solitary edges keeps gonality and shrinks the search.
            oracle = divisors.gonality_oracle(ripen(G)).gonality
        except CapExceeded as exc:
            raise NotComputable(f"--oracle-check: {exc}") from None
        stats["oracle"] = oracle
        if oracle != gon:
            raise Failure(f"{method} gives {gon} but the oracle gives {oracle}")
    witness = _witness_for(G) if args.witness else None
    g = genus(G)
    record = {
        "graph": describe(G),
        "gonality": gon,
        "sn_scw": scramble_screewidth(G),
        "genus": g,
        "bn_bound": bn_bound(g),
        "witness": list(witness) if witness is not None else None,
        "stats": stats,
    }
    lines = [f"graph\t{record['graph']}", f"gonality\t{gon}", f"method\t{method}"]
    if "oracle" in stats:
        lines.append(f"oracle\t{stats['oracle']}")
    if witness is not None:
        lines.append(f"witness\t{format_divisor(witness)}")
    _emit(args, record, lines)
    return 0


def cmd_invariants(args) -> int:
    G = read_graph(args.graph)
    report = invariant_report(G, witnesses=args.witness)
    record = report.to_dict()
    lines = [f"{k}\t{v}" for k, v in record.items() if k not in ("witnesses", "stats")]
    for k, v in report.witnesses.items():
        lines.append(f"witness.{k}\t{v}")
    _emit(args, record, lines)
    return 0


def cmd_table1(args) -> int:
    if args.max_vertices < 2:
        raise argparse.ArgumentTypeError("--max-vertices must be at least 2")
    rows = []
    failures = []
    for V in range(2, args.max_vertices + 1):
        row = table1_row(V, args.jobs)
        rows.append(row)
        if row.total != domain_count(V):
            failures.append(f"V={V}: {row.total} graphs, expected {domain_count(V)}")
        if any(g > V for g in row.counts):
            failures.append(f"V={V}: gonality above vertex count")
        if V in TABLE1 and row.as_list() != TABLE1[V]:
            failures.append(f"V={V}: {row.as_list()} differs from published {TABLE1[V]}")
    width = args.max_vertices
    if args.format == "json":
        print(json.dumps(
            [{"vertices": r.vertices, "counts": {str(g): c for g, c in r.counts.items()}} for r in rows],
            sort_keys=True, indent=2,
        ))
    else:
        print("vertices\t" + "\t".join(str(g) for g in range(2, width + 1)))
        for r in rows:
            print(f"{r.vertices}\t" + "\t".join(map(str, r.as_list(width))))
    if failures:
        raise Failure("; ".join(failures))
    return 0


def cmd_conjecture(args) -> int:
    if (args.max_vertices > 5 or args.max_bunch > 5) and not args.unsafe_large:
        raise argparse.ArgumentTypeError("ranges beyond 5 vertices / bunch size 5 need --unsafe-large")
    records = conjecture_check(args.max_vertices, args.max_bunch)
    bad = [r for r in records if r.violation]
    triggered = [r for r in records if r.triggered]
    if args.format == "json":
        print(json.dumps({
            "checked": len(records),
            "triggered": len(triggered),
            "counterexamples": len(bad),
            "records": [
                {"graph": str(r.graph), "gon1": r.gon1, "gon2": r.gon2, "gon3": r.gon3,
                 "genus": r.genus, "triggered": r.triggered,
                 "claim1_ok": r.claim1_ok, "claim2_ok": r.claim2_ok}
                for r in records
            ],
        }, sort_keys=True, indent=2))
    else:
        print("graph\tgon1\tgon2\tgon3\tgenus\tclaim1\tclaim2")
        for r in triggered:
            print(f"{r.graph}\t{r.gon1}\t{r.gon2}\t{r.gon3}\t{r.genus}\t{r.claim1_ok}\t{r.claim2_ok}")
        print(f"# checked {len(records)}, triggered {len(triggered)}, counterexamples {len(bad)}")
    if bad:
        raise Failure("counterexample(s): " + ", ".join(str(r.graph) for r in bad))
    return 0


def cmd_construct_gap(args) -> int:
    out = construct_gap(args.r, verify=args.verify)
    record = {
        "r": out.r, "a": out.a, "b": out.b, "n": out.n,
        "bunch_index": out.bunch_index,
        "bunch_vertices": [out.bunch_index, out.bunch_index + 1],
        "gon_before": out.gon_before, "gon_after": out.gon_after,
    }
    if args.verify:
        after = out.graph_after
        witness = gonality_dp(after).witness
        record["witness_after"] = {str(v): c for v, c in enumerate(witness) if c}
        if out.gon_after - out.gon_before != out.r:
            raise Failure(f"gap is {out.gon_after - out.gon_before}, expected {out.r}")
        if not positive_rank_path(after, witness):
            raise Failure("witness on the reduced graph lacks positive rank")
    _emit(args, record, [f"{k}\t{v}" for k, v in record.items()])
    return 0


def cmd_selftest(args) -> int:
    results = selftest(args.level, seed=args.seed)
    for s in results:
        status = "PASS" if s.ok else "FAIL"
        print(f"{status}\t{s.name}\t{s.checked} checks" + ("" if s.ok else f"\t{s.failures[0]}"))
    if not all(s.ok for s in results):
        raise Failure("selftest failed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["tsv", "json"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="bananagon", description="Gonality and chip-firing invariants of banana trees.")
    parser.add_argument("--format", choices=["tsv", "json"], default="tsv")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gonality", parents=[common], help="gonality of one graph")
    p.add_argument("graph", help="path:3,2,3 | star:4^1,3^3 | file in bt1 format")
    p.add_argument("--oracle-check", action="store_true", help="cross-check against brute force")
    p.add_argument("--witness", action="store_true", help="print a minimum positive-rank divisor")
    p.set_defaults(func=cmd_gonality)

    p = sub.add_parser("invariants", parents=[common], help="full invariant report")
    p.add_argument("graph")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("table1", parents=[common], help="gonality distribution of small banana paths")
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("conjecture", parents=[common], help="check the gon2 = gon1 + 1 conjecture")
    p.add_argument("--max-vertices", type=int, default=5)
    p.add_argument("--max-bunch", type=int, default=5)
    p.add_argument("--unsafe-large", action="store_true")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("construct-gap", parents=[common], help="edge deletion raising gonality by r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_construct_gap)

    p = sub.add_parser("selftest", parents=[common], help="oracle cross-check suites")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GraphFormatError, NotComputable, CapExceeded, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
