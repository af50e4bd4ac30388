"""Command-line front end.

Subcommands: census (the cascade driver), chif (fractional chromatic
numbers for a graph6 stream), classify (per-graph verdicts), forsearch
(numerical FOR search), decode/encode (graph6 <-> adjacency-list text).
The census exits 0 exactly when no graph survives the cascade.
"""

from __future__ import annotations

import argparse
import json
import sys

from .graphs import Graph
from .graph6 import decode, encode, read_graph6
from .fracchromatic import frac_chromatic, serialize_certificate
from .census import run_census, classify, emit_survivors, CASCADE
from .orthrep import search_for, serialize_rep


def _parse_orders(text: str):
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _cmd_census(args) -> int:
    orders = _parse_orders(args.orders)
    reports = run_census(
        orders,
        total_shards=args.shards,
        shard_index=args.shard_index,
        checkpoint_path=args.checkpoint,
        threads=args.threads,
        survivor_stage=args.emit_survivors,
        workdir=args.workdir,
    )
    if args.report == "json":
        print(json.dumps([r.to_json_dict() for r in reports], indent=2))
    else:
        hdr = ["order", "total"] + [f"({fid})" for fid in CASCADE]
        print("  ".join(f"{h:>9}" for h in hdr))
        for r in reports:
            row = [r.order, r.total] + [r.remaining_after[fid] for fid in CASCADE]
            print("  ".join(f"{c:>9}" for c in row))
    if args.emit_survivors:
        for r in reports:
            out = f"survivors_after{args.emit_survivors}_n{r.order}.g6"
            cnt = emit_survivors(r, args.emit_survivors, out)
            print(f"wrote {cnt} graphs to {out}", file=sys.stderr)
    survivors = sum(r.survivor_count for r in reports)
    if survivors:
        print(f"{survivors} graphs survived the cascade", file=sys.stderr)
        return 1
    return 0


def _cmd_chif(args) -> int:
    for g in read_graph6(sys.stdin):
        value, cert = frac_chromatic(g)
        if args.certificates:
            sys.stdout.write(serialize_certificate(encode(g), cert))
            sys.stdout.write("\n")
        else:
            print(f"{value.numerator}/{value.denominator}")
    return 0


def _cmd_classify(args) -> int:
    for g in read_graph6(sys.stdin):
        v = classify(g)
        chi = (f"{v.chi_f.numerator}/{v.chi_f.denominator}"
               if v.chi_f is not None else "-")
        witness = json.dumps(v.witness_json())
        print(f"{encode(g)}\t{v.filter_id}\tchi_f={chi}\twitness={witness}")
    return 0


def _cmd_forsearch(args) -> int:
    g = decode(args.g6)
    rep = search_for(g, args.dim, budget=args.budget, seed=args.seed,
                     real=args.real_only)
    if rep is None:
        print(f"no FOR found in dimension {args.dim} within budget", file=sys.stderr)
        return 1
    sys.stdout.write(serialize_rep(args.g6, rep))
    return 0


def _cmd_decode(args) -> int:
    for g in read_graph6(sys.stdin):
        print(f"n {g.n}")
        for v in range(g.n):
            print(f"{v}: {' '.join(map(str, g.neighbors(v)))}")
        print()
    return 0


def _cmd_encode(args) -> int:
    order = None
    edges = []
    def flush():
        nonlocal order, edges
        if order is not None:
            print(encode(Graph.from_edges(order, edges)))
        order, edges = None, []

    for line in sys.stdin:
        line = line.strip()
        if not line:
            flush()
            continue
        if line.startswith("n "):
            flush()
            order = int(line.split()[1])
        else:
            v_part, _, rest = line.partition(":")
            v = int(v_part)
            for u in rest.split():
                u = int(u)
                if u > v:
                    edges.append((v, u))
    flush()
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="raycensus")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("census", help="run the filter cascade over enumerated graphs")
    p.add_argument("--orders", default="1..7", help="order range, e.g. 1..9 or 6")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--shard-index", type=int, default=None)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--emit-survivors", default=None, metavar="STAGE",
                   choices=list(CASCADE))
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--workdir", default=None)
    p.add_argument("--report", choices=("json", "table"), default="table")
    p.set_defaults(fn=_cmd_census)

    p = sub.add_parser("chif", help="fractional chromatic numbers for graph6 on stdin")
    p.add_argument("--certificates", action="store_true",
                   help="dump full exact certificates instead of bare values")
    p.set_defaults(fn=_cmd_chif)

    p = sub.add_parser("classify", help="cascade verdict for each graph6 line on stdin")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("forsearch", help="numerical faithful-orthogonal-representation search")
    p.add_argument("--g6", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10 ** 6)
    p.add_argument("--real-only", action="store_true")
    p.set_defaults(fn=_cmd_forsearch)

    p = sub.add_parser("decode", help="graph6 on stdin -> adjacency lists")
    p.set_defaults(fn=_cmd_decode)

    p = sub.add_parser("encode", help="adjacency lists on stdin -> graph6")
    p.set_defaults(fn=_cmd_encode)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
