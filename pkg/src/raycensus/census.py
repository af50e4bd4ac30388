"""The filter cascade and the census driver.

Every enumerated graph runs through the cascade in a fixed order:

  (1)    G or its complement disconnected;
  (2.1)  chi_f(G) <= omega(G)           (with a witnessing maximum clique);
  (2.2)  the join of n edgeless pairs and m single vertices, 2n+m = t,
         t the least integer >= chi_f(G), m = t mod 2, is a subgraph;
  (3.1)-(3.7)  one of the seven fixed patterns is an induced subgraph and
         chi_f(G) <= its FOR dimension.

The first filter that fires wins; a graph surviving all ten is a
counterexample candidate and the census is expected to find none.
chi_f is computed once, lazily, when filter (2.1) first needs it.

`run_census` drives per-order enumerations, optionally split into shards
(deterministic partition, see generate), optionally in a process pool, and
aggregates per-filter counts into one CensusReport per order.  Checkpoint
records -- one per finished shard, CRC-protected -- make long runs
restartable.  Reports are independent of shard layout and worker count:
counts merge by summation and survivor streams are sorted by canonical
form.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import zlib

from .graphs import Graph
from .canon import canonical_form
from .graph6 import encode, decode
from .generate import enumerate_shard
from .cliques import (maximal_cliques_masks, maximal_independent_sets,
                      find_pair_structure, verify_pair_structure,
                      PairStructureWitness)
from .fracchromatic import frac_chromatic
from .induced import FILTER_TABLE, find_induced_embedding, verify_embedding, Embedding

CASCADE = ("1", "2.1", "2.2", "3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7")
_STAGE_POS = {fid: i for i, fid in enumerate(CASCADE)}
_STAGE_POS["survived"] = len(CASCADE)


class CliqueWitness:
    """A clique whose size matches the fractional chromatic number."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        self.vertices = tuple(vertices)

    def __repr__(self):
        return f"CliqueWitness({self.vertices})"


class FilterVerdict:
    __slots__ = ("filter_id", "witness", "chi_f")

    def __init__(self, filter_id, witness, chi_f):
        self.filter_id = filter_id
        self.witness = witness
        self.chi_f = chi_f

    def __repr__(self):
        return f"FilterVerdict({self.filter_id}, chi_f={self.chi_f})"

    def witness_json(self):
        w = self.witness
        if w is None:
            return None
        if isinstance(w, CliqueWitness):
            return {"clique": list(w.vertices)}
        if isinstance(w, PairStructureWitness):
            return {"pairs": [list(p) for p in w.pairs],
                    "singletons": list(w.singletons)}
        if isinstance(w, tuple) and isinstance(w[1], Embedding):
            return {"pattern": w[0], "embedding": list(w[1].map)}
        raise TypeError(f"unknown witness {w!r}")


def classify(g: Graph) -> FilterVerdict:
    """First firing filter for g, with witness and (lazy) chi_f."""
    if not g.is_connected() or not g.complement().is_connected():
        return FilterVerdict("1", None, None)
    fam = maximal_independent_sets(g)
    chi, _cert = frac_chromatic(g, fam)
    cliques = maximal_cliques_masks(g.n, g.adj)
    best = max(cliques, key=lambda m: m.bit_count())
    omega = best.bit_count()
    if chi <= omega:
        verts = []
        m = best
        while m:
            verts.append((m & -m).bit_length() - 1)
            m &= m - 1
        return FilterVerdict("2.1", CliqueWitness(verts), chi)
    t = math.ceil(chi)
    pw = find_pair_structure(g, t)
    if pw is not None:
        return FilterVerdict("2.2", pw, chi)
    if g.n >= 6:  # smallest pattern has 6 vertices
        hit = None
        for f in FILTER_TABLE:
            if chi > f.xi_upper or f.graph.n > g.n:
                continue
            emb = find_induced_embedding(f.graph, g)
            if emb is not None:
                hit = (f, emb)
                break
        if hit is not None:
            f, emb = hit
            return FilterVerdict(f.filter_id, (f.name, emb), chi)
    return FilterVerdict("survived", None, chi)


def verify_verdict(g: Graph, v: FilterVerdict) -> bool:
    """Independent re-check of a verdict's witness and its dimension bound.

    For an eliminating filter the witness must re-verify against g and the
    implied FOR-dimension lower bound must be >= chi_f.
    """
    if v.filter_id == "1":
        return not g.is_connected() or not g.complement().is_connected()
    if v.filter_id == "survived":
        return True
    if v.chi_f is None:
        return False
    if v.filter_id == "2.1":
        w = v.witness
        for i, a in enumerate(w.vertices):
            for b in w.vertices[i + 1:]:
                if not g.has_edge(a, b):
                    return False
        return v.chi_f <= len(w.vertices)
    if v.filter_id == "2.2":
        w = v.witness
        return verify_pair_structure(g, w) and v.chi_f <= w.t
    # 3.x: induced embedding of the named pattern
    name, emb = v.witness
    fg = next((f for f in FILTER_TABLE if f.name == name), None)
    if fg is None or fg.filter_id != v.filter_id:
        return False
    return verify_embedding(fg.graph, g, emb) and v.chi_f <= fg.xi_upper


# ===== census ==============================================================

class CensusReport:
    """Per-order cascade outcome: totals, remaining-after counts, survivors."""

    __slots__ = ("order", "total", "remaining_after", "eliminated_by",
                 "survivors", "survivor_stage", "survivor_files")

    def __init__(self, order, total, eliminated_by, survivors,
                 survivor_stage=None, survivor_files=()):
        self.order = order
        self.total = total
        self.eliminated_by = dict(eliminated_by)
        remaining = {}
        run = total
        for fid in CASCADE:
            run -= self.eliminated_by.get(fid, 0)
            remaining[fid] = run
        self.remaining_after = remaining
        self.survivors = list(survivors)
        self.survivor_stage = survivor_stage
        self.survivor_files = list(survivor_files)

    @property
    def survivor_count(self):
        return self.remaining_after[CASCADE[-1]]

    def to_json_dict(self):
        return {"order": self.order, "total": self.total,
                "remaining": {fid: self.remaining_after[fid] for fid in CASCADE}}

    def __eq__(self, other):
        return (isinstance(other, CensusReport)
                and self.order == other.order
                and self.total == other.total
                and self.remaining_after == other.remaining_after
                and self.survivors == other.survivors)

    def __repr__(self):
        return (f"CensusReport(order={self.order}, total={self.total}, "
                f"remaining={self.remaining_after})")


class CheckpointError(RuntimeError):
    pass


def _survives_stage(filter_id: str, stage: str) -> bool:
    return _STAGE_POS[filter_id] > _STAGE_POS[stage]


def _record_crc(rec: dict) -> int:
    payload = json.dumps({k: v for k, v in sorted(rec.items()) if k != "crc"},
                         sort_keys=True).encode()
    return zlib.crc32(payload)


def run_shard(n: int, shard: int, total_shards: int,
              survivor_stage=None, spool_path=None, fast=None) -> dict:
    """Census over one enumeration shard; returns a checkpoint record."""
    eliminated = {fid: 0 for fid in CASCADE}
    survived = 0
    finals = []
    spool = open(spool_path, "w") if spool_path else None
    spool_crc = 0
    spool_count = 0

    use_fast = _fastpath_enabled(fast)
    try:
        if use_fast:
            from . import _fastpath
            counter = _fastpath.census_shard(
                n, shard, total_shards, eliminated, finals,
                survivor_stage, spool)
            total, spool_count, spool_crc, survived = counter
        else:
            def sink(g):
                nonlocal survived, spool_crc, spool_count
                v = classify(g)
                if v.filter_id == "survived":
                    survived += 1
                    finals.append(encode(g))
                else:
                    eliminated[v.filter_id] += 1
                if survivor_stage is not None and _survives_stage(v.filter_id, survivor_stage):
                    line = encode(g)
                    if spool is not None:
                        spool.write(line + "\n")
                    spool_crc = zlib.crc32(canonical_form(g), spool_crc)
                    spool_count += 1

            total = enumerate_shard(n, shard, total_shards, sink, fast=False)
    finally:
        if spool is not None:
            spool.close()

    rec = {"kind": "shard", "n": n, "shard": shard, "total_shards": total_shards,
           "stage": survivor_stage, "count": total, "eliminated": eliminated,
           "survived": survived, "survivors": sorted(finals),
           "spool": os.path.basename(spool_path) if spool_path else None,
           "spool_count": spool_count, "spool_crc": spool_crc}
    rec["crc"] = _record_crc(rec)
    return rec


def _fastpath_enabled(fast) -> bool:
    if fast is False or os.environ.get("RAYCENSUS_PURE") == "1":
        return False
    try:
        from . import _fastpath  # noqa: F401
        return True
    except Exception:
        if fast is True:
            raise
        return False


def _worker(args):
    return run_shard(*args)


def load_checkpoint(path):
    """Parse a checkpoint file; raises CheckpointError on a bad record."""
    done = {}
    if not path or not os.path.exists(path):
        return done
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise CheckpointError(f"{path}:{lineno}: unparseable record") from e
            if rec.get("crc") != _record_crc(rec):
                raise CheckpointError(f"{path}:{lineno}: checksum mismatch")
            key = (rec["n"], rec["shard"], rec["total_shards"], rec.get("stage"))
            done[key] = rec
    return done


def run_census(orders, total_shards: int = 1, shard_index=None,
               checkpoint_path=None, threads: int = 1,
               survivor_stage=None, workdir=None, fast=None):
    """Run the cascade for each order; returns a list of CensusReport.

    orders: iterable of orders (each 1..12).  With shard_index=None all
    shards run (a complete census); otherwise only that shard is processed
    and the report covers just its slice.  Finished shards are appended to
    the checkpoint file and skipped on restart.
    """
    orders = list(orders)
    if survivor_stage is not None and survivor_stage not in CASCADE:
        raise ValueError(f"unknown cascade stage {survivor_stage!r}")
    if workdir is None:
        workdir = (os.path.dirname(os.path.abspath(checkpoint_path))
                   if checkpoint_path else tempfile.mkdtemp(prefix="raycensus_"))
    os.makedirs(workdir, exist_ok=True)
    done = load_checkpoint(checkpoint_path)
    ckpt = open(checkpoint_path, "a") if checkpoint_path else None

    shard_list = ([shard_index] if shard_index is not None
                  else list(range(total_shards)))
    reports = []
    try:
        for n in orders:
            tasks = []
            recs = []
            for s in shard_list:
                key = (n, s, total_shards, survivor_stage)
                if key in done:
                    recs.append(done[key])
                    continue
                spool = (os.path.join(
                    workdir, f"spool_n{n}_s{s}of{total_shards}.g6")
                    if survivor_stage is not None else None)
                tasks.append((n, s, total_shards, survivor_stage, spool, fast))
            if tasks:
                if threads > 1 and len(tasks) > 1:
                    import multiprocessing
                    with multiprocessing.Pool(threads) as pool:
                        for rec in pool.imap_unordered(_worker, tasks):
                            recs.append(rec)
                            if ckpt:
                                ckpt.write(json.dumps(rec) + "\n")
                                ckpt.flush()
                else:
                    for t in tasks:
                        rec = run_shard(*t)
                        recs.append(rec)
                        if ckpt:
                            ckpt.write(json.dumps(rec) + "\n")
                            ckpt.flush()
            total = sum(r["count"] for r in recs)
            eliminated = {fid: sum(r["eliminated"][fid] for r in recs)
                          for fid in CASCADE}
            finals = sorted(
                (g6 for r in recs for g6 in r["survivors"]),
                key=lambda g6: canonical_form(decode(g6)))
            spools = [os.path.join(workdir, r["spool"]) for r in recs
                      if r.get("spool")]
            reports.append(CensusReport(n, total, eliminated, finals,
                                        survivor_stage, spools))
    finally:
        if ckpt:
            ckpt.close()
    return reports


def emit_survivors(report: CensusReport, stage: str, path: str) -> int:
    """Write the graphs remaining after `stage`, sorted by canonical form."""
    if stage == CASCADE[-1] or stage == "survived":
        lines = list(report.survivors)
    elif report.survivor_stage == stage:
        lines = []
        for spath in report.survivor_files:
            with open(spath) as f:
                lines.extend(ln.strip() for ln in f if ln.strip())
        lines.sort(key=lambda g6: canonical_form(decode(g6)))
    else:
        raise ValueError(f"survivors after stage {stage!r} were not recorded")
    with open(path, "w") as f:
        for ln in lines:
            f.write(ln + "\n")
    return len(lines)
