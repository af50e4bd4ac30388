"""Isomorph-free exhaustive graph generation by canonical augmentation.

An order-(k+1) graph is built from an order-k parent by attaching a new
vertex to a subset S of the old vertices.  A child is *accepted* exactly
when the new vertex lies in the automorphism orbit of the vertex occupying
the last canonical position -- equivalently, deleting the canonically-last
vertex recovers the parent's isomorphism class.  One representative
subset per Aut(parent)-orbit is tried, so every isomorphism class of every
order appears exactly once along the generation tree and no seen-set is
ever stored.

Two cheap rejections cut most of the work before any canonical search:

* the canonical order puts a minimum-degree vertex last (the initial
  refinement splits by descending degree), so a subset S can only yield an
  accepted child if |S| <= min over old vertices of their child degree --
  this test is vectorized over all 2^k subsets at once;
* after one equitable refinement of the child, the new vertex must sit in
  the last cell (orbits refine equitable cells); if the refinement is
  discrete the automorphism group is trivial and acceptance reduces to
  "the new vertex IS the last cell".

Sharding for distributed runs: the subtree below each accepted graph of
order D = max(1, min(8, n-1)) belongs to the shard indexed by
crc32(canonical form) mod total_shards.  The partition is deterministic,
independent of traversal order, and the shards' outputs are disjoint with
union equal to the full enumeration.
"""

from __future__ import annotations

import os
import zlib

import numpy as np

from .graphs import Graph
from .canon import refine, canonicalize, _leaf_key, key_to_form_bytes
from .graph6 import read_graph6

MAX_ENUM_ORDER = 12


def _kernels(fast):
    """The compiled accept layer, or None for the pure reference path."""
    if fast is False or os.environ.get("RAYCENSUS_PURE") == "1":
        return None
    try:
        from . import _fastpath
        return _fastpath
    except Exception:
        if fast is True:
            raise
        return None

_subset_tables_cache: dict = {}


def _subset_tables(k: int):
    """All subsets of [0,k) with membership matrix and popcounts."""
    tab = _subset_tables_cache.get(k)
    if tab is None:
        masks = np.arange(1 << k, dtype=np.int64)
        mem = ((masks[:, None] >> np.arange(k, dtype=np.int64)) & 1)
        sizes = mem.sum(axis=1)
        tab = (masks, mem, sizes)
        _subset_tables_cache[k] = tab
    return tab


def _candidate_subsets(degs, k: int):
    """Subsets passing the min-degree test, as a numpy int64 array.

    A child can only be accepted if the new vertex (degree |S|) has
    minimum degree in the child, i.e. |S| <= min_u(deg(u) + [u in S]).
    """
    if k == 0:
        return np.zeros(1, dtype=np.int64)
    masks, mem, sizes = _subset_tables(k)
    child_degs = np.asarray(degs, dtype=np.int64) + mem
    ok = sizes <= child_degs.min(axis=1)
    return masks[ok]


def _apply_perm_mask(mask: int, perm) -> int:
    out = 0
    while mask:
        v = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        out |= 1 << perm[v]
    return out


def _is_orbit_min(s: int, gens) -> bool:
    """Is s the smallest subset in its orbit under the generated group?"""
    seen = {s}
    stack = [s]
    while stack:
        m = stack.pop()
        for gamma in gens:
            t = _apply_perm_mask(m, gamma)
            if t < s:
                return False
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return True


def _accept(child_adj, nk: int):
    """Canonical-augmentation acceptance test for the new vertex nk-1.

    Returns (key, generators) if accepted, else None.  `key` is the
    canonical adjacency-row tuple, `generators` generate Aut(child).
    """
    cells = refine(child_adj, [list(range(nk))])
    new = nk - 1
    if new not in cells[-1]:
        return None
    if len(cells) == nk:  # discrete refinement => trivial automorphism group
        if cells[-1][0] != new:
            return None
        order = tuple(c[0] for c in cells)
        return _leaf_key(child_adj, order), []
    res = canonicalize(Graph(nk, tuple(child_adj)))
    last = res.order[nk - 1]
    if res.orbit_reps[last] != res.orbit_reps[new]:
        return None
    return res.key, res.generators


def _shard_of(key, nk: int, total_shards: int) -> int:
    return zlib.crc32(key_to_form_bytes(nk, key)) % total_shards


def enumerate_shard(n: int, shard: int, total_shards: int, sink=None,
                    fast=None) -> int:
    """Emit one shard of the order-n enumeration; returns the count emitted.

    With total_shards=1 this is the full isomorph-free enumeration.  The
    sink (if given) receives each Graph; sinks are invoked in a fixed
    depth-first order in this single-threaded traversal.  The compiled
    accept layer is used when available (fast=False or RAYCENSUS_PURE=1
    forces the reference path); both paths emit the identical sequence.
    """
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise ValueError(f"order {n} out of range 1..{MAX_ENUM_ORDER}")
    if not (total_shards >= 1 and 0 <= shard < total_shards):
        raise ValueError(f"invalid shard {shard}/{total_shards}")

    kern = _kernels(fast)
    depth = max(1, min(8, n - 1))
    count = 0

    def walk(adj, k, gens, key):
        nonlocal count
        if k == depth and total_shards > 1:
            if _shard_of(key, k, total_shards) != shard:
                return
        if k == n:
            count += 1
            if sink is not None:
                sink(Graph(k, tuple(adj)))
            return
        degs = [a.bit_count() for a in adj]
        for s in _candidate_subsets(degs, k):
            s = int(s)
            if gens and not _is_orbit_min(s, gens):
                continue
            child = list(adj) + [s]
            m = s
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                child[u] |= 1 << k
            res = _accept(child, k + 1)
            if res is not None:
                walk(child, k + 1, res[1], res[0])

    def walk_fast(adj, k, gens, key):
        nonlocal count
        if k == depth and total_shards > 1:
            if _shard_of(key, k, total_shards) != shard:
                return
        if k == n:
            count += 1
            if sink is not None:
                sink(Graph(k, tuple(adj)))
            return
        cands, status, perms = kern.expand_accept(adj, k)
        nk = k + 1
        for i in range(len(cands)):
            st = status[i]
            if st == 0:
                continue
            s = int(cands[i])
            if gens and not _is_orbit_min(s, gens):
                continue
            child = list(adj) + [s]
            m = s
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                child[u] |= 1 << k
            if st == 1:
                child_key = (_leaf_key(child, tuple(int(x) for x in perms[i]))
                             if (nk == depth and total_shards > 1) else None)
                walk_fast(child, nk, [], child_key)
            else:
                res = kern.accept_via_python(child, nk)
                if res is not None:
                    walk_fast(child, nk, res[1], res[0])

    if kern is not None:
        kern.warm()
        walk_fast([0], 1, [], (0,))
    else:
        walk([0], 1, [], (0,))
    return count


def enumerate_order(n: int, sink=None, fast=None) -> int:
    """All nonisomorphic simple graphs on n vertices, exactly once each."""
    return enumerate_shard(n, 0, 1, sink, fast=fast)


def ingest_graph6(lines, sink=None) -> int:
    """Feed an externally generated graph6 stream (assumed isomorph-free).

    Lenient line handling (blank lines, '>' headers); returns the count.
    """
    count = 0
    for g in read_graph6(lines):
        count += 1
        if sink is not None:
            sink(g)
    return count
