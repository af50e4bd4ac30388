"""Induced-subgraph matching against the seven fixed filter patterns.

Each pattern comes with its minimum faithful-orthogonal-representation
dimension (xi_upper).  That dimension is monotone under induced
subgraphs -- restricting a faithful representation of the host to the
pattern's vertices stays faithful -- so a host containing the pattern is
forced into dimension at least xi_upper, and a host with
chi_f <= xi_upper can then never have chi_f exceed its own FOR
dimension: the corresponding cascade filter discards it.

The matcher is a backtracking search over pattern vertices in a fixed
order, with per-vertex candidate masks narrowed by adjacency on both sides
(induced = edges and non-edges must both be preserved) plus degree and
neighbourhood-degree pruning.
"""

from __future__ import annotations

from .graphs import Graph
from .graph6 import decode


class FilterGraph:
    """One fixed pattern: name, decoded graph, FOR dimension, filter id."""

    __slots__ = ("name", "graph", "xi_upper", "filter_id")

    def __init__(self, name, graph, xi_upper, filter_id):
        self.name = name
        self.graph = graph
        self.xi_upper = xi_upper
        self.filter_id = filter_id

    def __repr__(self):
        return f"FilterGraph({self.name!r}, n={self.graph.n}, xi={self.xi_upper}, id={self.filter_id})"


def _make_filter_table():
    # (graph6, display name, xi_upper, filter id, order, edges) -- the order
    # and edge counts pin the constants against transcription slips.
    rows = [
        ("Ebtw",      "co-double-star",       5, "3.1", 6, 10),
        ("Gbijmo",    "pattern-3.2",          5, "3.2", 8, 16),
        ("Fbvzw",     "co-double-star+K1",    6, "3.3", 7, 16),
        ("Fbtzw",     "pattern-3.4",          6, "3.4", 7, 15),
        ("Fbuzw",     "pattern-3.5",          6, "3.5", 7, 15),
        ("Ibgzmngjg", "circulant-minus-vertex", 6, "3.6", 10, 27),
        ("Gzznnk",    "co-double-star+K2",    7, "3.7", 8, 23),
    ]
    table = []
    for g6, name, xi, fid, order, edges in rows:
        g = decode(g6)
        g.validate()
        if g.n != order or g.edge_count() != edges:
            raise AssertionError(
                f"filter pattern {g6}: got n={g.n} e={g.edge_count()}, "
                f"expected n={order} e={edges}")
        table.append(FilterGraph(name, g, xi, fid))
    return tuple(table)


FILTER_TABLE = _make_filter_table()


class Embedding:
    """Injective pattern->host vertex map preserving edges and non-edges."""

    __slots__ = ("map",)

    def __init__(self, mapping):
        self.map = tuple(mapping)

    def __repr__(self):
        return f"Embedding({self.map})"


def verify_embedding(pattern: Graph, host: Graph, emb: Embedding) -> bool:
    """Independent edge-by-edge induced check of an embedding."""
    if len(emb.map) != pattern.n:
        return False
    if len(set(emb.map)) != pattern.n:
        return False
    if any(not 0 <= w < host.n for w in emb.map):
        return False
    for i in range(pattern.n):
        for j in range(i + 1, pattern.n):
            if pattern.has_edge(i, j) != host.has_edge(emb.map[i], emb.map[j]):
                return False
    return True


def _match_order(pattern: Graph):
    """Pattern vertices ordered so each new vertex touches placed ones."""
    n = pattern.n
    placed = []
    placed_mask = 0
    remaining = set(range(n))
    while remaining:
        best = max(
            remaining,
            key=lambda v: ((pattern.adj[v] & placed_mask).bit_count(),
                           pattern.adj[v].bit_count()),
        )
        placed.append(best)
        placed_mask |= 1 << best
        remaining.discard(best)
    return placed


def find_induced_embedding(pattern: Graph, host: Graph):
    """First induced embedding of pattern into host, or None.

    Backtracking over pattern vertices (connected-first order); candidate
    masks are intersected with the host neighbourhood or its complement
    for every already-placed pattern vertex, so a dead assignment is cut as
    early as possible.  Degree monotonicity prunes the root candidates.
    """
    np_, nh = pattern.n, host.n
    if np_ > nh:
        return None
    order = _match_order(pattern)
    host_full = (1 << nh) - 1
    host_cadj = [host_full & ~a & ~(1 << v) for v, a in enumerate(host.adj)]
    pdeg = pattern.degrees()
    hdeg = host.degrees()

    # root candidates: host degree can only exceed pattern degree
    base = [0] * np_
    for idx, pv in enumerate(order):
        mask = 0
        for hv in range(nh):
            if hdeg[hv] >= pdeg[pv]:
                mask |= 1 << hv
        base[idx] = mask

    assign = [-1] * np_  # pattern vertex -> host vertex
    used = 0

    def rec(idx, cand_masks):
        nonlocal used
        if idx == np_:
            return True
        pv = order[idx]
        cands = cand_masks[idx] & ~used
        while cands:
            hv = (cands & -cands).bit_length() - 1
            cands &= cands - 1
            new_masks = list(cand_masks)
            ok = True
            for j in range(idx + 1, np_):
                qv = order[j]
                if pattern.has_edge(pv, qv):
                    nm = new_masks[j] & host.adj[hv]
                else:
                    nm = new_masks[j] & host_cadj[hv]
                if nm & ~used & ~(1 << hv) == 0:
                    ok = False
                    break
                new_masks[j] = nm
            if ok:
                assign[pv] = hv
                used |= 1 << hv
                if rec(idx + 1, new_masks):
                    return True
                used &= ~(1 << hv)
                assign[pv] = -1
        return False

    if rec(0, base):
        return Embedding(assign)
    return None


def has_any_filter_graph(host: Graph, filters=FILTER_TABLE, chi_f=None):
    """First filter whose pattern embeds induced and whose xi >= chi_f.

    Returns (filter_id, Embedding) or None.  chi_f=None skips the
    dimension gate (pure pattern containment).
    """
    for f in filters:
        if chi_f is not None and chi_f > f.xi_upper:
            continue
        if f.graph.n > host.n:
            continue
        emb = find_induced_embedding(f.graph, host)
        if emb is not None:
            return f.filter_id, emb
    return None
