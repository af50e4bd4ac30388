"""Clique/independent-set machinery and the joined-pair lower-bound search.

Maximal cliques come from Bron-Kerbosch with pivoting, run directly on the
adjacency bitmasks; maximal independent sets are maximal cliques of the
complement.  `find_pair_structure` looks for the join of n edgeless pairs
and m single vertices as a subgraph -- the structure whose orthogonal
representations need dimension 2n+m, which powers the cheap census filter
between the clique test and the pattern matchers.
"""

from __future__ import annotations

from .graphs import Graph


def maximal_cliques_masks(n: int, adj) -> list:
    """All maximal cliques as bitmasks (Bron-Kerbosch, max-degree pivot)."""
    out = []

    def bk(r, p, x):
        if p == 0 and x == 0:
            out.append(r)
            return
        m = p | x
        best_u = -1
        best_c = -1
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            c = (p & adj[u]).bit_count()
            if c > best_c:
                best_c = c
                best_u = u
        cand = p & ~adj[best_u]
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            bv = 1 << v
            bk(r | bv, p & adj[v], x & adj[v])
            p &= ~bv
            x |= bv

    bk(0, (1 << n) - 1, 0)
    return out


def _mask_to_tuple(mask: int):
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def max_clique_size(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(m.bit_count() for m in maximal_cliques_masks(g.n, g.adj))


class IndependentSetFamily:
    """The maximal independent sets of a graph, in a fixed order."""

    __slots__ = ("n", "masks", "sets", "maximal")

    def __init__(self, n, masks, maximal=True):
        self.n = n
        self.masks = list(masks)
        self.sets = [_mask_to_tuple(m) for m in self.masks]
        self.maximal = maximal

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return iter(self.sets)


def maximal_independent_sets(g: Graph) -> IndependentSetFamily:
    """Exactly the inclusion-maximal independent sets, each once."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    comp = g.complement()
    masks = maximal_cliques_masks(comp.n, comp.adj)
    masks.sort()
    return IndependentSetFamily(g.n, masks, maximal=True)


class PairStructureWitness:
    """n disjoint pairs + m singletons with every cross edge present.

    The pairs need not be non-edges of the host: plain subgraph containment
    is enough for the dimension bound, so only the cross edges matter.
    """

    __slots__ = ("pairs", "singletons")

    def __init__(self, pairs, singletons):
        self.pairs = [tuple(sorted(p)) for p in pairs]
        self.singletons = list(singletons)

    @property
    def t(self) -> int:
        return 2 * len(self.pairs) + len(self.singletons)

    def vertices(self):
        out = []
        for a, b in self.pairs:
            out.extend((a, b))
        out.extend(self.singletons)
        return out

    def __repr__(self):
        return f"PairStructureWitness(pairs={self.pairs}, singletons={self.singletons})"


def verify_pair_structure(g: Graph, w: PairStructureWitness) -> bool:
    """Independent witness check: disjoint parts, all cross edges in g."""
    verts = w.vertices()
    if len(set(verts)) != len(verts):
        return False
    if any(not 0 <= v < g.n for v in verts):
        return False
    parts = [list(p) for p in w.pairs] + [[s] for s in w.singletons]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            for u in parts[i]:
                for v in parts[j]:
                    if not g.has_edge(u, v):
                        return False
    return True


def find_pair_structure(g: Graph, t: int):
    """Search for n pairs + m singletons, 2n+m = t, m = t mod 2.

    A vertex set T of size t carries the structure iff the complement
    induced on T has maximum degree <= 1: complement edges form a matching,
    matched pairs become the K̄2 parts, leftover vertices are adjacent to
    all the rest of T and fill the remaining pairs and the m singletons.
    The search runs over candidate vertices in order of descending degree
    (low complement degree fails late, high fails fast).
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    nv = g.n
    if t > nv:
        return None
    m = t & 1
    cadj = g.complement().adj
    order_v = sorted(range(nv), key=lambda v: g.adj[v].bit_count(), reverse=True)

    chosen = []

    def rec(start, tmask, matched) -> bool:
        if len(chosen) == t:
            return True
        need = t - len(chosen)
        for k in range(start, nv - need + 1):
            v = order_v[k]
            x = cadj[v] & tmask
            if x == 0:
                add = 0
            elif x & (x - 1) == 0 and not (x & matched):
                add = x | (1 << v)
            else:
                continue
            chosen.append(v)
            if rec(k + 1, tmask | (1 << v), matched | add):
                return True
            chosen.pop()
        return False

    if not rec(0, 0, 0):
        return None

    tmask = 0
    for v in chosen:
        tmask |= 1 << v
    pairs = []
    isolated = []
    seen = 0
    for v in sorted(chosen):
        if seen >> v & 1:
            continue
        x = cadj[v] & tmask
        if x:
            u = x.bit_length() - 1
            pairs.append((v, u))
            seen |= (1 << v) | (1 << u)
        else:
            isolated.append(v)
            seen |= 1 << v
    singles = isolated[:m]
    rest = isolated[m:]
    for i in range(0, len(rest), 2):
        pairs.append((rest[i], rest[i + 1]))
    return PairStructureWitness(pairs, singles)
