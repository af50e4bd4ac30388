"""Canonical labelling, automorphisms and isomorphism testing.

The labelling follows the usual individualization/refinement scheme: an
ordered partition of the vertices is refined until equitable (every vertex
in a cell has the same number of neighbours in every cell), then a vertex
of the first non-singleton cell is individualized and the process recurses.
Each discrete partition yields a relabelling of the adjacency rows; the
canonical form is the lexicographically largest row tuple over all leaves.

Two leaves with equal keys differ by an automorphism, so the search doubles
as an automorphism-group generator: discovered generators prune sibling
branches (a candidate mapped into an already-explored sibling by a
prefix-fixing generator is skipped) and their orbits are returned for use
by the orderly generator.

Cells are always split *in place* (sub-cells keep their parent cell's span
in the ordering, sorted by descending neighbour count), and the initial
split is by descending degree.  That gives the invariant the generator
relies on: the vertex in canonical position n-1 lies in the last cell of
the root refinement, which consists of minimum-degree vertices.
"""

from __future__ import annotations

from .graphs import Graph


def refine(adj, cells):
    """Equitable refinement of an ordered partition.

    `cells` is a list of vertex lists.  Returns a new list where every cell
    has, for each vertex, the same neighbour count into every cell.
    Sub-cells replace their parent in place, ordered by descending count
    signature, so the result is invariant under relabelling.
    """
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict = {}
            for v in cell:
                a = adj[v]
                sig = 0
                for m in masks:
                    sig = sig << 6 | (a & m).bit_count()
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                changed = True
                for sig in sorted(groups, reverse=True):
                    out.append(groups[sig])
        cells = out
    return cells


def _leaf_key(adj, order):
    """Adjacency rows after relabelling vertex order[i] -> i."""
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    key = []
    for v in order:
        row = 0
        mask = adj[v]
        while mask:
            u = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            row |= 1 << pos[u]
        key.append(row)
    return tuple(key)


class CanonResult:
    """Outcome of a canonical labelling search."""

    __slots__ = ("n", "order", "labels", "key", "generators", "orbit_reps")

    def __init__(self, n, order, key, generators, orbit_reps):
        self.n = n
        self.order = order          # order[i] = original vertex at position i
        self.key = key              # relabelled adjacency rows, the maximum
        self.generators = generators  # automorphism generators as tuples
        self.orbit_reps = orbit_reps  # orbit_reps[v] = min vertex in orbit(v)
        labels = [0] * n
        for i, v in enumerate(order):
            labels[v] = i
        self.labels = tuple(labels)

    def same_orbit(self, u: int, v: int) -> bool:
        return self.orbit_reps[u] == self.orbit_reps[v]


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _search(n, adj, root_cells):
    """Backtracking canonical search; returns (key, order, gens, uf)."""
    best_key = None
    best_order = None
    gens = []
    uf = _UnionFind(n)

    def dfs(cells, fixed):
        nonlocal best_key, best_order
        cells = refine(adj, cells)
        target = -1
        for i, c in enumerate(cells):
            if len(c) > 1:
                target = i
                break
        if target < 0:
            order = tuple(c[0] for c in cells)
            key = _leaf_key(adj, order)
            if best_key is None or key > best_key:
                best_key = key
                best_order = order
            elif key == best_key:
                gamma = [0] * n
                for i in range(n):
                    gamma[best_order[i]] = order[i]
                gamma = tuple(gamma)
                gens.append(gamma)
                for v in range(n):
                    uf.union(v, gamma[v])
            return
        tried = []
        for v in cells[target]:
            skip = False
            for gamma in gens:
                if gamma[v] in tried and all(gamma[u] == u for u in fixed):
                    skip = True
                    break
            if skip:
                continue
            tried.append(v)
            rest = [u for u in cells[target] if u != v]
            sub = cells[:target] + [[v], rest] + cells[target + 1:]
            dfs(sub, fixed + (v,))

    dfs(root_cells, ())
    return best_key, best_order, gens, uf


def canonicalize(g: Graph) -> CanonResult:
    """Full canonical labelling with automorphism generators and orbits."""
    n = g.n
    if n == 0:
        return CanonResult(0, (), (), [], ())
    key, order, gens, uf = _search(n, g.adj, [list(range(n))])
    reps = tuple(uf.find(v) for v in range(n))
    return CanonResult(n, order, key, gens, reps)


def canonical_key(g: Graph):
    """Canonical adjacency rows only (cheaper interface, same search)."""
    return canonicalize(g).key


def key_to_form_bytes(n: int, key) -> bytes:
    """Pack canonical adjacency rows into the byte form: order byte, then
    row-major upper-triangle bits MSB-first, zero-padded to a byte."""
    bits = []
    for i in range(n):
        row = key[i]
        for j in range(i + 1, n):
            bits.append(row >> j & 1)
    out = bytearray([n])
    for k in range(0, len(bits), 8):
        byte = 0
        for b in bits[k:k + 8]:
            byte = byte << 1 | b
        byte <<= (8 - min(8, len(bits) - k)) % 8
        out.append(byte)
    return bytes(out)


def canonical_form(g: Graph) -> bytes:
    """Canonical form as bytes: order byte, then packed upper-triangle bits.

    Two graphs are isomorphic iff their canonical forms are equal.
    """
    return key_to_form_bytes(g.n, canonical_key(g))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_key(g) == canonical_key(h)


def automorphism_orbits(g: Graph):
    """Partition of the vertices into automorphism orbits."""
    res = canonicalize(g)
    groups: dict = {}
    for v in range(g.n):
        groups.setdefault(res.orbit_reps[v], []).append(v)
    return [groups[r] for r in sorted(groups)]
