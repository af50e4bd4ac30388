"""Small simple graphs as tuples of adjacency bitmasks.

Vertex set is always {0, ..., n-1} with n <= 32.  Row v of ``adj`` is an
integer whose bit u is set iff vu is an edge.  Everything downstream
(canonical labelling, clique search, the census filters) works directly on
these masks, so the representation is frozen here once and never copied
into matrices.
"""

from __future__ import annotations

MAX_ORDER = 32


class Graph:
    """Immutable simple graph on {0..n-1}, adjacency stored as bitmasks."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj):
        self.n = n
        self.adj = tuple(adj)

    # -- construction -------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def circulant(cls, n: int, jumps) -> "Graph":
        edges = []
        for j in jumps:
            for i in range(n):
                edges.append((i, (i + j) % n))
        return cls.from_edges(n, edges)

    # -- basic queries -------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self):
        return [a.bit_count() for a in self.adj]

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self):
        out = []
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1) << (u + 1)
            while rest:
                v = (rest & -rest).bit_length() - 1
                out.append((u, v))
                rest &= rest - 1
        return out

    def neighbors(self, v: int):
        mask = self.adj[v]
        out = []
        while mask:
            out.append((mask & -mask).bit_length() - 1)
            mask &= mask - 1
        return out

    def validate(self) -> None:
        """Raise ValueError unless this is a simple graph in range."""
        if not 0 <= self.n <= MAX_ORDER:
            raise ValueError(f"order {self.n} out of range 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} has bits outside the vertex set")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
        for v in range(self.n):
            for u in range(v):
                if (self.adj[v] >> u & 1) != (self.adj[u] >> v & 1):
                    raise ValueError(f"asymmetric pair {{{u},{v}}}")

    # -- structural operations ------------------------------------------

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, [full ^ a ^ (1 << v) for v, a in enumerate(self.adj)])

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = 1
        frontier = 1
        adj = self.adj
        while frontier:
            nxt = 0
            while frontier:
                v = (frontier & -frontier).bit_length() - 1
                frontier &= frontier - 1
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def union(self, other: "Graph") -> "Graph":
        """Disjoint union; the second operand is shifted past the first."""
        k = self.n
        adj = list(self.adj) + [a << k for a in other.adj]
        return Graph(k + other.n, adj)

    def join(self, other: "Graph") -> "Graph":
        """Disjoint union plus all edges between the two parts."""
        k, m = self.n, other.n
        left_all = (1 << k) - 1
        right_all = ((1 << m) - 1) << k
        adj = [a | right_all for a in self.adj]
        adj += [(a << k) | left_all for a in other.adj]
        return Graph(k + m, adj)

    def induced_subgraph(self, vertices) -> "Graph":
        """Subgraph induced on `vertices`, relabelled in the given order."""
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        if len(pos) != len(vs):
            raise ValueError("duplicate vertex in selection")
        adj = [0] * len(vs)
        for i, v in enumerate(vs):
            mask = self.adj[v]
            while mask:
                u = (mask & -mask).bit_length() - 1
                mask &= mask - 1
                j = pos.get(u)
                if j is not None:
                    adj[i] |= 1 << j
        return Graph(len(vs), adj)

    def permute(self, perm) -> "Graph":
        """Relabel: vertex v of self becomes perm[v] of the result."""
        n = self.n
        adj = [0] * n
        for v in range(n):
            row = 0
            mask = self.adj[v]
            while mask:
                u = (mask & -mask).bit_length() - 1
                mask &= mask - 1
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return Graph(n, adj)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"
