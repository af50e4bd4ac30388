"""Shared fixtures and independent oracles.

The oracles here deliberately share no code with the package: brute-force
isomorphism by permutation, maximal sets by subset scan, an exact textbook
Fraction simplex plus a polytope vertex enumeration for the covering LP,
and an all-injections induced-subgraph matcher.  Tests compare package
output against these.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from raycensus.graphs import Graph


# ===== small named graphs ===================================================

def petersen():
    return Graph.from_edges(10, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                                 (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                                 (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)])


def random_graph(n: int, seed: int, p: float = 0.5) -> Graph:
    rng = random.Random(1000003 * seed + 101 * n + int(p * 1000))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return Graph.from_edges(n, edges)


# ===== brute-force isomorphism ==============================================

def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return False
    verts = range(g.n)
    for perm in itertools.permutations(verts):
        if all(g.has_edge(u, v) == h.has_edge(perm[u], perm[v])
               for u in verts for v in verts if u != v):
            return True
    return False


def brute_automorphism_orbits(g: Graph):
    n = g.n
    reps = list(range(n))

    def find(x):
        while reps[x] != x:
            reps[x] = reps[reps[x]]
            x = reps[x]
        return x

    for perm in itertools.permutations(range(n)):
        if all(g.has_edge(u, v) == g.has_edge(perm[u], perm[v])
               for u in range(n) for v in range(u + 1, n)):
            for v in range(n):
                a, b = find(v), find(perm[v])
                if a != b:
                    reps[max(a, b)] = min(a, b)
    groups = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


# ===== brute-force maximal sets =============================================

def brute_maximal_independent_sets(g: Graph):
    n = g.n
    independent = []
    for mask in range(1 << n):
        ok = True
        for u in range(n):
            if mask >> u & 1 and g.adj[u] & mask:
                ok = False
                break
        if ok:
            independent.append(mask)
    ind = set(independent)
    out = []
    for mask in independent:
        # maximal: no one-vertex extension stays independent
        if all(mask >> v & 1 or (mask | 1 << v) not in ind for v in range(n)):
            out.append(mask)
    return sorted(out)


def brute_maximal_cliques(g: Graph):
    return brute_maximal_independent_sets(g.complement())


def brute_pair_structure_exists(g: Graph, t: int) -> bool:
    """Any t-subset inducing maximum degree <= 1 in the complement?"""
    comp = g.complement()
    for sub in itertools.combinations(range(g.n), t):
        mask = 0
        for v in sub:
            mask |= 1 << v
        if all((comp.adj[v] & mask).bit_count() <= 1 for v in sub):
            return True
    return False


# ===== exact LP oracles =====================================================

def _oracle_sets(g: Graph):
    return brute_maximal_independent_sets(g)


def oracle_chi_f(g: Graph) -> Fraction:
    """Textbook dense Fraction simplex for max 1.x, x(I) <= 1, x >= 0.

    Independent of the package's fraction-free solver: plain rational
    tableau, Bland's smallest-index rule, slack basis start.
    """
    sets = _oracle_sets(g)
    n, m = g.n, len(sets)
    if m == 0:
        return Fraction(0)
    width = n + m + 1
    tab = [[Fraction(0)] * width for _ in range(m + 1)]
    for i, mask in enumerate(sets):
        for v in range(n):
            if mask >> v & 1:
                tab[i][v] = Fraction(1)
        tab[i][n + i] = Fraction(1)
        tab[i][width - 1] = Fraction(1)
    for v in range(n):
        tab[m][v] = Fraction(-1)
    basis = list(range(n, n + m))
    while True:
        enter = next((j for j in range(n + m) if tab[m][j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][width - 1] / tab[i][enter]
                if best is None or ratio < best[0] or \
                        (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        assert best is not None, "LP is bounded by construction"
        _, leave = best
        piv = tab[leave][enter]
        tab[leave] = [c / piv for c in tab[leave]]
        for i in range(m + 1):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        basis[leave] = enter
    return tab[m][width - 1]


def vertex_enum_chi_f(g: Graph) -> Fraction:
    """chi_f by brute-force vertex enumeration of {x >= 0, x(I) <= 1}.

    Every basic feasible point comes from n tight constraints out of the
    m set rows and n nonnegativity rows; solve each square rational system
    and take the best feasible objective.  Only sane for order <= 5.
    """
    sets = _oracle_sets(g)
    n, m = g.n, len(sets)
    rows = []
    for mask in sets:
        rows.append(([Fraction(1) if mask >> v & 1 else Fraction(0)
                      for v in range(n)], Fraction(1)))
    for v in range(n):
        rows.append(([Fraction(1) if u == v else Fraction(0)
                      for u in range(n)], Fraction(0)))
    best = Fraction(0)  # origin is feasible
    for combo in itertools.combinations(range(m + n), n):
        a = [list(rows[i][0]) for i in combo]
        b = [rows[i][1] for i in combo]
        x = _solve_square(a, b)
        if x is None:
            continue
        if any(xi < 0 for xi in x):
            continue
        feasible = True
        for mask in sets:
            s = sum(x[v] for v in range(n) if mask >> v & 1)
            if s > 1:
                feasible = False
                break
        if feasible:
            val = sum(x)
            if val > best:
                best = val
    return best


def _solve_square(a, b):
    """Gaussian elimination over Fractions; None if singular."""
    n = len(b)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = a[col][col]
        a[col] = [v / inv for v in a[col]]
        b[col] /= inv
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                b[r] -= f * b[col]
    return b


# ===== all-injections induced matcher =======================================

def brute_induced_embedding_exists(pattern: Graph, host: Graph) -> bool:
    if pattern.n > host.n:
        return False
    pn = pattern.n
    for img in itertools.permutations(range(host.n), pn):
        if all(pattern.has_edge(a, b) == host.has_edge(img[a], img[b])
               for a in range(pn) for b in range(a + 1, pn)):
            return True
    return False
