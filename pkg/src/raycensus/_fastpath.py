"""Compiled kernels for the enumeration and census hot loops.

Everything here is a performance twin of the pure-Python code and is
cross-checked against it exhaustively at small orders by the test suite:

* `_refine_status` mirrors canon.refine (same cell handling, same
  descending signature order) and decides the augmentation accept test in
  the common case of a discrete refinement; anything non-discrete is
  punted back to the Python canonical search (status 2).
* `_classify_code` mirrors census.classify up to the pattern filters:
  connectivity, maximal independent sets (Bron-Kerbosch), maximum clique,
  a float simplex + continued-fraction reconstruction + exact int64
  verification of chi_f, and the joined-pair search.  Any numerical doubt
  (iteration cap, reconstruction miss, int64 overflow risk) returns a
  bail code and the graph is reclassified by the exact Python path.

Kernels are restricted to order <= 12 (signature lanes and the popcount
table are sized for it); the census never needs more.  Set
RAYCENSUS_PURE=1 to keep everything on the Python reference path.
"""

from __future__ import annotations

import zlib

import numpy as np
from numba import njit

from .graphs import Graph
from .canon import canonicalize, _leaf_key, key_to_form_bytes
from .graph6 import encode

_POP = np.array([bin(i).count("1") for i in range(1 << 12)], dtype=np.int64)

_MAX_SETS = 160          # Moon-Moser bound at order 12 is 81
_SIMPLEX_CAP = 500
_DEN_GUARD = 1 << 48     # keep every product comfortably inside int64


# ===== small helpers =======================================================

@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _connected(adj, n):
    if n <= 1:
        return True
    seen = np.int64(1)
    frontier = np.int64(1)
    while frontier != 0:
        nxt = np.int64(0)
        f = frontier
        while f:
            v = _POP[(f & -f) - 1]
            f &= f - 1
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (np.int64(1) << n) - 1


# ===== equitable refinement / acceptance ===================================

@njit(cache=True)
def _refine_status(adj, n, order_out):
    """Refine the unit partition; decide acceptance of the new vertex n-1.

    Returns 0 (reject: new vertex not in the last cell, or not the last
    canonical vertex of a discrete refinement), 1 (accept, refinement
    discrete, order_out holds the canonical vertex order), or 2 (undecided,
    needs the full canonical search).  Cell handling matches canon.refine:
    sub-cells replace parents in place, ordered by descending signature.
    """
    order = np.empty(n, np.int64)
    start = np.empty(n + 1, np.int64)
    for i in range(n):
        order[i] = i
    start[0] = 0
    start[1] = n
    ncells = 1

    masks = np.empty(n, np.int64)
    sigs = np.empty(n, np.int64)
    tmp_v = np.empty(n, np.int64)
    new_order = np.empty(n, np.int64)
    new_start = np.empty(n + 1, np.int64)

    changed = True
    while changed:
        changed = False
        for ci in range(ncells):
            m = np.int64(0)
            for p in range(start[ci], start[ci + 1]):
                m |= np.int64(1) << order[p]
            masks[ci] = m
        nnew = 0
        pos = 0
        new_start[0] = 0
        for ci in range(ncells):
            s = start[ci]
            e = start[ci + 1]
            size = e - s
            if size == 1:
                new_order[pos] = order[s]
                pos += 1
                nnew += 1
                new_start[nnew] = pos
                continue
            for idx in range(size):
                v = order[s + idx]
                a = adj[v]
                sig = np.int64(0)
                for cj in range(ncells):
                    sig = (sig << 4) | _POP[a & masks[cj]]
                sigs[idx] = sig
                tmp_v[idx] = v
            # stable insertion sort by signature, descending
            for i1 in range(1, size):
                sv = sigs[i1]
                vv = tmp_v[i1]
                j1 = i1 - 1
                while j1 >= 0 and sigs[j1] < sv:
                    sigs[j1 + 1] = sigs[j1]
                    tmp_v[j1 + 1] = tmp_v[j1]
                    j1 -= 1
                sigs[j1 + 1] = sv
                tmp_v[j1 + 1] = vv
            nsplit = 0
            for idx in range(size):
                new_order[pos] = tmp_v[idx]
                pos += 1
                if idx + 1 == size or sigs[idx + 1] != sigs[idx]:
                    nnew += 1
                    new_start[nnew] = pos
                    nsplit += 1
            if nsplit > 1:
                changed = True
        for i in range(pos):
            order[i] = new_order[i]
        for i in range(nnew + 1):
            start[i] = new_start[i]
        ncells = nnew

    new = n - 1
    in_last = False
    for p in range(start[ncells - 1], start[ncells]):
        if order[p] == new:
            in_last = True
            break
    if not in_last:
        return 0
    if ncells == n:
        if order[n - 1] != new:
            return 0
        for i in range(n):
            order_out[i] = order[i]
        return 1
    return 2


@njit(cache=True)
def _min_deg_candidates(adj, k, out):
    """Subsets S with |S| <= min child degree, written to out; count returned."""
    c = 0
    for s in range(1 << k):
        size = _POP[s]
        ok = True
        for u in range(k):
            if _POP[adj[u]] + ((s >> u) & 1) < size:
                ok = False
                break
        if ok:
            out[c] = s
            c += 1
    return c


# ===== Bron-Kerbosch =======================================================

@njit(cache=True)
def _bk_cliques(adj, n, out):
    """All maximal cliques of the mask-adjacency into out; count returned.

    Returns -1 if out would overflow (caller bails).  Iterative, with the
    usual max-|P & N(u)| pivot over P | X.
    """
    cnt = 0
    if n == 0:
        return 0
    full = (np.int64(1) << n) - 1
    rs = np.empty(n + 2, np.int64)
    ps = np.empty(n + 2, np.int64)
    xs = np.empty(n + 2, np.int64)
    cs = np.empty(n + 2, np.int64)

    def _pivot_cand(p, x):
        m = p | x
        best_u = -1
        best_c = -1
        while m:
            u = _POP[(m & -m) - 1]
            m &= m - 1
            c = _POP[p & adj[u]]
            if c > best_c:
                best_c = c
                best_u = u
        return p & ~adj[best_u]

    depth = 0
    rs[0] = 0
    ps[0] = full
    xs[0] = 0
    cs[0] = _pivot_cand(full, np.int64(0))
    while depth >= 0:
        c = cs[depth] & ps[depth]
        if c == 0:
            depth -= 1
            continue
        v = _POP[(c & -c) - 1]
        bv = np.int64(1) << v
        new_r = rs[depth] | bv
        new_p = ps[depth] & adj[v]
        new_x = xs[depth] & adj[v]
        ps[depth] &= ~bv
        xs[depth] |= bv
        if new_p == 0 and new_x == 0:
            if cnt >= out.shape[0]:
                return -1
            out[cnt] = new_r
            cnt += 1
        elif new_p != 0:
            depth += 1
            rs[depth] = new_r
            ps[depth] = new_p
            xs[depth] = new_x
            cs[depth] = _pivot_cand(new_p, new_x)
    return cnt


# ===== float simplex + exact reconstruction ================================

@njit(cache=True)
def _simplex_float(set_masks, msets, nv, x_out, y_out):
    """Maximize sum(x) s.t. x >= 0 and x(I) <= 1 per set; value, or -1 on cap."""
    width = nv + msets + 1
    tab = np.zeros((msets + 1, width))
    for i in range(msets):
        mm = set_masks[i]
        while mm:
            v = _POP[(mm & -mm) - 1]
            mm &= mm - 1
            tab[i, v] = 1.0
        tab[i, nv + i] = 1.0
        tab[i, width - 1] = 1.0
    for j in range(nv):
        tab[msets, j] = -1.0
    basis = np.empty(msets, np.int64)
    for i in range(msets):
        basis[i] = nv + i

    it = 0
    while True:
        it += 1
        if it > _SIMPLEX_CAP:
            return -1.0
        q = -1
        best = -1e-9
        for j in range(nv + msets):
            if tab[msets, j] < best:
                best = tab[msets, j]
                q = j
        if q < 0:
            break
        p = -1
        bestr = 0.0
        for i in range(msets):
            a = tab[i, q]
            if a > 1e-11:
                r = tab[i, width - 1] / a
                if p < 0 or r < bestr - 1e-12 or (r < bestr + 1e-12 and basis[i] < basis[p]):
                    p = i
                    bestr = r
        if p < 0:
            return -1.0
        piv = tab[p, q]
        for c in range(width):
            tab[p, c] /= piv
        for i in range(msets + 1):
            if i != p:
                f = tab[i, q]
                if f != 0.0:
                    for c in range(width):
                        tab[i, c] -= f * tab[p, c]
        basis[p] = q

    for v in range(nv):
        x_out[v] = 0.0
    for i in range(msets):
        if basis[i] < nv:
            x_out[basis[i]] = tab[i, width - 1]
    for i in range(msets):
        y_out[i] = tab[msets, nv + i]
    return tab[msets, width - 1]


@njit(cache=True)
def _recon_nonneg(x, max_den):
    """Closest p/q with q <= max_den to the float x >= 0.

    The float is treated as the exact rational it is, and the standard
    continued-fraction endgame picks between the last convergent and the
    best semiconvergent, so the result matches limit_denominator on the
    same value.  Returns (p, q), or (-1, 0) when the best approximation
    still misses x by more than 1e-12.
    """
    if x < 0.0:
        if x > -1e-12:
            return np.int64(0), np.int64(1)
        return np.int64(-1), np.int64(0)
    # x < 16 keeps x * 2**52 integral and inside int64
    n0 = np.int64(x * 4503599627370496.0)
    d0 = np.int64(1) << 52
    g = _gcd(n0, d0)
    if g > 0:
        n0 //= g
        d0 //= g
    self_den = d0
    p0, q0, p1, q1 = np.int64(0), np.int64(1), np.int64(1), np.int64(0)
    nn, dd = n0, d0
    while dd != 0:
        a = nn // dd
        q2 = q0 + a * q1
        if q2 > max_den:
            break
        p0, q0, p1, q1 = p1, q1, p0 + a * p1, q2
        nn, dd = dd, nn - a * dd
    if dd == 0:
        p, q = p1, q1
    else:
        k = (max_den - q0) // q1
        if 2 * dd * (q0 + k * q1) <= self_den:
            p, q = p1, q1
        else:
            p, q = p0 + k * p1, q0 + k * q1
    if q <= 0:
        return np.int64(-1), np.int64(0)
    if abs(x - p / q) > 1e-12:
        return np.int64(-1), np.int64(0)
    return p, q


@njit(cache=True)
def _chi_exact(set_masks, msets, nv):
    """chi_f as an exactly verified (p, q); returns (ok, p, q).

    Float solve, per-component rational reconstruction with denominators
    <= nv*msets, then exact primal/dual feasibility and strong duality in
    guarded int64 arithmetic.  ok=0 means bail to the exact Python solver.
    """
    fail = np.int64(0)
    one = np.int64(1)
    xf = np.empty(nv)
    yf = np.empty(msets)
    val = _simplex_float(set_masks, msets, nv, xf, yf)
    if val < 0.0:
        return 0, fail, one
    max_den = np.int64(nv * msets)
    vp, vq = _recon_nonneg(val, max_den)
    if vp < 0:
        return 0, fail, one
    xp = np.empty(nv, np.int64)
    xq = np.empty(nv, np.int64)
    for v in range(nv):
        p, q = _recon_nonneg(xf[v], max_den)
        if p < 0:
            return 0, fail, one
        xp[v] = p
        xq[v] = q
    yp = np.empty(msets, np.int64)
    yq = np.empty(msets, np.int64)
    for i in range(msets):
        p, q = _recon_nonneg(yf[i], max_den)
        if p < 0:
            return 0, fail, one
        yp[i] = p
        yq[i] = q
    # primal feasibility: sum_{v in I} x_v <= 1 for every set I
    for i in range(msets):
        num = np.int64(0)
        den = np.int64(1)
        mm = set_masks[i]
        while mm:
            v = _POP[(mm & -mm) - 1]
            mm &= mm - 1
            g = _gcd(den, xq[v])
            nden = (den // g) * xq[v]
            if nden > _DEN_GUARD:
                return 0, fail, one
            num = num * (nden // den) + xp[v] * (nden // xq[v])
            den = nden
            if num > _DEN_GUARD:
                return 0, fail, one
        if num > den:  # sum > 1
            return 0, fail, one
    # dual feasibility: sum over sets containing v of y_I >= 1, every vertex
    for v in range(nv):
        num = np.int64(0)
        den = np.int64(1)
        for i in range(msets):
            if (set_masks[i] >> v) & 1:
                g = _gcd(den, yq[i])
                nden = (den // g) * yq[i]
                if nden > _DEN_GUARD:
                    return 0, fail, one
                num = num * (nden // den) + yp[i] * (nden // yq[i])
                den = nden
                if num > _DEN_GUARD:
                    return 0, fail, one
        if num < den:  # sum < 1
            return 0, fail, one
    # strong duality: sum x == sum y == vp/vq
    for which in range(2):
        num = np.int64(0)
        den = np.int64(1)
        cnt = nv if which == 0 else msets
        for i in range(cnt):
            p = xp[i] if which == 0 else yp[i]
            q = xq[i] if which == 0 else yq[i]
            g = _gcd(den, q)
            nden = (den // g) * q
            if nden > _DEN_GUARD:
                return 0, fail, one
            num = num * (nden // den) + p * (nden // q)
            den = nden
            if num > _DEN_GUARD:
                return 0, fail, one
        if num * vq != vp * den:
            return 0, fail, one
    return 1, vp, vq


# ===== pair structure =======================================================

@njit(cache=True)
def _pair_exists(cadj, n, orderv, t):
    """Is there a t-subset inducing max degree <= 1 in the complement?"""
    if t > n:
        return False
    if t <= 0:
        return True
    starts = np.empty(t + 1, np.int64)
    tms = np.empty(t + 1, np.int64)
    mts = np.empty(t + 1, np.int64)
    depth = 0
    starts[0] = 0
    tms[0] = 0
    mts[0] = 0
    while depth >= 0:
        advanced = False
        k = starts[depth]
        while k <= n - (t - depth):
            v = orderv[k]
            x = cadj[v] & tms[depth]
            if x == 0:
                add = np.int64(0)
            elif (x & (x - 1)) == 0 and (x & mts[depth]) == 0:
                add = x | (np.int64(1) << v)
            else:
                k += 1
                continue
            starts[depth] = k + 1
            depth += 1
            if depth == t:
                return True
            tms[depth] = tms[depth - 1] | (np.int64(1) << v)
            mts[depth] = mts[depth - 1] | add
            starts[depth] = k + 1
            advanced = True
            break
        if not advanced:
            depth -= 1
    return False


# ===== classify =============================================================

@njit(cache=True)
def _classify_code(adj, n):
    """Cascade verdict code: 0 -> (1), 1 -> (2.1), 2 -> (2.2), 3 -> needs a
    pattern filter, -1 -> bail to Python.  Returns (code, chi_p, chi_q)."""
    full = (np.int64(1) << n) - 1
    if not _connected(adj, n):
        return 0, np.int64(0), np.int64(1)
    cadj = np.empty(n, np.int64)
    for v in range(n):
        cadj[v] = full & ~adj[v] & ~(np.int64(1) << v)
    if not _connected(cadj, n):
        return 0, np.int64(0), np.int64(1)
    sets = np.empty(_MAX_SETS, np.int64)
    msets = _bk_cliques(cadj, n, sets)
    if msets <= 0:
        return -1, np.int64(0), np.int64(1)
    cl = np.empty(_MAX_SETS, np.int64)
    ncl = _bk_cliques(adj, n, cl)
    if ncl <= 0:
        return -1, np.int64(0), np.int64(1)
    omega = np.int64(0)
    for i in range(ncl):
        c = _POP[cl[i]]
        if c > omega:
            omega = c
    ok, p, q = _chi_exact(sets, msets, n)
    if ok == 0:
        return -1, np.int64(0), np.int64(1)
    if p <= omega * q:
        return 1, p, q
    t = (p + q - 1) // q
    orderv = np.empty(n, np.int64)
    degs = np.empty(n, np.int64)
    for v in range(n):
        orderv[v] = v
        degs[v] = _POP[adj[v]]
    for i in range(1, n):
        dv = degs[orderv[i]]
        vv = orderv[i]
        j = i - 1
        while j >= 0 and degs[orderv[j]] < dv:
            orderv[j + 1] = orderv[j]
            j -= 1
        orderv[j + 1] = vv
    if _pair_exists(cadj, n, orderv, t):
        return 2, p, q
    return 3, p, q


@njit(cache=True)
def _expand_batch(padj, k, do_classify):
    """All augmentations of an order-k parent: candidate subsets, accept
    status, canonical orders for discrete accepts, verdicts on request."""
    nk = k + 1
    buf = np.empty(1 << k, np.int64)
    ncand = _min_deg_candidates(padj, k, buf)
    cands = buf[:ncand].copy()
    status = np.empty(ncand, np.int8)
    perms = np.empty((ncand, nk), np.int64)
    verdict = np.full(ncand, -2, np.int8)
    chip = np.zeros(ncand, np.int64)
    chiq = np.ones(ncand, np.int64)
    child = np.empty(nk, np.int64)
    order = np.empty(nk, np.int64)
    for i in range(ncand):
        s = cands[i]
        for u in range(k):
            child[u] = padj[u]
        child[k] = s
        mm = s
        while mm:
            u = _POP[(mm & -mm) - 1]
            mm &= mm - 1
            child[u] |= np.int64(1) << k
        st = _refine_status(child, nk, order)
        status[i] = st
        if st == 1:
            for j in range(nk):
                perms[i, j] = order[j]
            if do_classify == 1:
                code, p, q = _classify_code(child, nk)
                verdict[i] = code
                chip[i] = p
                chiq[i] = q
    return cands, status, perms, verdict, chip, chiq


def warm():
    """Force-compile every kernel on a trivial input (cached afterwards)."""
    out = np.empty(2, np.int64)
    _refine_status(np.array([2, 1], dtype=np.int64), 2, out)
    _classify_code(np.array([2, 1], dtype=np.int64), 2)
    _expand_batch(np.array([0], dtype=np.int64), 1, 1)


# ===== python-side drivers =================================================

_VERDICT_NAME = {0: "1", 1: "2.1", 2: "2.2"}


def accept_via_python(child_adj, nk):
    """Full canonical search fallback for undecided candidates."""
    res = canonicalize(Graph(nk, tuple(child_adj)))
    last = res.order[nk - 1]
    if res.orbit_reps[last] != res.orbit_reps[nk - 1]:
        return None
    return res.key, res.generators


def _classify_final(child, nk, code, p, q, finals):
    """Resolve codes 3 (run the pattern filters) and -1 (exact reclassify).

    Returns the final filter id; survivors are appended to finals.
    """
    from fractions import Fraction
    from .census import classify
    from .induced import FILTER_TABLE, find_induced_embedding

    g = Graph(nk, tuple(int(r) for r in child))
    if code == -1:
        v = classify(g)
        if v.filter_id == "survived":
            finals.append(encode(g))
        return v.filter_id
    chi = Fraction(int(p), int(q))
    if nk >= 6:
        for f in FILTER_TABLE:
            if chi > f.xi_upper or f.graph.n > nk:
                continue
            if find_induced_embedding(f.graph, g) is not None:
                return f.filter_id
    finals.append(encode(g))
    return "survived"


def census_shard(n, shard, total_shards, eliminated, finals,
                 survivor_stage, spool):
    """Kernel-driven census over one shard; mirrors the pure run_shard.

    Mutates `eliminated` (filter id -> count) and `finals` (surviving
    graph6 strings); returns (total, spool_count, spool_crc, survived).
    """
    from .census import _survives_stage
    from .generate import _is_orbit_min

    warm()
    depth = max(1, min(8, n - 1))
    total = 0
    survived = 0
    spool_count = 0
    spool_crc = 0

    def record(filter_id, child, nk):
        nonlocal survived, spool_count, spool_crc
        if filter_id == "survived":
            survived += 1
        else:
            eliminated[filter_id] += 1
        if survivor_stage is not None and _survives_stage(filter_id, survivor_stage):
            g = Graph(nk, tuple(int(r) for r in child))
            if spool is not None:
                spool.write(encode(g) + "\n")
            spool_crc = zlib.crc32(key_to_form_bytes(g.n, canonicalize(g).key),
                                   spool_crc)
            spool_count += 1

    def classify_and_record(child, nk, code, p, q):
        nonlocal total
        total += 1
        if code == 3 or code == -1:
            fid = _classify_final(child, nk, code, p, q, finals)
        else:
            fid = _VERDICT_NAME[code]
        record(fid, child, nk)

    def walk(adj, k, gens, key):
        if k == depth and total_shards > 1:
            if zlib.crc32(key_to_form_bytes(k, key)) % total_shards != shard:
                return
        if k == n:  # only the order-1 root lands here
            code, p, q = _classify_code(np.asarray(adj, dtype=np.int64), k)
            classify_and_record(adj, k, int(code), int(p), int(q))
            return
        classify_here = 1 if (k + 1 == n) else 0
        cands, status, perms, verdicts, chips, chiqs = _expand_batch(
            np.asarray(adj, dtype=np.int64), k, classify_here)
        nk = k + 1
        for i in range(len(cands)):
            st = status[i]
            if st == 0:
                continue
            s = int(cands[i])
            if gens and not _is_orbit_min(s, gens):
                continue
            child = list(adj) + [s]
            mm = s
            while mm:
                u = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                child[u] |= 1 << k
            child_gens = []
            child_key = None
            if st == 1:
                if nk == depth and total_shards > 1:
                    child_key = _leaf_key(child, tuple(int(x) for x in perms[i]))
            else:
                resolved = accept_via_python(child, nk)
                if resolved is None:
                    continue
                child_key, child_gens = resolved
            if nk == n:
                if st == 1:
                    code, p, q = int(verdicts[i]), int(chips[i]), int(chiqs[i])
                else:
                    c2, p2, q2 = _classify_code(np.asarray(child, dtype=np.int64), nk)
                    code, p, q = int(c2), int(p2), int(q2)
                classify_and_record(child, nk, code, p, q)
            else:
                walk(child, nk, child_gens, child_key)

    walk([0], 1, [], (0,))
    return total, spool_count, spool_crc, survived


def expand_accept(adj, k):
    """Fast accept layer for the enumerator: (subsets, statuses, perms)."""
    cands, status, perms, _v, _p, _q = _expand_batch(
        np.asarray(adj, dtype=np.int64), k, 0)
    return cands, status, perms
