"""Faithful orthogonal representations: numerical search and verification.

A representation assigns a unit vector (a ray) to every vertex.  It is an
orthogonal representation (OR) when adjacent vertices get orthogonal rays,
and faithful (FOR) when additionally non-adjacent vertices get
non-orthogonal rays and no two rays coincide.  The smallest dimension
admitting a FOR upper-bounds nothing below chi_f for a counterexample, so
certified FORs back the dimension values attached to the filter patterns.

The verifier is plain linear algebra over the supplied vectors and is
independent of the search.  The search minimizes

    sum_edges |<u,v>|^2  +  sum_non-edges hinge(tau_sep' - |<u,v>|)^2
                         +  sum_pairs    hinge(|<u,v>| - (1-delta'))^2

by L-BFGS from seeded random starts, then polishes edge orthogonality to
machine precision by cyclic projection (each vector is reprojected onto
the orthogonal complement of its neighbours' span until the largest edge
violation is far below the certification tolerance).  Restart seeds derive
deterministically from the user seed, so results are reproducible.

Certification here is numerical, not symbolic: a verified FOR certifies
the upper bound at the stated tolerances; failure to find one proves
nothing.
"""

from __future__ import annotations

import numpy as np

from .graphs import Graph

TAU_ORTH = 1e-9
TAU_SEP = 1e-6
DELTA_RAY = 1e-6


class OrthRep:
    """dimension d plus one unit vector per vertex (complex, length d)."""

    __slots__ = ("dimension", "vectors")

    def __init__(self, dimension: int, vectors):
        self.dimension = dimension
        self.vectors = np.asarray(vectors, dtype=complex)
        if self.vectors.ndim != 2 or self.vectors.shape[1] != dimension:
            raise ValueError("vectors must be (n, dimension)")

    @property
    def order(self):
        return self.vectors.shape[0]


class ForReport:
    """Verification outcome: OR-ness, faithfulness, and the margins."""

    __slots__ = ("is_or", "is_faithful", "max_edge_violation",
                 "min_nonedge_overlap", "ray_injective", "min_ray_gap")

    def __init__(self, is_or, is_faithful, max_edge_violation,
                 min_nonedge_overlap, ray_injective, min_ray_gap):
        self.is_or = is_or
        self.is_faithful = is_faithful
        self.max_edge_violation = max_edge_violation
        self.min_nonedge_overlap = min_nonedge_overlap
        self.ray_injective = ray_injective
        self.min_ray_gap = min_ray_gap

    def __repr__(self):
        return (f"ForReport(is_or={self.is_or}, is_faithful={self.is_faithful}, "
                f"max_edge_violation={self.max_edge_violation:.3e}, "
                f"min_nonedge_overlap={self.min_nonedge_overlap:.3e})")


def verify_for(g: Graph, rep: OrthRep, tolerances=(TAU_ORTH, TAU_SEP, DELTA_RAY)) -> ForReport:
    """Check a representation against g from raw inner products.

    Raises ValueError on an order/dimension mismatch or a vector that is
    not normalized to within the orthogonality tolerance.
    """
    tau_orth, tau_sep, delta_ray = tolerances
    if rep.order != g.n:
        raise ValueError(f"representation has {rep.order} vectors for {g.n} vertices")
    if rep.dimension < 1:
        raise ValueError("dimension must be >= 1")
    v = rep.vectors
    norms = np.linalg.norm(v, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-6):
        raise ValueError("vector not unit-norm within tolerance")

    gram = np.abs(v @ v.conj().T)
    max_edge = 0.0
    min_nonedge = np.inf
    max_pair = 0.0
    for a in range(g.n):
        for b in range(a + 1, g.n):
            ov = gram[a, b]
            if g.has_edge(a, b):
                max_edge = max(max_edge, ov)
            else:
                min_nonedge = min(min_nonedge, ov)
            max_pair = max(max_pair, ov)
    if g.n < 2:
        min_nonedge = np.inf
    is_or = max_edge <= tau_orth
    ray_injective = max_pair < 1.0 - delta_ray
    faithful = bool(is_or and ray_injective
                    and (min_nonedge >= tau_sep or not np.isfinite(min_nonedge)))
    return ForReport(bool(is_or), faithful, float(max_edge),
                     float(min_nonedge) if np.isfinite(min_nonedge) else float("inf"),
                     bool(ray_injective), float(1.0 - max_pair))


# ===== search ==============================================================

def _objective_grad(x, n, d, epairs, npairs, complex_mode,
                    sep_target=1e-3, ray_target=1e-3, edge_weight=1.0):
    """Penalty objective and gradient over flattened real parameters."""
    if complex_mode:
        v = (x[: n * d] + 1j * x[n * d:]).reshape(n, d)
    else:
        v = x.reshape(n, d).astype(complex)
    norms = np.linalg.norm(v, axis=1)
    norms = np.where(norms < 1e-12, 1.0, norms)
    u = v / norms[:, None]
    gram = u @ u.conj().T

    grad_u = np.zeros_like(u)
    total = 0.0
    # edges: drive |<a,b>|^2 to zero
    for a, b in epairs:
        ip = gram[a, b]
        total += edge_weight * abs(ip) ** 2
        grad_u[a] += edge_weight * ip * u[b]
        grad_u[b] += edge_weight * np.conj(ip) * u[a]
    # non-edges: keep |<a,b>| above sep_target (hinge)
    for a, b in npairs:
        ip = gram[a, b]
        m = abs(ip)
        if m < sep_target:
            w = (m - sep_target)
            total += w * w
            if m > 1e-12:
                grad_u[a] += w * (ip / m) * u[b]
                grad_u[b] += w * (np.conj(ip) / m) * u[a]
    # all pairs: keep rays apart (|<a,b>| below 1 - ray_target)
    cap = 1.0 - ray_target
    for a in range(n):
        for b in range(a + 1, n):
            ip = gram[a, b]
            m = abs(ip)
            if m > cap:
                w = (m - cap)
                total += w * w
                grad_u[a] += w * (ip / m) * u[b]
                grad_u[b] += w * (np.conj(ip) / m) * u[a]

    # back through the normalization: v = u * norm, grad_v = (I - u u*) grad_u / norm
    inner = np.real(np.sum(np.conj(u) * grad_u, axis=1))
    grad_v = (grad_u - inner[:, None] * u) / norms[:, None]
    if complex_mode:
        grad = np.concatenate([np.real(grad_v).ravel() * 2,
                               np.imag(grad_v).ravel() * 2])
    else:
        grad = np.real(grad_v).ravel() * 2
    return total, grad


def _polish(vectors, g, d, rounds=500, target=1e-13):
    """Cyclic projection: push edge violations to machine precision.

    Each vector is reprojected off its neighbours' span.  A vertex of
    degree >= d can only work if its neighbours are linearly dependent, so
    the span is rank-truncated to d-1 (keeping the dominant singular
    directions); near a true representation the discarded directions carry
    vanishing weight and the final verification measures the full residual
    anyway.
    """
    v = vectors.copy()
    n = g.n
    nbrs = [g.neighbors(a) for a in range(n)]
    worst = np.inf
    for _ in range(rounds):
        for a in range(n):
            if not nbrs[a]:
                continue
            basis = v[nbrs[a]].T  # d x deg
            r = min(len(nbrs[a]), d - 1)
            u, _s, _vh = np.linalg.svd(basis, full_matrices=False)
            uk = u[:, :r]
            w = v[a] - uk @ (uk.conj().T @ v[a])
            nw = np.linalg.norm(w)
            if nw < 1e-10:
                return None  # vector collapsed into the neighbour span
            v[a] = w / nw
        gram = np.abs(v @ v.conj().T)
        worst = 0.0
        for a in range(n):
            for b in nbrs[a]:
                if b > a:
                    worst = max(worst, gram[a, b])
        if worst <= target:
            return v
    return v if worst <= 1e-10 else None


def search_for(g: Graph, d: int, budget: int = 10 ** 6, seed: int = 0,
               real: bool = False, tolerances=(TAU_ORTH, TAU_SEP, DELTA_RAY)):
    """Look for a FOR of g in dimension d; None if the budget runs out.

    budget counts optimizer iterations summed over restarts.  The result,
    if any, passes verify_for at the given tolerances (the verifier runs
    on every candidate; the optimizer never self-certifies).
    """
    from scipy.optimize import minimize

    if d < 1:
        raise ValueError("dimension must be >= 1")
    n = g.n
    epairs = g.edges()
    npairs = [(a, b) for a in range(n) for b in range(a + 1, n)
              if not g.has_edge(a, b)]
    complex_mode = not real
    spent = 0
    restart = 0
    per_stage = 1500
    while spent < budget:
        rng = np.random.default_rng((seed, restart))
        restart += 1
        if complex_mode:
            x0 = rng.standard_normal(2 * n * d)
        else:
            x0 = rng.standard_normal(n * d)
        # stage 1: balanced penalties from the random start
        res = minimize(_objective_grad, x0, jac=True, method="L-BFGS-B",
                       args=(n, d, epairs, npairs, complex_mode),
                       options={"maxiter": min(per_stage, budget - spent),
                                "ftol": 1e-18, "gtol": 1e-14})
        spent += max(res.nit, 1)
        if res.fun > 1e-4 or spent >= budget:
            continue
        # stage 2: upweight orthogonality before the exact polish
        res = minimize(_objective_grad, res.x, jac=True, method="L-BFGS-B",
                       args=(n, d, epairs, npairs, complex_mode, 1e-3, 1e-3, 300.0),
                       options={"maxiter": min(per_stage, budget - spent),
                                "ftol": 1e-18, "gtol": 1e-14})
        spent += max(res.nit, 1)
        if complex_mode:
            v = (res.x[: n * d] + 1j * res.x[n * d:]).reshape(n, d)
        else:
            v = res.x.reshape(n, d).astype(complex)
        norms = np.linalg.norm(v, axis=1)
        if np.any(norms < 1e-9):
            continue
        v = v / norms[:, None]
        polished = _polish(v, g, d)
        if polished is None:
            continue
        rep = OrthRep(d, polished)
        report = verify_for(g, rep, tolerances)
        if report.is_or and report.is_faithful:
            return rep
    return None


# ===== joins and the pair lower bound ======================================

def join_reps(rep1: OrthRep, rep2: OrthRep) -> OrthRep:
    """FOR of a join from FORs of the parts, in orthogonal coordinate blocks.

    Cross pairs are orthogonal by construction (disjoint supports), edges
    within each part stay orthogonal, non-edges keep their overlaps: the
    result represents g1 + g2 in dimension d1 + d2.
    """
    n1, d1 = rep1.vectors.shape
    n2, d2 = rep2.vectors.shape
    out = np.zeros((n1 + n2, d1 + d2), dtype=complex)
    out[:n1, :d1] = rep1.vectors
    out[n1:, d1:] = rep2.vectors
    return OrthRep(d1 + d2, out)


def xi_lower_bound_pairs(g: Graph) -> int:
    """Largest t = 2n+m (m in {0,1}) whose joined-pair structure embeds.

    Any orthogonal representation must give the structure's n pairs
    mutually orthogonal 2-dimensional supports plus m more dimensions, so
    t lower-bounds the OR dimension and hence the FOR dimension.
    """
    from .cliques import find_pair_structure

    for t in range(g.n, 0, -1):
        if find_pair_structure(g, t) is not None:
            return t
    return 0


# ===== serialization =======================================================

def serialize_rep(g6: str, rep: OrthRep) -> str:
    """Text form: graph6 line, dimension line, one vector per line.

    Components are comma-separated "re±imj" pairs with 17 significant
    digits -- enough to round-trip IEEE doubles exactly.
    """
    lines = [g6, str(rep.dimension)]
    for row in rep.vectors:
        lines.append(",".join(
            f"{c.real:+.17g}{c.imag:+.17g}j" for c in row))
    return "\n".join(lines) + "\n"


def parse_rep(text: str):
    """Inverse of serialize_rep -> (graph6 string, OrthRep)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    g6 = lines[0].strip()
    d = int(lines[1])
    vecs = []
    for ln in lines[2:]:
        row = []
        for tok in ln.split(","):
            tok = tok.strip()
            if not tok.endswith("j"):
                raise ValueError(f"bad component {tok!r}")
            body = tok[:-1]
            # split "re±im" at the sign of the imaginary part
            for k in range(len(body) - 1, 0, -1):
                if body[k] in "+-" and body[k - 1] not in "eE":
                    row.append(complex(float(body[:k]), float(body[k:])))
                    break
            else:
                raise ValueError(f"bad component {tok!r}")
        vecs.append(row)
    return g6, OrthRep(d, np.asarray(vecs, dtype=complex))
