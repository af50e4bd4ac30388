"""Exact fractional chromatic number via LP over maximal independent sets.

The LP is    maximize sum_v x_v   s.t.  sum_{v in I} x_v <= 1  for every
maximal independent set I, x >= 0.  Constraints over non-maximal sets are
dominated, so the maximal family suffices and keeps the tableau tiny
(<= 12 variables and a few dozen rows at census orders).

Two solvers, deliberately independent:

* `frac_chromatic` -- the primary path: a fraction-free simplex (integer
  tableau with a running divisor, Edmonds/Bareiss pivoting, Bland's rule
  for anti-cycling).  Every tableau entry stays an exact integer minor, so
  the optimum, the primal vector and the dual vector are read off as exact
  rationals with no rounding anywhere.

* `frac_chromatic_reconstructed` -- the floating-point route: an off-the-
  shelf LP solve, then per-component rational reconstruction (closest
  fraction with denominator <= n*m, accepted only within eps = 1e-12) and
  an exact feasibility + strong-duality verification of the reconstructed
  certificate.

`Rational` is `fractions.Fraction`: already lowest-terms, positive
denominator, arbitrary precision.
"""

from __future__ import annotations

from fractions import Fraction

from .graphs import Graph
from .cliques import maximal_independent_sets, IndependentSetFamily

Rational = Fraction

EPS_RECONSTRUCT = 1e-12


class ReconstructionError(ArithmeticError):
    """Float-to-rational reconstruction missed the tolerance or the check."""


class LpCertificate:
    """Exact primal/dual optimum pair for the independent-set LP."""

    __slots__ = ("sets", "primal", "dual", "value")

    def __init__(self, sets, primal, dual, value):
        self.sets = [tuple(s) for s in sets]
        self.primal = list(primal)
        self.dual = list(dual)
        self.value = value

    def __repr__(self):
        return f"LpCertificate(value={self.value}, sets={len(self.sets)})"


# ===== fraction-free simplex ==============================================

def _simplex_max_01(nv: int, set_masks):
    """Maximize 1.x over {Ax <= 1, x >= 0}, A the 0/1 set-membership matrix.

    Returns (value, primal, dual) as Fractions.  Tableau entries are kept
    as integers M with a shared divisor d (the previous pivot), so every
    true entry M/d is an exact basis minor; Bland's smallest-index rule
    guarantees termination.
    """
    m = len(set_masks)
    width = nv + m + 1  # variables, slacks, rhs
    rows = []
    for i, mask in enumerate(set_masks):
        row = [0] * width
        mm = mask
        while mm:
            v = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            row[v] = 1
        row[nv + i] = 1
        row[width - 1] = 1
        rows.append(row)
    zrow = [-1] * nv + [0] * m + [0]
    basis = [nv + i for i in range(m)]
    d = 1

    while True:
        q = -1
        for j in range(nv + m):
            if zrow[j] < 0:
                q = j
                break
        if q < 0:
            break
        p = -1
        for i in range(m):
            piq = rows[i][q]
            if piq <= 0:
                continue
            if p < 0:
                p = i
                continue
            # ratio compare rhs_i/piq vs rhs_p/ppq, Bland tie-break
            lhs = rows[i][width - 1] * rows[p][q]
            rhs = rows[p][width - 1] * piq
            if lhs < rhs or (lhs == rhs and basis[i] < basis[p]):
                p = i
        if p < 0:
            raise ArithmeticError("LP unbounded (impossible for this family)")
        piv_row = rows[p]
        piv = piv_row[q]
        for i in range(m):
            if i == p:
                continue
            row = rows[i]
            f = row[q]
            if f == 0:
                if d != 1:
                    for c in range(width):
                        row[c] = row[c] * piv // d
                elif piv != 1:
                    for c in range(width):
                        row[c] *= piv
            else:
                for c in range(width):
                    row[c] = (row[c] * piv - f * piv_row[c]) // d
        f = zrow[q]
        if f == 0:
            if d != 1 or piv != 1:
                for c in range(width):
                    zrow[c] = zrow[c] * piv // d
        else:
            for c in range(width):
                zrow[c] = (zrow[c] * piv - f * piv_row[c]) // d
        basis[p] = q
        d = piv

    value = Fraction(zrow[width - 1], d)
    primal = [Fraction(0)] * nv
    for i in range(m):
        if basis[i] < nv:
            primal[basis[i]] = Fraction(rows[i][width - 1], d)
    dual = [Fraction(zrow[nv + i], d) for i in range(m)]
    return value, primal, dual


def frac_chromatic(g: Graph, family: IndependentSetFamily = None):
    """Exact chi_f(g) with a certificate that passes `verify_certificate`."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    fam = family if family is not None else maximal_independent_sets(g)
    value, primal, dual = _simplex_max_01(g.n, fam.masks)
    cert = LpCertificate(fam.sets, primal, dual, value)
    if not verify_certificate(g, cert, family=fam):
        raise AssertionError("exact simplex produced an invalid certificate")
    return value, cert


# ===== certificate checking ===============================================

def verify_certificate(g: Graph, cert: LpCertificate,
                       family: IndependentSetFamily = None) -> bool:
    """Exact rational check: primal feasible, dual feasible, objectives equal.

    Raises ValueError if the certificate's sets are not the maximal
    independent sets of g (index mismatch); returns False on any
    feasibility or duality failure.
    """
    fam = family if family is not None else maximal_independent_sets(g)
    if [tuple(s) for s in cert.sets] != fam.sets:
        raise ValueError("certificate sets do not match the graph's maximal independent sets")
    if len(cert.primal) != g.n or len(cert.dual) != len(fam.sets):
        raise ValueError("certificate weight vectors have wrong length")
    x = cert.primal
    y = cert.dual
    if any(xv < 0 for xv in x) or any(yi < 0 for yi in y):
        return False
    for s in fam.sets:
        if sum(x[v] for v in s) > 1:
            return False
    for v in range(g.n):
        if sum(yi for yi, s in zip(y, fam.sets) if v in s) < 1:
            return False
    obj_p = sum(x, Fraction(0))
    obj_d = sum(y, Fraction(0))
    return obj_p == obj_d == cert.value


# ===== float solve + rational reconstruction ==============================

def reconstruct_rational(x: float, max_den: int, eps: float = EPS_RECONSTRUCT) -> Fraction:
    """Closest fraction with denominator <= max_den; must land within eps."""
    f = Fraction(x).limit_denominator(max_den)
    if abs(f - Fraction(x)) > eps:
        raise ReconstructionError(
            f"no denominator-{max_den} rational within {eps} of {x!r}")
    return f


def frac_chromatic_reconstructed(g: Graph, family: IndependentSetFamily = None):
    """Float LP + continued-fraction reconstruction + exact verification.

    Mirrors the published exactness procedure: solve in floating point,
    approximate every weight by a rational with denominator at most n*m
    (accuracy threshold 1e-12), then re-check feasibility and strong
    duality in exact arithmetic.  Raises ReconstructionError if any step
    fails; on success the result equals the exact simplex value.
    """
    from scipy.optimize import linprog
    import numpy as np

    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    fam = family if family is not None else maximal_independent_sets(g)
    nv, m = g.n, len(fam.sets)
    a_ub = np.zeros((m, nv))
    for i, s in enumerate(fam.sets):
        for v in s:
            a_ub[i, v] = 1.0
    res = linprog(c=-np.ones(nv), A_ub=a_ub, b_ub=np.ones(m),
                  bounds=(0, None), method="highs")
    if not res.success:
        raise ReconstructionError(f"float LP failed: {res.message}")
    max_den = nv * m
    primal = [reconstruct_rational(float(v), max_den) for v in res.x]
    dual = [reconstruct_rational(-float(v), max_den) for v in res.ineqlin.marginals]
    value = reconstruct_rational(-float(res.fun), max_den)
    cert = LpCertificate(fam.sets, primal, dual, value)
    if not verify_certificate(g, cert, family=fam):
        raise ReconstructionError("reconstructed certificate failed exact verification")
    return value, cert


# ===== audit-log serialization ============================================

def serialize_certificate(g6: str, cert: LpCertificate) -> str:
    """Line-oriented text: graph6, value p/q, primal weights, dual weights."""
    def frac(f):
        return f"{f.numerator}/{f.denominator}"

    return "\n".join([
        g6,
        frac(cert.value),
        " ".join(frac(x) for x in cert.primal),
        " ".join(frac(y) for y in cert.dual),
    ]) + "\n"


def parse_certificate(text: str):
    """Inverse of serialize_certificate -> (graph6 string, LpCertificate).

    The constraint sets are recomputed from the graph (they are a pure
    function of it), so the four serialized lines fully determine the
    certificate.
    """
    from .graph6 import decode

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 4:
        raise ValueError(f"expected 4 lines, got {len(lines)}")
    g6 = lines[0].strip()
    g = decode(g6)
    fam = maximal_independent_sets(g)

    def frac(tok):
        num, _, den = tok.partition("/")
        return Fraction(int(num), int(den) if den else 1)

    value = frac(lines[1].strip())
    primal = [frac(t) for t in lines[2].split()]
    dual = [frac(t) for t in lines[3].split()]
    return g6, LpCertificate(fam.sets, primal, dual, value)
