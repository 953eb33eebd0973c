"""Ext into twisted S, Krull dimension, depth, CM and finite-length tests, graded Matlis duals.

Local cohomology never appears directly: by graded local duality
H^i_m(M) is the Matlis dual of Ext^{n-i}_S(M, S(-n)), and only the latter
(finitely generated) module is computed.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .groebner import syzygy_vecs
from .homology import free_resolution, hilbert_numerator, pd
from .modules import FPModule, present_vecs, standard_basis, subquotient
from .poly import PolyRing, monomials_of_degree

DEPTH_OF_ZERO = float("inf")


def _dual_columns(cols, source_rank, target_rank):
    """Transpose of a free map given by columns (source -> target)."""
    dual = [{} for _ in range(target_rank)]
    for c, col in enumerate(cols):
        for (r, m), x in col.items():
            dual[r][(c, m)] = x
    return dual


def ext_module(i: int, M: FPModule, twist: int) -> FPModule:
    """Ext^i_S(M, S(twist)) from the dual of the minimal free resolution."""
    if i < 0:
        raise ValueError("Ext index must be nonnegative")
    ring = M.ring
    if M.is_zero():
        return FPModule.zero(ring)
    res = free_resolution(M)
    if i > res.length:
        return FPModule.zero(ring)
    p = ring.p

    def dual_twists(j):
        return [-a - twist for a in res.modules[j].twists]

    tw_i = dual_twists(i)
    if i < res.length:
        out_cols = _dual_columns(res.maps[i].lift, res.modules[i + 1].rank, res.modules[i].rank)
        _, gens = syzygy_vecs(out_cols, dual_twists(i + 1), p, tw_i, ring.n)
    else:
        gens = [{(k, ring.one_mono): 1} for k in range(len(tw_i))]
    rels = []
    if i >= 1:
        rels = _dual_columns(res.maps[i - 1].lift, res.modules[i].rank, res.modules[i - 1].rank)
    return subquotient(ring, tw_i, gens, rels)[0]


def local_cohomology_dual(i: int, M: FPModule) -> FPModule:
    """The finitely generated Matlis dual of H^i_m(M), namely Ext^{n-i}(M, S(-n))."""
    n = M.ring.n
    if i < 0 or i > n:
        return FPModule.zero(M.ring)
    return ext_module(n - i, M, -n)


def _root_multiplicity_at_one(coeffs: dict) -> int:
    """Order of vanishing at t = 1 of a Laurent polynomial ``{exponent: coefficient}``."""
    if not coeffs:
        raise ValueError("zero polynomial")
    lo = min(coeffs)
    poly = [0] * (max(coeffs) - lo + 1)
    for a, c in coeffs.items():
        poly[a - lo] = c
    mult = 0
    while sum(poly) == 0:
        # synthetic division by (t - 1), highest degree first
        q = []
        acc = 0
        for c in reversed(poly):
            acc += c
            q.append(acc)
        q.pop()
        poly = list(reversed(q))
        mult += 1
    return mult


def krull_dim(M: FPModule) -> int:
    if M.is_zero():
        return -1
    num = hilbert_numerator(M)
    if not num:
        return -1
    return M.ring.n - _root_multiplicity_at_one(num)


def depth(M: FPModule) -> int:
    if M.is_zero():
        raise ValueError("depth undefined for the zero module")
    return M.ring.n - pd(M)


def is_cohen_macaulay(M: FPModule) -> bool:
    """depth = dim; the zero module counts as Cohen-Macaulay."""
    if M.is_zero():
        return True
    return depth(M) == krull_dim(M)


def is_finite_length(M: FPModule) -> bool:
    return krull_dim(M) <= 0


@dataclass(frozen=True)
class InvariantReport:
    dim: int
    depth: float  # DEPTH_OF_ZERO for M = 0
    isCM: bool
    isFiniteLength: bool

    def render(self) -> str:
        d = "inf" if self.depth == DEPTH_OF_ZERO else str(self.depth)
        yn = lambda b: "yes" if b else "no"
        return f"dim={self.dim}, depth={d}, CM={yn(self.isCM)}, finite_length={yn(self.isFiniteLength)}"


def invariants(M: FPModule) -> InvariantReport:
    dim = krull_dim(M)
    dep = DEPTH_OF_ZERO if M.is_zero() else depth(M)
    return InvariantReport(dim, dep, is_cohen_macaulay(M), dim <= 0)


# ---------------------------------------------------------------------------
# graded pieces and Matlis duality for finite length modules


def graded_structure(M: FPModule):
    """Bases and multiplication maps of a finite length module.

    Returns ``(bases, action)``: ``bases[d]`` lists standard terms of M_d and
    ``action[(j, d)][b]`` is the image of basis element b of M_d under x_j, as
    ``{index in bases[d+1]: coefficient}``.
    """
    if M.is_zero():
        return {}, {}
    ring = M.ring
    lo = min(M.twists)
    top = max(M.twists)
    bases = {}
    d = lo
    while True:
        b = standard_basis(M, d)
        if not b and d >= top:
            break
        bases[d] = b
        d += 1
    p = ring.p
    index = {d: {t: k for k, t in enumerate(b)} for d, b in bases.items()}
    action = {}
    for d, b in bases.items():
        for j in range(ring.n):
            xj = ring.var_mono(j)
            imgs = []
            for c, m in b:
                v = M.reduce({(c, tuple(e + f for e, f in zip(m, xj))): 1})
                imgs.append({index[d + 1][t]: x for t, x in v.items()} if v else {})
            action[(j, d)] = imgs
    return bases, action


def module_from_graded_data(ring: PolyRing, dims: dict, action: dict) -> FPModule:
    """Present a finite length module from its graded pieces and variable actions.

    ``dims[d]`` is dim V_d; ``action[(j, d)][b]`` is x_j applied to basis
    vector b of V_d, as a sparse vector of V_{d+1}.
    """
    p = ring.p
    degs = sorted(d for d, k in dims.items() if k)
    if not degs:
        return FPModule.zero(ring)
    lo, hi = degs[0], degs[-1]
    gens = []  # (degree, vector)
    for d in range(lo, hi + 1):
        e = linalg.Echelon(p)
        for j in range(ring.n):
            for img in action.get((j, d - 1), ()):
                if img:
                    e.add(img)
        for b in range(dims.get(d, 0)):
            if e.add({b: 1}) is None:
                gens.append((d, {b: 1}))
    twists = [d for d, _ in gens]
    memo = {}

    def image(g, mono):
        key = (g, mono)
        if key in memo:
            return memo[key]
        if not any(mono):
            out = gens[g][1]
        else:
            j = next(i for i, e in enumerate(mono) if e)
            prev = tuple(e - (i == j) for i, e in enumerate(mono))
            src = image(g, prev)
            dsrc = twists[g] + sum(prev)
            out = {}
            mats = action.get((j, dsrc), ())
            for b, x in src.items():
                vec_iadd_plain(out, mats[b] if b < len(mats) else {}, x, p)
        memo[key] = out
        return out

    relations = []
    prev_kernel = []
    for d in range(lo, hi + 2):
        basis = [(g, m) for g, t in enumerate(twists) for m in monomials_of_degree(ring.n, d - t)]
        if not basis:
            prev_kernel = []
            continue
        cols = [image(g, m) if d <= hi else {} for g, m in basis]
        ker = linalg.kernel_of_columns(cols, p)
        ker_vecs = [{basis[k]: x for k, x in v.items()} for v in ker]
        e = linalg.Echelon(p)
        for v in prev_kernel:
            for j in range(ring.n):
                xj = ring.var_mono(j)
                e.add({(g, tuple(a + b for a, b in zip(m, xj))): x for (g, m), x in v.items()})
        for v in ker_vecs:
            if e.add(v) is None:
                relations.append(v)
        prev_kernel = ker_vecs
    return present_vecs(ring, twists, relations)


def vec_iadd_plain(y, x, a, p):
    for k, v in x.items():
        w = (y.get(k, 0) + a * v) % p
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def matlis_dual_finite(M: FPModule) -> FPModule:
    """Graded dual: D(M)_d = Hom_k(M_{-d}, k) with the transposed variable action."""
    if not is_finite_length(M):
        raise ValueError("Matlis dual representable only for finite length")
    ring = M.ring
    bases, action = graded_structure(M)
    dims = {-d: len(b) for d, b in bases.items()}
    daction = {}
    for d, b in bases.items():
        # x_j: M_{d-1} -> M_d transposes to D_{-d} -> D_{-d+1}
        for j in range(ring.n):
            src = action.get((j, d - 1), [])
            imgs = [{} for _ in b]
            for col, img in enumerate(src):
                for row, x in img.items():
                    imgs[row][col] = x
            daction[(j, -d)] = imgs
    return module_from_graded_data(ring, dims, daction)


def graded_dimensions(M: FPModule, lo: int, hi: int) -> list:
    return [len(standard_basis(M, d)) for d in range(lo, hi + 1)]
