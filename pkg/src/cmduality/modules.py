"""Finitely presented graded modules M = coker(G -> F) and degree-0 maps between them.

Every :class:`FPModule` is stored canonically: generators with a constant
entry in some relation are eliminated (graded Nakayama), and the remaining
relations are replaced by their reduced Gröbner basis.  Two constructions
of isomorphic modules may still render differently; use
:func:`is_isomorphic` for that question.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .free import (
    FreeMap,
    FreeModule,
    apply_columns,
    freeze,
    render_vec,
    thaw,
    vec_add,
    vec_component,
    vec_degree,
    vec_iadd,
    vec_is_homogeneous,
    vec_mul_poly,
    vec_scale,
)
from .groebner import GroebnerBasis, gb_of_vecs, syzygy_vecs
from .poly import InhomogeneousError, Polynomial, PolyRing, StructureError, monomials_of_degree, mono_divides


class FPModule:
    """Graded module presented as the cokernel of a degree-0 map into ``ambient``."""

    __slots__ = ("ring", "twists", "relations", "__dict__")

    def __init__(self, ring: PolyRing, twists, relations=()):
        # callers guarantee canonical form; use present() otherwise
        self.ring = ring
        self.twists = tuple(twists)
        self.relations = tuple(relations)

    @classmethod
    def free(cls, ring, twists=(0,)):
        return cls(ring, twists, ())

    @classmethod
    def zero(cls, ring):
        return cls(ring, (), ())

    @cached_property
    def ambient(self) -> FreeModule:
        return FreeModule(self.ring, self.twists)

    @cached_property
    def rel_vecs(self) -> list:
        return [thaw(r) for r in self.relations]

    @cached_property
    def rel_degrees(self) -> list:
        return [vec_degree(v, self.twists) for v in self.rel_vecs]

    @cached_property
    def gb(self) -> GroebnerBasis:
        return GroebnerBasis(self.ambient, self.rel_vecs)

    @property
    def relation_map(self) -> FreeMap:
        return FreeMap(FreeModule(self.ring, self.rel_degrees), self.ambient, self.rel_vecs, check=False)

    @property
    def rank(self) -> int:
        return len(self.twists)

    def is_zero(self) -> bool:
        return not self.twists

    def is_free(self) -> bool:
        return not self.relations

    def reduce(self, v: dict) -> dict:
        return self.gb.reduce_vec(v)

    def shift(self, a: int) -> "FPModule":
        """The twist M(a), whose degree-d piece is the degree-(a+d) piece of M."""
        return FPModule(self.ring, tuple(t - a for t in self.twists), self.relations)

    def __eq__(self, other):
        return (
            isinstance(other, FPModule)
            and self.ring == other.ring
            and self.twists == other.twists
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.ring, self.twists, self.relations))

    def __repr__(self):
        return f"FPModule(twists={list(self.twists)}, relations={len(self.relations)})"

    def __str__(self):
        return render_module(self)


def render_module(M: FPModule) -> str:
    """Canonical two-line rendering: generator twists, then relations separated by ``;``."""
    gens = "generators: [" + ", ".join(str(t) for t in M.twists) + "]"
    if not M.relations:
        return gens + "\nrelations: []"
    rels = "; ".join(render_vec(M.ring, v, M.rank) for v in M.rel_vecs)
    return gens + "\nrelations: " + rels


# ---------------------------------------------------------------------------
# canonical presentations


def _canonical(ring, twists, rel_vecs):
    """Eliminate unit entries and Gröbner-reduce the relations.

    Returns ``(module, kept, proj)``: ``kept[k]`` is the old index of new
    generator k, and ``proj[i]`` expresses old generator i in new coordinates.
    """
    p = ring.p
    one = ring.one_mono
    twists = list(twists)
    cols = [dict(v) for v in rel_vecs if v]
    for v in cols:
        if not vec_is_homogeneous(v, twists):
            raise InhomogeneousError("inhomogeneous relation")
    proj = [{(i, one): 1} for i in range(len(twists))]
    alive = list(range(len(twists)))
    while True:
        hit = None
        for j, col in enumerate(cols):
            consts = [c for (c, m) in col if not any(m)]
            if consts:
                hit = (j, min(consts))
                break
        if hit is None:
            break
        j, i = hit
        pivot = cols.pop(j)
        x = pivot[(i, one)]
        a = (-pow(x, p - 2, p)) % p
        w = {k: v for k, v in pivot.items() if k[0] != i}
        w = vec_scale(w, a, p)  # e_i == w modulo the relations

        def substitute(v):
            f = vec_component(v, i)
            if not f:
                return v
            out = {k: c for k, c in v.items() if k[0] != i}
            vec_iadd(out, vec_mul_poly(w, f, p), p)
            return out

        cols = [substitute(c) for c in cols]
        proj = [substitute(v) for v in proj]

        def drop(v):
            return {((c - 1 if c > i else c), m): x for (c, m), x in v.items()}

        cols = [drop(c) for c in cols if c]
        proj = [drop(v) for v in proj]
        del twists[i]
        del alive[i]
    F = FreeModule(ring, twists)
    gb = gb_of_vecs(cols, F)
    M = FPModule(ring, twists, [freeze(v) for v in gb.vecs])
    M.__dict__["gb"] = GroebnerBasis(F, gb.vecs)
    return M, alive, proj


def present(F: FreeModule, rel: FreeMap | None = None) -> FPModule:
    """Canonical module coker(rel: G -> F)."""
    if rel is None:
        return FPModule(F.ring, F.twists, ())
    if rel.target != F:
        raise StructureError("relations must map into F")
    return _canonical(F.ring, F.twists, rel.columns)[0]


def present_vecs(ring, twists, rel_vecs) -> FPModule:
    return _canonical(ring, twists, rel_vecs)[0]


def minimalize(M: FPModule) -> FPModule:
    return _canonical(M.ring, M.twists, M.rel_vecs)[0]


def quotient_ring(ring: PolyRing, polys) -> FPModule:
    """S/I as a cyclic module; ``polys`` are Polynomials or ``{mono: coeff}`` dicts."""
    vecs = []
    for f in polys:
        coeffs = f.coeffs if isinstance(f, Polynomial) else f
        if coeffs:
            vecs.append({(0, m): c for m, c in coeffs.items()})
    return present_vecs(ring, (0,), vecs)


# ---------------------------------------------------------------------------
# maps


class ModuleMap:
    """Degree-0 map given by the images (in the target ambient) of the source generators."""

    __slots__ = ("source", "target", "lift")

    def __init__(self, source: FPModule, target: FPModule, lift, check=True):
        if source.ring != target.ring:
            raise StructureError("modules over different rings")
        lift = [target.reduce(dict(v)) if check else dict(v) for v in lift]
        if len(lift) != source.rank:
            raise StructureError(f"{len(lift)} images for {source.rank} generators")
        self.source = source
        self.target = target
        self.lift = lift
        if check:
            FreeMap(source.ambient, target.ambient, lift)
            self.check_well_defined()

    def check_well_defined(self):
        p = self.source.ring.p
        for k, r in enumerate(self.source.rel_vecs):
            if self.target.reduce(apply_columns(self.lift, r, p)):
                raise StructureError(f"map is not well defined: relation {k} does not map to zero")
        return self

    @classmethod
    def from_matrix(cls, source, target, matrix):
        """``matrix[i][j]``: coefficient of target generator i in the image of source generator j."""
        fm = FreeMap.from_matrix(source.ambient, target.ambient, matrix)
        return cls(source, target, fm.columns)

    @classmethod
    def identity(cls, M: FPModule):
        one = M.ring.one_mono
        return cls(M, M, [{(i, one): 1} for i in range(M.rank)], check=False)

    def apply_vec(self, v: dict) -> dict:
        return self.target.reduce(apply_columns(self.lift, v, self.source.ring.p))

    def is_zero(self) -> bool:
        return not any(self.target.reduce(v) for v in self.lift)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        if other.target != self.source:
            raise StructureError("cannot compose")
        return ModuleMap(other.source, self.target, [self.apply_vec(v) for v in other.lift], check=False)

    def __sub__(self, other):
        p = self.source.ring.p
        return ModuleMap(
            self.source, self.target, [vec_add(a, b, p, -1) for a, b in zip(self.lift, other.lift)], check=False
        )

    def equals(self, other: "ModuleMap") -> bool:
        return (self - other).is_zero()


# ---------------------------------------------------------------------------
# kernels, images, cokernels


def subquotient(ring, amb_twists, gens, rels):
    """Module generated by ``gens`` inside ``F/<rels>``.

    Returns ``(module, lift)``: ``lift[k]`` is the vec in the ambient that
    generator k of the new module maps to.
    """
    gens = [g for g in gens if g]
    rels = [r for r in rels if r]
    if not gens:
        return FPModule.zero(ring), []
    p = ring.p
    gdeg = [vec_degree(g, amb_twists) for g in gens]
    rdeg = [vec_degree(r, amb_twists) for r in rels]
    _, syz = syzygy_vecs(gens + rels, amb_twists, p, gdeg + rdeg, ring.n)
    s = len(gens)
    projected = [{k: x for k, x in v.items() if k[0] < s} for v in syz]
    M, kept, _ = _canonical(ring, gdeg, projected)
    return M, [gens[k] for k in kept]


def _preimage_gens(f: ModuleMap):
    """Generators (in the source ambient) of {m : f(m) = 0}."""
    src, tgt = f.source, f.target
    p = src.ring.p
    lift = [dict(v) for v in f.lift]
    degs = list(src.twists) + list(tgt.rel_degrees)
    _, syz = syzygy_vecs(lift + tgt.rel_vecs, tgt.twists, p, degs, src.ring.n)
    s = src.rank
    return [{k: x for k, x in v.items() if k[0] < s} for v in syz]


def kernel(f: ModuleMap):
    """``(K, inclusion)`` with inclusion: K -> f.source injective onto ker f."""
    src = f.source
    gens = _preimage_gens(f)
    K, lift = subquotient(src.ring, src.twists, gens, src.rel_vecs)
    return K, ModuleMap(K, src, lift, check=False)


def image(f: ModuleMap):
    """``(I, inclusion)`` with inclusion: I -> f.target onto the image of f."""
    tgt = f.target
    I, lift = subquotient(tgt.ring, tgt.twists, f.lift, tgt.rel_vecs)
    return I, ModuleMap(I, tgt, lift, check=False)


def cokernel(f: ModuleMap):
    """``(C, projection)`` with projection: f.target -> C surjective with kernel im f."""
    tgt = f.target
    C, kept, proj = _canonical(tgt.ring, tgt.twists, tgt.rel_vecs + [dict(v) for v in f.lift])
    return C, ModuleMap(tgt, C, proj, check=False)


def direct_sum(*mods: FPModule) -> FPModule:
    if not mods:
        raise ValueError("need at least one summand")
    ring = mods[0].ring
    twists, rels, off = [], [], 0
    for M in mods:
        if M.ring != ring:
            raise StructureError("summands over different rings")
        twists.extend(M.twists)
        rels.extend({(c + off, m): x for (c, m), x in v.items()} for v in M.rel_vecs)
        off += M.rank
    return present_vecs(ring, twists, rels)


def hom_module(A: FPModule, B: FPModule) -> FPModule:
    """Hom_S(A, B) as the kernel of Hom(F_A, B) -> Hom(G_A, B).

    Generator (i, k) of Hom(F_A, B) sends generator i of A to generator k of B.
    """
    if A.ring != B.ring:
        raise StructureError("modules over different rings")
    ring = A.ring
    r, s = A.rank, B.rank
    if r == 0 or s == 0:
        return FPModule.zero(ring)

    def block(i_rank, twist_list):
        tw = [B.twists[k] - t for t in twist_list for k in range(s)]
        rels = []
        for i in range(i_rank):
            rels.extend({(c + i * s, m): x for (c, m), x in v.items()} for v in B.rel_vecs)
        return tw, rels

    tw0, rel0 = block(r, A.twists)
    H0 = present_vecs(ring, tw0, rel0)
    if A.is_free():
        return H0
    # H0 is canonical but may have been reindexed only if B had units; B is canonical so it was not
    assert H0.twists == tuple(tw0)
    tw1, rel1 = block(len(A.relations), A.rel_degrees)
    H1 = present_vecs(ring, tw1, rel1)
    one = ring.one_mono
    p = ring.p
    lift = []
    for i in range(r):
        for k in range(s):
            v = {}
            for j, rel in enumerate(A.rel_vecs):
                for m, x in vec_component(rel, i).items():
                    v[(j * s + k, m)] = x
            lift.append(v)
    f = ModuleMap(H0, H1, lift, check=False)
    return kernel(f)[0]


def annihilator(M: FPModule) -> list:
    """Reduced Gröbner basis (as Polynomials) of ann_S(M); ``[1]`` for M = 0."""
    ring = M.ring
    if M.is_zero():
        return [ring.one()]
    r = M.rank
    one = ring.one_mono
    tw = [t - M.twists[i] for i in range(r) for t in M.twists]
    rels = []
    for i in range(r):
        rels.extend({(c + i * r, m): x for (c, m), x in v.items()} for v in M.rel_vecs)
    v = {(i * r + i, one): 1 for i in range(r)}
    _, syz = syzygy_vecs([v] + rels, tw, ring.p, [0] + [vec_degree(x, tw) for x in rels], ring.n)
    gens = [{(0, m): x for (c, m), x in s.items() if c == 0} for s in syz]
    gb = gb_of_vecs(gens, FreeModule(ring, (0,)))
    return [Polynomial(ring, vec_component(g, 0), check=False) for g in gb.vecs]


# ---------------------------------------------------------------------------
# graded pieces


def hilbert_function(M: FPModule, d: int) -> int:
    """dim_k M_d by row reduction of the degree-d slice of the relations."""
    ring = M.ring
    basis = [(c, m) for c, t in enumerate(M.twists) for m in monomials_of_degree(ring.n, d - t)]
    if not basis:
        return 0
    e = linalg.Echelon(ring.p)
    for v, dv in zip(M.rel_vecs, M.rel_degrees):
        for q in monomials_of_degree(ring.n, d - dv):
            e.add(vec_add({}, v, ring.p, 1, q))
    return len(basis) - len(e)


def standard_basis(M: FPModule, d: int) -> list:
    """Terms (component, monomial) of degree d that are not leading terms of relations."""
    ring = M.ring
    leads = M.gb.leads
    out = []
    for c, t in enumerate(M.twists):
        for m in monomials_of_degree(ring.n, d - t):
            if not any(lc == c and mono_divides(lm, m) for lc, lm in leads):
                out.append((c, m))
    return out


def hilbert_function_std(M: FPModule, d: int) -> int:
    return len(standard_basis(M, d))


# ---------------------------------------------------------------------------
# isomorphism


def hom_degree_zero(A: FPModule, B: FPModule) -> list:
    """Basis of Hom(A, B)_0; each map is a list of reduced vecs (image of each generator of A)."""
    p = A.ring.p
    unknowns = []
    for i, a in enumerate(A.twists):
        for t in standard_basis(B, a):
            unknowns.append((i, t))
    if not unknowns:
        return []
    columns = []
    for i, (c, m) in unknowns:
        col = {}
        for j, rel in enumerate(A.rel_vecs):
            f = vec_component(rel, i)
            if not f:
                continue
            img = B.reduce(vec_mul_poly({(c, m): 1}, f, p))
            for key, x in img.items():
                col[(j, key)] = x
        columns.append(col)
    out = []
    for dep in linalg.kernel_of_columns(columns, p):
        lift = [{} for _ in range(A.rank)]
        for u, x in dep.items():
            i, term = unknowns[u]
            lift[i][term] = x
        out.append(lift)
    return out


@dataclass
class IsoResult:
    verdict: str  # "yes" | "no" | "unknown"
    reason: str = ""
    forward: ModuleMap | None = None
    backward: ModuleMap | None = None

    def __str__(self):
        return self.verdict


def _combine(basis, coeffs, p):
    out = [{} for _ in basis[0]]
    for lift, c in zip(basis, coeffs):
        for i, v in enumerate(lift):
            vec_iadd(out[i], v, p, c)
    return out


def find_isomorphism(A: FPModule, B: FPModule, seed: int = 0, attempts: int = 6, window: int = 6) -> IsoResult:
    """Certified degree-0 isomorphism search (semi-decision)."""
    if A.ring != B.ring:
        raise StructureError("modules over different rings")
    ring = A.ring
    p = ring.p
    if A.is_zero() or B.is_zero():
        if A.is_zero() and B.is_zero():
            return IsoResult("yes", "both zero", ModuleMap(A, B, [], False), ModuleMap(B, A, [], False))
        return IsoResult("no", "exactly one module is zero")
    degs = list(A.twists) + list(B.twists) + A.rel_degrees + B.rel_degrees
    lo, hi = min(degs), max(degs) + window
    for d in range(lo, hi + 1):
        ha, hb = hilbert_function_std(A, d), hilbert_function_std(B, d)
        if ha != hb:
            return IsoResult("no", f"Hilbert functions differ in degree {d}: {ha} != {hb}")
    if sorted(A.twists) != sorted(B.twists):
        return IsoResult("no", "minimal generator degrees differ")
    if annihilator(A) != annihilator(B):
        return IsoResult("no", "annihilators differ")
    hab = hom_degree_zero(A, B)
    hba = hom_degree_zero(B, A)
    if not hab or not hba:
        return IsoResult("no", "no nonzero degree-0 homomorphism")
    rng = random.Random(seed)
    for _ in range(attempts):
        phi = _combine(hab, [rng.randrange(1, p) for _ in hab], p)
        # solve psi o phi = id_A over the basis of Hom(B, A)_0
        cols = []
        for lift in hba:
            col = {}
            for i, v in enumerate(phi):
                img = A.reduce(apply_columns(lift, v, p))
                for key, x in img.items():
                    col[(i, key)] = x
            cols.append(col)
        target = {(i, (i, ring.one_mono)): 1 for i in range(A.rank)}
        sol = linalg.solve_columns(cols, target, p)
        if sol is None:
            continue
        psi = _combine(hba, [sol.get(k, 0) for k in range(len(hba))], p)
        f = ModuleMap(A, B, phi, check=False)
        g = ModuleMap(B, A, psi, check=False)
        if g.compose(f).equals(ModuleMap.identity(A)) and f.compose(g).equals(ModuleMap.identity(B)):
            f.check_well_defined()
            g.check_well_defined()
            return IsoResult("yes", "inverse pair verified", f, g)
    return IsoResult("unknown", f"no isomorphism found in {attempts} seeded attempts")


def is_isomorphic(A: FPModule, B: FPModule, seed: int = 0) -> str:
    return find_isomorphism(A, B, seed).verdict
