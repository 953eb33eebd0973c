"""Buchberger's algorithm for homogeneous submodules of twisted free modules.

Pairs are processed by ascending degree (normal strategy).  Within one
degree all S-pairs come first and then the input generators, so an input
whose remainder is nonzero is a minimal generator of the submodule (graded
Nakayama); this is how :func:`minimal_generators` works.

With ``track=True`` every element carries its expression in the input
generators.  Each reduction to zero then yields a syzygy, and by Schreyer's
theorem the S-pair syzygies together with the zero-reduced inputs generate
the full syzygy module.  Criteria are switched off in that mode.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

from .free import (
    FreeElement,
    FreeModule,
    term_negkey,
    vec_add,
    vec_degree,
    vec_iadd,
    vec_lead,
    vec_monic,
    vec_scale,
    vec_sorted_terms,
)
from .poly import StructureError, mono_div, mono_divides, mono_lcm


class _Reducers:
    """Leading terms bucketed by component."""

    def __init__(self):
        self.by_comp = {}
        self.elems = []

    def add(self, vec):
        lead = vec_lead(vec)
        self.by_comp.setdefault(lead[0], []).append((lead[1], len(self.elems)))
        self.elems.append(vec)
        return lead

    def find(self, term, skip=None):
        for mono, idx in self.by_comp.get(term[0], ()):
            if idx != skip and mono_divides(mono, term[1]):
                return idx, mono
        return None


def _reduce(v, rep, reducers, reps, p, full=True, skip=None):
    """Reduce ``v`` (and its tracked ``rep``) by ``reducers``; returns the remainder pair."""
    v = dict(v)
    rep = dict(rep) if rep is not None else None
    heap = [(term_negkey(t), t) for t in v]
    heapq.heapify(heap)
    queued = set(v)
    rem = {}
    while heap:
        _, t = heapq.heappop(heap)
        queued.discard(t)
        c = v.get(t)
        if c is None:
            continue
        hit = reducers.find(t, skip)
        if hit is None:
            rem[t] = v.pop(t)
            if not full:
                rem.update(v)
                return rem, rep
            continue
        idx, lm = hit
        q = mono_div(t[1], lm)
        a = p - c
        g = reducers.elems[idx]
        for (gc, gm), x in g.items():
            key = (gc, tuple(e + f for e, f in zip(gm, q)))
            y = (v.get(key, 0) + a * x) % p
            if y:
                v[key] = y
                if key not in queued:
                    queued.add(key)
                    heapq.heappush(heap, (term_negkey(key), key))
            else:
                v.pop(key, None)
        if rep is not None:
            vec_iadd(rep, reps[idx], p, a, q)
    return rem, rep


def _buchberger(gens, twists, p, gen_degrees=None, track=False, criteria=True, reduce_output=True, nvars=None):
    """Core loop.  Returns ``(basis, minimal_input_indices, syzygies)``.

    ``basis`` is a list of monic vecs (reduced and sorted when
    ``reduce_output``); ``syzygies`` are vecs over the input indices, only
    filled when tracking.
    """
    ngens = len(gens)
    if gen_degrees is None:
        gen_degrees = [vec_degree(g, twists) for g in gens]
    rank = len(twists)
    one = None
    if track:
        one = (0,) * nvars if nvars is not None else _one_mono(gens)
    reducers = _Reducers()
    basis = reducers.elems
    leads = []
    reps = []
    syz = []
    minimal = []
    heap = []
    pending = set()
    seq = 0
    product_ok = criteria and not track and rank == 1

    def add(vec, rep):
        nonlocal seq
        lc = vec[vec_lead(vec)]
        inv = pow(lc, p - 2, p)
        vec = vec_scale(vec, inv, p)
        if track:
            rep = vec_scale(rep, inv, p)
        idx = len(basis)
        lead = reducers.add(vec)
        leads.append(lead)
        reps.append(rep)
        for k in range(idx):
            lk = leads[k]
            if lk[0] != lead[0]:
                continue
            if product_ok and all(a == 0 or b == 0 for a, b in zip(lk[1], lead[1])):
                continue
            lcm = mono_lcm(lk[1], lead[1])
            heapq.heappush(heap, (sum(lcm) + twists[lead[0]], seq, k, idx))
            pending.add((k, idx))
            seq += 1

    def chain_skip(i, j, lcm, comp):
        for mono, k in reducers.by_comp.get(comp, ()):
            if k == i or k == j or not mono_divides(mono, lcm):
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            return True
        return False

    order = []
    for j in range(ngens):
        if not gens[j]:
            if track:
                syz.append({(j, one): 1})
            continue
        order.append(j)
    order.sort(key=lambda j: (gen_degrees[j], j))
    ip = 0
    while heap or ip < len(order):
        d = min(
            heap[0][0] if heap else float("inf"),
            gen_degrees[order[ip]] if ip < len(order) else float("inf"),
        )
        while heap and heap[0][0] == d:
            _, _, i, j = heapq.heappop(heap)
            pending.discard((i, j))
            li, lj = leads[i], leads[j]
            lcm = mono_lcm(li[1], lj[1])
            if criteria and not track and chain_skip(i, j, lcm, li[0]):
                continue
            qi, qj = mono_div(lcm, li[1]), mono_div(lcm, lj[1])
            s = vec_add({}, basis[i], p, 1, qi)
            vec_iadd(s, basis[j], p, -1, qj)
            srep = None
            if track:
                srep = vec_add({}, reps[i], p, 1, qi)
                vec_iadd(srep, reps[j], p, -1, qj)
            r, rrep = _reduce(s, srep, reducers, reps, p)
            if r:
                add(r, rrep)
            elif track and rrep:
                syz.append(rrep)
        while ip < len(order) and gen_degrees[order[ip]] == d:
            j = order[ip]
            ip += 1
            g = gens[j]
            grep = {(j, one): 1} if track else None
            r, rrep = _reduce(g, grep, reducers, reps, p)
            if r:
                minimal.append(j)
                add(r, rrep)
            elif track:
                syz.append(rrep)
    out = list(basis)
    if reduce_output and out:
        out = _interreduce(out, p)
    return out, minimal, syz


def _one_mono(gens):
    for g in gens:
        if g:
            return tuple(0 for _ in next(iter(g))[1])
    return None


def _interreduce(basis, p):
    """Tail-reduce a basis whose leading terms are already minimal; sort descending."""
    reducers = _Reducers()
    for g in basis:
        reducers.add(g)
    out = []
    for idx, g in enumerate(basis):
        lead = vec_lead(g)
        tail = dict(g)
        c = tail.pop(lead)
        r, _ = _reduce(tail, None, reducers, None, p, skip=idx)
        r[lead] = c
        out.append(vec_monic(r, p))
    out.sort(key=lambda v: term_negkey(vec_lead(v)))
    return out


# ---------------------------------------------------------------------------
# public API


@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis (position over term, grevlex) of a submodule of ``parent``."""

    parent: FreeModule
    vecs: list

    def __post_init__(self):
        self._reducers = _Reducers()
        for v in self.vecs:
            self._reducers.add(v)

    @property
    def elements(self):
        return [FreeElement(self.parent, v) for v in self.vecs]

    @property
    def leads(self):
        return [vec_lead(v) for v in self.vecs]

    def reduce_vec(self, v: dict) -> dict:
        return _reduce(v, None, self._reducers, None, self.parent.ring.p)[0]

    def contains_vec(self, v: dict) -> bool:
        return not self.reduce_vec(v)

    def __len__(self):
        return len(self.vecs)


def gb_of_vecs(vecs, parent: FreeModule) -> GroebnerBasis:
    vecs = [v for v in vecs if v]
    basis, _, _ = _buchberger(vecs, parent.twists, parent.ring.p)
    return GroebnerBasis(parent, basis)


def groebner_basis(gens, parent: FreeModule | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule generated by ``gens`` (FreeElements)."""
    gens = list(gens)
    if parent is None:
        if not gens:
            raise StructureError("empty generator list needs an explicit parent")
        parent = gens[0].parent
    for g in gens:
        if g.parent != parent:
            raise StructureError("generators live in different free modules")
    return gb_of_vecs([g.vec for g in gens], parent)


def normal_form(v: FreeElement, G: GroebnerBasis) -> FreeElement:
    if v.parent != G.parent:
        raise StructureError("element and basis live in different free modules")
    return FreeElement(G.parent, G.reduce_vec(v.vec))


def minimal_generators(vecs, twists, p, gen_degrees=None) -> list:
    """Indices of a minimal homogeneous generating subset (lowest degrees first)."""
    _, minimal, _ = _buchberger(vecs, twists, p, gen_degrees, reduce_output=False)
    return minimal


def syzygy_vecs(vecs, twists, p, gen_degrees=None, nvars=None) -> tuple:
    """Minimal generators of the syzygy module of ``vecs``.

    Returns ``(source_twists, syzygies)``; the syzygies live in the free module
    whose twists are the generator degrees.
    """
    if gen_degrees is None:
        gen_degrees = [vec_degree(g, twists) for g in vecs]
        if any(d is None for d in gen_degrees):
            raise StructureError("zero generator needs an explicit degree")
    gen_degrees = list(gen_degrees)
    _, _, syz = _buchberger(vecs, twists, p, gen_degrees, track=True, reduce_output=False, nvars=nvars)
    syz = [s for s in syz if s]
    keep = minimal_generators(syz, gen_degrees, p)
    out = [vec_monic(syz[i], p) for i in keep]
    return gen_degrees, out


def syzygies(gens, parent: FreeModule | None = None):
    """Homogeneous generators of the syzygy module of ``gens``.

    Returns the new free module (twists = generator degrees) and the list of
    syzygies as FreeElements of it.
    """
    gens = list(gens)
    if parent is None:
        parent = gens[0].parent
    degs = [g.degree for g in gens]
    if any(d is None for d in degs):
        raise StructureError("zero generators have no degree")
    src, syz = syzygy_vecs([g.vec for g in gens], parent.twists, parent.ring.p, degs, parent.ring.n)
    F = FreeModule(parent.ring, src)
    return F, [FreeElement(F, s) for s in syz]


def s_pair_remainders(G: GroebnerBasis):
    """Remainders of every S-pair of ``G`` (all empty iff Buchberger's criterion holds)."""
    p = G.parent.ring.p
    out = []
    for i, gi in enumerate(G.vecs):
        li = vec_lead(gi)
        for j in range(i + 1, len(G.vecs)):
            gj = G.vecs[j]
            lj = vec_lead(gj)
            if li[0] != lj[0]:
                continue
            lcm = mono_lcm(li[1], lj[1])
            s = vec_add({}, gi, p, 1, mono_div(lcm, li[1]))
            vec_iadd(s, gj, p, -1, mono_div(lcm, lj[1]))
            out.append(((i, j), G.reduce_vec(s)))
    return out


def is_reduced(G: GroebnerBasis) -> bool:
    leads = G.leads
    for i, v in enumerate(G.vecs):
        if v[leads[i]] != 1:
            return False
        for t in vec_sorted_terms(v):
            for j, l in enumerate(leads):
                if j != i and l[0] == t[0] and mono_divides(l[1], t[1]):
                    return False
    return all(term_negkey(leads[i]) < term_negkey(leads[i + 1]) for i in range(len(leads) - 1))
