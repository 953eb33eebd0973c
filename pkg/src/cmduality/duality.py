"""Artinian modules through their Matlis duals, and the four comparison maps.

An artinian module X is stored as the finitely generated module N with
X = D(N).  Everything on the artinian side (Noetherian dimension, width,
coregular sequences, Koszul and local homology) is computed on N.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .homology import complex_homology, koszul_complex
from .invariants import depth, ext_module, is_finite_length, krull_dim
from .modules import FPModule, ModuleMap, kernel, present_vecs
from .poly import Polynomial


@dataclass(frozen=True)
class ArtinianRep:
    dual: FPModule

    def is_zero(self) -> bool:
        return self.dual.is_zero()


@dataclass(frozen=True)
class SOP:
    elements: tuple
    targetDim: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(self.elements) != self.targetDim:
            raise ValueError("an s.o.p. has exactly targetDim elements")


def F1(M: FPModule) -> ArtinianRep:
    return ArtinianRep(M)


def G1(X: ArtinianRep) -> FPModule:
    return X.dual


def _canonical_ext(N: FPModule, d: int) -> FPModule:
    n = N.ring.n
    return ext_module(n - d, N, -n)


def F2(M: FPModule) -> ArtinianRep:
    """Top local cohomology of M, represented by Ext^{n-dim M}(M, S(-n))."""
    if M.is_zero():
        raise ValueError("F2 needs a nonzero module")
    return ArtinianRep(_canonical_ext(M, krull_dim(M)))


def G2(X: ArtinianRep) -> FPModule:
    """Top local homology of X; finitely generated."""
    if X.is_zero():
        raise ValueError("G2 needs a nonzero artinian module")
    return _canonical_ext(X.dual, ndim(X))


def ndim(X: ArtinianRep) -> int:
    return krull_dim(X.dual)


def width(X: ArtinianRep) -> int:
    if X.is_zero():
        raise ValueError("width undefined for the zero artinian module")
    return depth(X.dual)


def is_co_cm(X: ArtinianRep) -> bool:
    if X.is_zero():
        raise ValueError("co-CM test undefined for the zero artinian module")
    return width(X) == ndim(X)


# ---------------------------------------------------------------------------
# sequences


def multiplication_map(f: Polynomial, N: FPModule) -> ModuleMap:
    """N(-deg f) -> N, multiplication by f."""
    src = N.shift(-f.degree)
    lift = [{(c, m): x for m, x in f.coeffs.items()} for c in range(N.rank)]
    return ModuleMap(src, N, lift, check=False)


def quotient_by(N: FPModule, xs) -> FPModule:
    """N / (xs) N."""
    rels = list(N.rel_vecs)
    for f in xs:
        for c in range(N.rank):
            rels.append({(c, m): x for m, x in f.coeffs.items()})
    return present_vecs(N.ring, N.twists, rels)


def _is_regular_on(f: Polynomial, N: FPModule) -> bool:
    if f.is_zero() or f.degree == 0:
        return False
    K, _ = kernel(multiplication_map(f, N))
    return K.is_zero()


def is_coregular(xs, X: ArtinianRep) -> bool:
    """Coregular on X, decided as regular on the dual module."""
    N = X.dual
    for f in xs:
        if N.is_zero() or not _is_regular_on(f, N):
            return False
        N = quotient_by(N, [f])
    return not N.is_zero() or not xs


# ---------------------------------------------------------------------------
# systems of parameters and local homology


def is_sop(xs, N: FPModule) -> bool:
    xs = list(xs)
    return len(xs) == krull_dim(N) and is_finite_length(quotient_by(N, xs))


def find_sop(M: FPModule, seed: int = 0, budget: int = 64) -> SOP:
    """Linear system of parameters: variables, then sums of two variables, then seeded random forms."""
    if M.is_zero():
        raise ValueError("no system of parameters for the zero module")
    ring = M.ring
    d = krull_dim(M)
    if d == 0:
        return SOP((), 0)
    xs = ring.gens()
    for cand in combinations(xs, d):
        if is_finite_length(quotient_by(M, cand)):
            return SOP(cand, d)
    pairs = [xs[i] + xs[j] for i, j in combinations(range(ring.n), 2)]
    for cand in combinations(pairs, d):
        if is_finite_length(quotient_by(M, cand)):
            return SOP(cand, d)
    rng = random.Random(seed)
    for _ in range(budget):
        cand = []
        for _ in range(d):
            f = ring.zero()
            for v in xs:
                f = f + v.scale(rng.randrange(1, ring.p))
            cand.append(f)
        if is_finite_length(quotient_by(M, cand)):
            return SOP(tuple(cand), d)
    raise RuntimeError(f"no system of parameters found in {budget} random attempts (dim {d})")


def local_homology_top(xs, X: ArtinianRep, trail: list | None = None) -> FPModule:
    """Top local homology of X with respect to xs, as a finitely generated module.

    Checks that xs is a system of parameters for D(X); ``trail`` (if given)
    receives one line per verification step.
    """
    elements = tuple(xs.elements if isinstance(xs, SOP) else xs)
    N = X.dual
    d = krull_dim(N)
    if trail is not None:
        trail.append(f"ndim={d}")
    if len(elements) != d:
        raise ValueError(f"s.o.p. hypothesis violated: {len(elements)} elements for N.dim {d}")
    Q = quotient_by(N, elements)
    if not is_finite_length(Q):
        raise ValueError("s.o.p. hypothesis violated: 0:_X(x)R not finite length")
    if trail is not None:
        trail.append(f"sop finite length: yes (dim of quotient {krull_dim(Q)})")
    if N.is_zero():
        return N
    return _canonical_ext(N, d)


def koszul_homology_artinian(xs, t: int, i: int, X: ArtinianRep) -> ArtinianRep:
    """H_i(K(xs^t; X)), represented by H^i(K^*(xs^t; D(X)))."""
    if t < 1:
        raise ValueError("t must be at least 1")
    powers = [f ** t for f in xs]
    K = koszul_complex(powers, X.dual, "cochain")
    if i < 0 or i > K.length:
        return ArtinianRep(FPModule.zero(X.dual.ring))
    return ArtinianRep(complex_homology(K, i))
