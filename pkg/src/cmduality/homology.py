"""Complexes of graded modules, minimal free resolutions and Koszul complexes."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .free import freeze
from .groebner import minimal_generators, syzygy_vecs
from .modules import FPModule, ModuleMap, subquotient, _preimage_gens
from .poly import InhomogeneousError, Polynomial, StructureError


@dataclass
class Complex:
    """A bounded complex ``modules[0..len]``.

    Chain convention: ``maps[i-1]`` is d_i: C_i -> C_{i-1}.  Cochain
    convention: ``maps[i]`` is d^i: C^i -> C^{i+1}.
    """

    modules: list
    maps: list
    cochain: bool = False
    augmentation: ModuleMap | None = None
    labels: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.maps) != max(len(self.modules) - 1, 0):
            raise StructureError("a complex of length L needs L maps")
        for k, f in enumerate(self.maps):
            src, tgt = (k, k + 1) if self.cochain else (k + 1, k)
            if f.source != self.modules[src] or f.target != self.modules[tgt]:
                raise StructureError(f"map {k} does not connect the right terms")
        for k in range(len(self.maps) - 1):
            if self.cochain:
                comp = self.maps[k + 1].compose(self.maps[k])
            else:
                comp = self.maps[k].compose(self.maps[k + 1])
            if not comp.is_zero():
                raise StructureError(f"d o d != 0 at position {k}")

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def outgoing(self, i):
        if self.cochain:
            return self.maps[i] if i < self.length else None
        return self.maps[i - 1] if i >= 1 else None

    def incoming(self, i):
        if self.cochain:
            return self.maps[i - 1] if i >= 1 else None
        return self.maps[i] if i < self.length else None

    def ranks(self):
        return [M.rank for M in self.modules]


def complex_homology(C: Complex, i: int) -> FPModule:
    """ker(outgoing)/im(incoming) at position i; zero outside the range."""
    if i < 0 or i > C.length:
        return FPModule.zero(C.modules[0].ring) if C.modules else None
    M = C.modules[i]
    ring = M.ring
    out, inc = C.outgoing(i), C.incoming(i)
    one = ring.one_mono
    gens = _preimage_gens(out) if out is not None else [{(k, one): 1} for k in range(M.rank)]
    rels = list(M.rel_vecs) + (list(inc.lift) if inc is not None else [])
    return subquotient(ring, M.twists, gens, rels)[0]


# ---------------------------------------------------------------------------
# resolutions


def free_resolution(M: FPModule, max_length: int | None = None) -> Complex:
    """Minimal graded free resolution, truncated at ``max_length``."""
    full = M.__dict__.get("_resolution")
    if full is None:
        full = _resolve(M)
        M.__dict__["_resolution"] = full
    if max_length is None or max_length >= full.length:
        return full
    if max_length < 0:
        raise ValueError("max_length must be nonnegative")
    return Complex(full.modules[: max_length + 1], full.maps[:max_length], augmentation=full.augmentation)


def _resolve(M):
    ring = M.ring
    p = ring.p
    twists = list(M.twists)
    keep = minimal_generators(M.rel_vecs, twists, p)
    cols = [M.rel_vecs[k] for k in keep]
    mods = [FPModule.free(ring, twists)]
    maps = []
    while cols:
        tw = mods[-1].twists
        src = [sum(m) + tw[c] for c, m in (next(iter(v)) for v in cols)]
        F = FPModule.free(ring, src)
        maps.append(ModuleMap(F, mods[-1], cols, check=False))
        mods.append(F)
        if len(maps) > ring.n:
            raise AssertionError("resolution longer than the number of variables")
        _, cols = syzygy_vecs(cols, mods[-2].twists, p, src, ring.n)
    aug = ModuleMap(mods[0], M, [{(k, ring.one_mono): 1} for k in range(M.rank)], check=False)
    return Complex(mods, maps, augmentation=aug)


def betti_table(M: FPModule) -> list:
    """``[(i, sorted twists of F_i)]`` for the minimal resolution."""
    res = free_resolution(M)
    return [(i, sorted(F.twists)) for i, F in enumerate(res.modules)]


def render_betti(M: FPModule) -> str:
    lines = []
    for i, tw in betti_table(M):
        lines.append(f"{i}: {len(tw)}({','.join(map(str, tw))})")
    return "\n".join(lines)


def pd(M: FPModule) -> int:
    if M.is_zero():
        raise ValueError("pd undefined for 0")
    return free_resolution(M).length


def hilbert_numerator(M: FPModule) -> dict:
    """K-polynomial: sum over the resolution of (-1)^i t^a, as ``{a: coefficient}``."""
    out = {}
    for i, tw in betti_table(M):
        for a in tw:
            out[a] = out.get(a, 0) + (-1) ** i
    return {a: c for a, c in out.items() if c}


def hilbert_from_resolution(M: FPModule, d: int) -> int:
    """dim M_d from the alternating twist sum of the minimal resolution."""
    from math import comb

    n = M.ring.n
    total = 0
    for a, c in hilbert_numerator(M).items():
        if d - a >= 0:
            total += c * comb(d - a + n - 1, n - 1)
    return total


# ---------------------------------------------------------------------------
# Koszul complexes


def _check_sequence(xs):
    degs = []
    for x in xs:
        if not isinstance(x, Polynomial):
            raise TypeError("Koszul sequences are Polynomials")
        if x.is_zero():
            raise InhomogeneousError("zero has no degree; not allowed in a Koszul sequence")
        degs.append(x.degree)
    return degs


def _blocks(M: FPModule, subsets, degs, sign):
    """Direct sum of copies of M, one per subset, twisted by +-(sum of degrees)."""
    r = M.rank
    twists = []
    rels = []
    for b, J in enumerate(subsets):
        dJ = sum(degs[j] for j in J)
        twists.extend(t + sign * dJ for t in M.twists)
        rels.extend({(c + b * r, m): x for (c, m), x in v.items()} for v in M.rel_vecs)
    return FPModule(M.ring, twists, [freeze(v) for v in rels])


def koszul_complex(xs, M: FPModule, variant: str = "chain") -> Complex:
    """K(xs) tensor M (``"chain"``) or Hom(K(xs), M) (``"cochain"``).

    d(e_J) = sum_t (-1)^t x_{j_t} e_{J minus j_t} with t counted from 0.
    """
    if variant not in ("chain", "cochain"):
        raise ValueError("variant is 'chain' or 'cochain'")
    xs = list(xs)
    degs = _check_sequence(xs)
    ring = M.ring
    p = ring.p
    rk = len(xs)
    r = M.rank
    subsets = [list(combinations(range(rk), i)) for i in range(rk + 1)]
    index = [{J: b for b, J in enumerate(level)} for level in subsets]
    sign = 1 if variant == "chain" else -1
    mods = [_blocks(M, subsets[i], degs, sign) for i in range(rk + 1)]
    maps = []
    if variant == "chain":
        for i in range(1, rk + 1):
            lift = []
            for J in subsets[i]:
                for k in range(r):
                    lift.append(_koszul_image(J, k, r, index[i - 1], xs, p, down=True))
            maps.append(ModuleMap(mods[i], mods[i - 1], lift, check=False))
    else:
        for i in range(rk):
            lift = []
            for J in subsets[i]:
                for k in range(r):
                    lift.append(_koszul_image(J, k, r, index[i + 1], xs, p, down=False, rk=rk))
            maps.append(ModuleMap(mods[i], mods[i + 1], lift, check=False))
    return Complex(mods, maps, cochain=(variant == "cochain"), labels=subsets)


def _koszul_image(J, k, r, target_index, xs, p, down, rk=None):
    """Image of generator (J, k) under the Koszul (co)differential."""
    if down:
        moves = [(t, j, J[:t] + J[t + 1:]) for t, j in enumerate(J)]
    else:
        moves = []
        for j in range(rk):
            if j not in J:
                L = tuple(sorted(J + (j,)))
                moves.append((L.index(j), j, L))
    v = {}
    for t, j, K in moves:
        b = target_index[K]
        s = 1 if t % 2 == 0 else p - 1
        for m, c in xs[j].coeffs.items():
            v[(b * r + k, m)] = s * c % p
    return v
