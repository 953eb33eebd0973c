"""Twisted graded free modules S(-a_1) + ... + S(-a_r) and degree-0 maps.

Internally an element of a free module is a *vec*: a dict mapping
``(component, monomial)`` to a nonzero residue.  The module term order is
position over term: smaller component index first, then grevlex.  The
generator of S(-a) sits in degree a, so a presentation of an ideal generated
in degree d uses twist d.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .poly import (
    InhomogeneousError,
    Polynomial,
    PolyRing,
    StructureError,
    grevlex_key,
    mono_mul,
    render_polynomial,
)

# ---------------------------------------------------------------------------
# vec helpers


@lru_cache(maxsize=None)
def _negkey(mono):
    # ascending order of this key is descending grevlex
    return (-sum(mono), tuple(reversed(mono)))


def term_negkey(t):
    """Ascending order of this key is descending position-over-term order."""
    return (t[0], _negkey(t[1]))


def vec_lead(v: dict):
    return min(v, key=term_negkey)


def vec_sorted_terms(v: dict):
    return sorted(v, key=term_negkey)


def vec_degree(v: dict, twists):
    if not v:
        return None
    c, m = next(iter(v))
    return sum(m) + twists[c]


def vec_is_homogeneous(v: dict, twists) -> bool:
    degs = {sum(m) + twists[c] for c, m in v}
    return len(degs) <= 1


def vec_add(v: dict, w: dict, p: int, a: int = 1, mono=None, shift: int = 0) -> dict:
    """Return ``v + a * mono * w`` with w's components moved up by ``shift``."""
    out = dict(v)
    vec_iadd(out, w, p, a, mono, shift)
    return out


def vec_iadd(v: dict, w: dict, p: int, a: int = 1, mono=None, shift: int = 0) -> None:
    for (c, m), x in w.items():
        key = (c + shift, m if mono is None else mono_mul(m, mono))
        y = (v.get(key, 0) + a * x) % p
        if y:
            v[key] = y
        else:
            v.pop(key, None)


def vec_scale(v: dict, a: int, p: int) -> dict:
    a %= p
    if not a:
        return {}
    return {k: x * a % p for k, x in v.items()}


def vec_mul_poly(v: dict, f: dict, p: int) -> dict:
    """Multiply a vec by a polynomial given as ``{mono: coeff}``."""
    out = {}
    for m, c in f.items():
        vec_iadd(out, v, p, c, m)
    return out


def vec_component(v: dict, i: int) -> dict:
    return {m: x for (c, m), x in v.items() if c == i}


def vec_monic(v: dict, p: int) -> dict:
    if not v:
        return v
    lc = v[vec_lead(v)]
    return vec_scale(v, pow(lc, p - 2, p), p)


def apply_columns(cols, v: dict, p: int) -> dict:
    """Image of ``v`` under the map whose j-th column is ``cols[j]``."""
    out = {}
    for (j, m), x in v.items():
        vec_iadd(out, cols[j], p, x, m)
    return out


def freeze(v: dict) -> tuple:
    return tuple((c, m, v[(c, m)]) for c, m in vec_sorted_terms(v))


def thaw(t) -> dict:
    return {(c, m): x for c, m, x in t}


def render_vec(ring: PolyRing, v: dict, rank: int) -> str:
    return ", ".join(render_polynomial(Polynomial(ring, vec_component(v, i), check=False)) for i in range(rank))


# ---------------------------------------------------------------------------
# public types


@dataclass(frozen=True)
class FreeModule:
    ring: PolyRing
    twists: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(a) for a in self.twists))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def basis(self, i: int) -> "FreeElement":
        return FreeElement(self, {(i, self.ring.one_mono): 1})

    def element(self, components) -> "FreeElement":
        if len(components) != self.rank:
            raise StructureError(f"expected {self.rank} components, got {len(components)}")
        v = {}
        for i, f in enumerate(components):
            if isinstance(f, int):
                f = self.ring.const(f)
            if f.ring != self.ring:
                raise StructureError("component from another ring")
            for m, c in f.coeffs.items():
                v[(i, m)] = c
        return FreeElement(self, v)

    def __str__(self):
        return f"twists: [{', '.join(map(str, self.twists))}]"


class FreeElement:
    """A homogeneous element of a twisted free module."""

    __slots__ = ("parent", "vec", "degree")

    def __init__(self, parent: FreeModule, vec: dict):
        self.parent = parent
        self.vec = vec
        if not vec_is_homogeneous(vec, parent.twists):
            raise InhomogeneousError("element is not homogeneous in the twisted grading")
        self.degree = vec_degree(vec, parent.twists)

    @property
    def components(self):
        ring = self.parent.ring
        return [Polynomial(ring, vec_component(self.vec, i), check=False) for i in range(self.parent.rank)]

    def is_zero(self):
        return not self.vec

    def __add__(self, other):
        if other.parent != self.parent:
            raise StructureError("elements of different free modules")
        return FreeElement(self.parent, vec_add(self.vec, other.vec, self.parent.ring.p))

    def __sub__(self, other):
        if other.parent != self.parent:
            raise StructureError("elements of different free modules")
        return FreeElement(self.parent, vec_add(self.vec, other.vec, self.parent.ring.p, -1))

    def __rmul__(self, f):
        p = self.parent.ring.p
        if isinstance(f, int):
            return FreeElement(self.parent, vec_scale(self.vec, f, p))
        return FreeElement(self.parent, vec_mul_poly(self.vec, f.coeffs, p))

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.parent == other.parent and self.vec == other.vec

    def __hash__(self):
        return hash((self.parent, freeze(self.vec)))

    def __str__(self):
        return "(" + render_vec(self.parent.ring, self.vec, self.parent.rank) + ")"

    __repr__ = __str__


class FreeMap:
    """Degree-0 map between free modules, stored by columns (images of source generators)."""

    __slots__ = ("source", "target", "columns")

    def __init__(self, source: FreeModule, target: FreeModule, columns, check=True):
        if source.ring != target.ring:
            raise StructureError("free modules over different rings")
        columns = [dict(c) for c in columns]
        if len(columns) != source.rank:
            raise StructureError(f"{len(columns)} columns for a source of rank {source.rank}")
        self.source = source
        self.target = target
        self.columns = columns
        if check:
            map_degree_check(self)

    @classmethod
    def from_matrix(cls, source, target, matrix):
        """``matrix[i][j]`` is the coefficient of target generator i in the image of source generator j."""
        if len(matrix) != target.rank or any(len(row) != source.rank for row in matrix):
            raise StructureError("matrix shape does not match the free modules")
        cols = []
        for j in range(source.rank):
            v = {}
            for i in range(target.rank):
                f = matrix[i][j]
                if isinstance(f, int):
                    f = source.ring.const(f)
                for m, c in f.coeffs.items():
                    v[(i, m)] = c
            cols.append(v)
        return cls(source, target, cols)

    @classmethod
    def identity(cls, F: FreeModule):
        return cls(F, F, [{(i, F.ring.one_mono): 1} for i in range(F.rank)], check=False)

    @property
    def matrix(self):
        ring = self.source.ring
        return [
            [Polynomial(ring, vec_component(col, i), check=False) for col in self.columns]
            for i in range(self.target.rank)
        ]

    def __call__(self, x: FreeElement) -> FreeElement:
        if x.parent != self.source:
            raise StructureError("element not in the source")
        return FreeElement(self.target, apply_columns(self.columns, x.vec, self.source.ring.p))

    def is_zero(self):
        return not any(self.columns)

    def __eq__(self, other):
        return (
            isinstance(other, FreeMap)
            and self.source == other.source
            and self.target == other.target
            and self.columns == other.columns
        )

    def render(self) -> str:
        rows = [", ".join(render_polynomial(f) for f in row) for row in self.matrix]
        return f"source {self.source}\ntarget {self.target}\nmatrix: {'; '.join(rows)}"


def map_degree_check(f: FreeMap) -> FreeMap:
    """Return ``f`` unchanged if every entry has the degree the twists demand."""
    st, tt = f.source.twists, f.target.twists
    for j, col in enumerate(f.columns):
        for (i, m), _ in col.items():
            if not 0 <= i < len(tt):
                raise StructureError(f"entry ({i},{j}) outside the target")
            if sum(m) != st[j] - tt[i]:
                raise InhomogeneousError(
                    f"inhomogeneous map: entry ({i},{j}) has degree {sum(m)}, expected {st[j] - tt[i]}"
                )
    return f


def map_compose(g: FreeMap, f: FreeMap) -> FreeMap:
    """``g o f``."""
    if f.target != g.source:
        raise StructureError("cannot compose: target of f is not the source of g")
    p = f.source.ring.p
    return FreeMap(f.source, g.target, [apply_columns(g.columns, col, p) for col in f.columns], check=False)
