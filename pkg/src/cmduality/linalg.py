"""Sparse row echelon forms over F_p.

Vectors are dicts ``{index: residue}`` with no zero entries.  Indices may be
any mutually comparable keys; the smallest present index is the pivot.
"""
from __future__ import annotations


def axpy(y: dict, a: int, x: dict, p: int) -> None:
    """In place ``y += a*x`` mod p."""
    for k, v in x.items():
        w = (y.get(k, 0) + a * v) % p
        if w:
            y[k] = w
        else:
            y.pop(k, None)


class Echelon:
    """Incremental echelon form, optionally tracking combinations.

    ``add`` returns ``None`` when the vector is new (it becomes a pivot row) or
    the tag of a linear dependency when it reduces to zero.
    """

    def __init__(self, p: int, track: bool = False):
        self.p = p
        self.track = track
        self.rows = {}  # pivot -> (row, tag)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict, tag: dict | None = None):
        p = self.p
        v = dict(v)
        tag = dict(tag) if tag is not None else ({} if self.track else None)
        done = set()
        while True:
            cand = [k for k in v if k not in done]
            if not cand:
                return v, tag
            piv = min(cand)
            hit = self.rows.get(piv)
            if hit is None:
                done.add(piv)
                continue
            row, rtag = hit
            a = p - v[piv]
            axpy(v, a, row, p)
            if self.track:
                axpy(tag, a, rtag, p)

    def add(self, v: dict, tag: dict | None = None):
        """Insert ``v``; a zero remainder returns its dependency tag (or ``{}``)."""
        r, t = self.reduce(v, tag)
        if not r:
            return t if t is not None else {}
        piv = min(r)
        inv = pow(r[piv], self.p - 2, self.p)
        r = {k: x * inv % self.p for k, x in r.items()}
        if t is not None:
            t = {k: x * inv % self.p for k, x in t.items()}
        self.rows[piv] = (r, t)
        return None

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]


def rank(vectors, p: int) -> int:
    e = Echelon(p)
    for v in vectors:
        e.add(v)
    return len(e)


def independent_subset(vectors, p: int) -> list:
    """Indices of a greedy maximal independent subset, in input order."""
    e = Echelon(p)
    return [i for i, v in enumerate(vectors) if e.add(v) is None]


def kernel_of_columns(columns, p: int) -> list:
    """Basis of ``{c : sum_j c_j * columns[j] = 0}``; each result is a dict ``{j: c_j}``."""
    e = Echelon(p, track=True)
    out = []
    for j, col in enumerate(columns):
        dep = e.add(col, {j: 1})
        if dep is not None:
            out.append(dep)
    return out


def solve_columns(columns, target: dict, p: int):
    """Some ``c`` with ``sum_j c_j * columns[j] = target``, or ``None``."""
    e = Echelon(p, track=True)
    for j, col in enumerate(columns):
        e.add(col, {j: 1})
    r, t = e.reduce(target, {})
    if r:
        return None
    return {j: (-c) % p for j, c in t.items()}
