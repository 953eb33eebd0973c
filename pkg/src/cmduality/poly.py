"""Prime-field polynomial arithmetic in S = k[x1, ..., xn] with the standard grading.

Monomials are plain tuples of exponents.  The only term order is graded
reverse lexicographic.  Polynomials are homogeneous by construction; mixing
degrees raises :class:`InhomogeneousError`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_PRIME = 32003
MAX_EXPONENT = 2**31 - 1

Monomial = tuple  # tuple[int, ...]


class StructureError(ValueError):
    """Objects from different rings or with incompatible shapes were combined."""


class InhomogeneousError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, column=None):
        super().__init__(message if column is None else f"{message} (column {column})")
        self.column = column


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# monomials


def mono_degree(m: Monomial) -> int:
    return sum(m)


@lru_cache(maxsize=None)
def grevlex_key(m: Monomial):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def grevlex_cmp(a: Monomial, b: Monomial) -> int:
    """Return 1, 0 or -1 as ``a`` is greater than, equal to or less than ``b``."""
    if len(a) != len(b):
        raise StructureError(f"monomials over {len(a)} and {len(b)} variables")
    ka, kb = grevlex_key(a), grevlex_key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> list:
    """All exponent tuples of total degree ``d`` in ``n`` variables, grevlex-descending."""
    if d < 0:
        return []
    return _monomials_of_degree(n, d)


@lru_cache(maxsize=None)
def _monomials_of_degree(n, d):
    out = []

    def rec(prefix, left, k):
        if k == n - 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, k + 1)

    if n == 0:
        return [()] if d == 0 else []
    rec((), d, 0)
    out.sort(key=grevlex_key, reverse=True)
    return out


# ---------------------------------------------------------------------------
# ring


@dataclass(frozen=True)
class PolyRing:
    """The ambient ring S = F_p[names] with standard grading and grevlex order."""

    p: int = DEFAULT_PRIME
    names: tuple = ("x1", "x2", "x3", "x4")

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if len(self.names) < 1:
            raise ValueError("need at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        for v in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")

    @classmethod
    def standard(cls, n=4, p=DEFAULT_PRIME):
        return cls(p, tuple(f"x{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def one_mono(self) -> Monomial:
        return (0,) * self.n

    def var_mono(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.n))

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero is not invertible")
        return pow(a, self.p - 2, self.p)

    # constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.one_mono: 1})

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {self.one_mono: c % self.p})

    def var(self, i: int) -> "Polynomial":
        return Polynomial(self, {self.var_mono(i): 1})

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def mono_str(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)


# ---------------------------------------------------------------------------
# polynomials


def poly_normalize(ring: PolyRing, raw_terms: Iterable) -> "Polynomial":
    """Merge duplicate monomials, drop zeros and reject mixed degrees."""
    acc = {}
    p = ring.p
    for c, m in raw_terms:
        m = tuple(m)
        if len(m) != ring.n:
            raise StructureError(f"monomial {m} does not live in {ring.n} variables")
        if any(e < 0 for e in m):
            raise ValueError(f"negative exponent in {m}")
        acc[m] = (acc.get(m, 0) + c) % p
    return Polynomial(ring, {m: c for m, c in acc.items() if c})


class Polynomial:
    """An immutable homogeneous polynomial.

    ``coeffs`` maps monomials to residues in ``[1, p)``.  ``terms`` lists
    ``(coefficient, monomial)`` pairs in descending grevlex order.
    """

    __slots__ = ("ring", "coeffs", "_terms", "_hash", "degree")

    def __init__(self, ring: PolyRing, coeffs: dict, check=True):
        self.ring = ring
        if check:
            p = ring.p
            coeffs = {m: c % p for m, c in coeffs.items() if c % p}
        degs = {sum(m) for m in coeffs}
        if len(degs) > 1:
            raise InhomogeneousError(f"inhomogeneous input: terms of degrees {sorted(degs)}")
        if check:
            for m in coeffs:
                if len(m) != ring.n:
                    raise StructureError(f"monomial {m} does not live in {ring.n} variables")
                if any(e > MAX_EXPONENT for e in m):
                    raise OverflowError(f"exponent overflow in {m}")
        self.coeffs = coeffs
        self.degree = degs.pop() if degs else None
        self._terms = None
        self._hash = None

    @property
    def terms(self):
        if self._terms is None:
            ms = sorted(self.coeffs, key=grevlex_key, reverse=True)
            self._terms = tuple((self.coeffs[m], m) for m in ms)
        return self._terms

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lead(self):
        return self.terms[0] if self.coeffs else None

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise StructureError("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        p = self.ring.p
        for m, c in other.coeffs.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, check=False)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.coeffs.items()}, check=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ring, {m: v * c for m, v in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.ring != b.ring:
        raise StructureError("polynomials from different rings")
    p = a.ring.p
    out = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            m = mono_mul(ma, mb)
            out[m] = (out.get(m, 0) + ca * cb) % p
    return Polynomial(a.ring, {m: c for m, c in out.items() if c}, check=False)


def render_polynomial(f: Polynomial) -> str:
    """Canonical text: descending grevlex, least nonnegative residues, ``*`` and ``^``."""
    if f.is_zero():
        return "0"
    parts = []
    for c, m in f.terms:
        ms = f.ring.mono_str(m)
        if not ms:
            parts.append(str(c))
        elif c == 1:
            parts.append(ms)
        else:
            parts.append(f"{c}*{ms}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.end() == pos:
            break
        start = m.start(m.lastindex)
        toks.append((m.lastindex, m.group(m.lastindex), start))
        pos = m.end()
    toks.append((0, None, len(text)))
    return toks


def parse_polynomial(ring: PolyRing, text: str, offset: int = 0) -> Polynomial:
    """Parse ``+ - * ^``, integers, variable names and parentheses.

    Column numbers in errors are 1-based and shifted by ``offset``.
    Homogeneity is checked term by term so the error points at the culprit.
    """
    toks = _tokenize(text)
    idx = {v: i for i, v in enumerate(ring.names)}
    pos = 0
    p = ring.p

    def peek():
        return toks[pos]

    def advance():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def err(msg, tok):
        raise ParseError(msg, offset + tok[2] + 1)

    # polynomials are dicts here; homogeneity is enforced at the end of each summand
    def expr():
        terms = []
        sign = 1
        tok = peek()
        if tok[1] in ("+", "-"):
            advance()
            sign = -1 if tok[1] == "-" else 1
        start = peek()
        terms.append((sign, term(), start))
        while peek()[1] in ("+", "-"):
            sign = -1 if advance()[1] == "-" else 1
            start = peek()
            terms.append((sign, term(), start))
        out = {}
        deg = None
        for sign, t, start in terms:
            tdegs = {sum(m) for m in t}
            if len(tdegs) > 1:
                err("inhomogeneous input", start)
            if tdegs:
                d = tdegs.pop()
                if deg is None:
                    deg = d
                elif d != deg:
                    err(f"inhomogeneous input: degree {d} term in a degree {deg} polynomial", start)
            for m, c in t.items():
                out[m] = (out.get(m, 0) + sign * c) % p
        return {m: c for m, c in out.items() if c}

    def term():
        f = power()
        while peek()[1] == "*":
            advance()
            g = power()
            h = {}
            for ma, ca in f.items():
                for mb, cb in g.items():
                    m = mono_mul(ma, mb)
                    h[m] = (h.get(m, 0) + ca * cb) % p
            f = {m: c for m, c in h.items() if c}
        return f

    def power():
        f = atom()
        if peek()[1] == "^":
            advance()
            tok = advance()
            if tok[0] != 1:
                err("expected an exponent", tok)
            e = int(tok[1])
            if e > MAX_EXPONENT:
                err("exponent overflow", tok)
            g = {ring.one_mono: 1}
            for _ in range(e):
                h = {}
                for ma, ca in g.items():
                    for mb, cb in f.items():
                        m = mono_mul(ma, mb)
                        h[m] = (h.get(m, 0) + ca * cb) % p
                g = {m: c for m, c in h.items() if c}
            f = g
        return f

    def atom():
        tok = advance()
        kind, val = tok[0], tok[1]
        if kind == 1:
            c = int(val) % p
            return {ring.one_mono: c} if c else {}
        if kind == 2:
            if val not in idx:
                err(f"unknown variable {val!r}", tok)
            return {ring.var_mono(idx[val]): 1}
        if val == "(":
            f = expr()
            close = advance()
            if close[1] != ")":
                err("expected ')'", close)
            return f
        if val is None:
            err("unexpected end of polynomial", tok)
        err(f"unexpected token {val!r}", tok)

    if not text.strip():
        raise ParseError("empty polynomial", offset + 1)
    coeffs = expr()
    tok = peek()
    if tok[1] is not None:
        err(f"unexpected token {tok[1]!r}", tok)
    return Polynomial(ring, coeffs, check=False)


def split_top_level(text: str, sep: str) -> list:
    """Split on ``sep`` outside parentheses; returns ``(piece, start_index)`` pairs."""
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def parse_polynomials(ring: PolyRing, text: str, offset: int = 0) -> list:
    """Comma-separated polynomial list."""
    if not text.strip():
        return []
    return [parse_polynomial(ring, piece, offset + start) for piece, start in split_top_level(text, ",")]


def common_degree(polys: Sequence[Polynomial]):
    degs = {f.degree for f in polys if not f.is_zero()}
    if len(degs) > 1:
        raise InhomogeneousError(f"inhomogeneous input: degrees {sorted(degs)}")
    return degs.pop() if degs else None
