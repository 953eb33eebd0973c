"""Line-oriented session language and transcript runner.

Grammar (one statement per line, ``#`` starts a comment)::

    ring <p> <v1> ... <vn>
    ideal <name> = <poly>, ...
    module <name> = coker twists:[a1, ..., ar] rel:[f11, ..., f1r; f21, ..., f2r; ...]
    map <name>: <src> -> <dst> = [row; ...]
    art <name> = F1|F2 <module>
    <verb> <args> [as <name>]

Each ``rel`` item is one relation, given by its r entries.  Map matrices are
row-major: row i lists the coefficients of target generator i in the
images of the source generators.  An ideal name used where a module is
expected stands for S/I; ``S`` and ``k`` are predefined.  Commands that
produce an object bind it to ``_`` (and to the ``as`` name if given).
"""
from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field

from .cmfication import (
    corollary2_check,
    cmfication_candidate,
    goto_pattern_check,
    paper_example,
    theorem4_check,
    verify_cmfication,
)
from .duality import (
    F1,
    F2,
    G1,
    G2,
    ArtinianRep,
    find_sop,
    is_co_cm,
    koszul_homology_artinian,
    local_homology_top,
    ndim,
    width,
)
from .free import FreeModule, FreeMap, apply_columns, render_vec
from .groebner import gb_of_vecs
from .homology import complex_homology, free_resolution, koszul_complex, render_betti
from .invariants import ext_module, invariants
from .modules import FPModule, ModuleMap, _canonical, hilbert_function, is_isomorphic, render_module
from .poly import (
    InhomogeneousError,
    ParseError,
    PolyRing,
    Polynomial,
    parse_polynomial,
    render_polynomial,
    split_top_level,
)

NAME = r"[A-Za-z_][A-Za-z0-9_']*"


class SessionParseError(Exception):
    def __init__(self, line, column, message):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class CommandError(Exception):
    pass


# ---------------------------------------------------------------------------
# statements


@dataclass
class Statement:
    line: int
    text: str
    kind: str  # ring | ideal | module | map | art | command
    name: str | None = None
    data: dict = field(default_factory=dict)


@dataclass
class Session:
    ring: PolyRing | None
    statements: list


# verb -> (positional kinds, keyword kinds, result kind)
VERBS = {
    "invariants": (["module"], {}, None),
    "gb": (["module"], {}, None),
    "resolve": (["module"], {}, None),
    "betti": (["module"], {}, None),
    "hilbert": (["module"], {"lo": "int", "hi": "int"}, None),
    "ext": (["int", "module", "int"], {}, "module"),
    "koszul": (["module"], {"xs": "polys"}, None),
    "F1": (["module"], {}, "art"),
    "F2": (["module"], {}, "art"),
    "G1": (["art"], {}, "module"),
    "G2": (["art"], {}, "module"),
    "ndim": (["art"], {}, None),
    "width": (["art"], {}, None),
    "cocm": (["art"], {}, None),
    "lochom-top": (["art"], {"sop": "polys"}, "module"),
    "koszul-art": (["art"], {"xs": "polys", "t": "int", "i": "int"}, "art"),
    "cmfication": (["module"], {}, "module"),
    "verify-cmf": (["module", "module", "map"], {}, None),
    "thm4-check": (["module", "module", "map"], {}, None),
    "goto-check": (["module"], {}, None),
    "cor2-check": (["module"], {}, "module"),
    "paper-example": ([], {}, None),
    "iso": (["module", "module"], {}, None),
}

BUILTINS = {"S": "module", "k": "module"}
EXAMPLE_NAMES = {"I": "ideal", "R": "module", "B": "module", "iota": "map"}


def _tokens(text, start):
    """Whitespace-separated tokens outside parentheses, with their columns."""
    out = []
    depth = 0
    cur = None
    for i, ch in enumerate(text):
        if ch.isspace() and depth == 0:
            if cur is not None:
                out.append((text[cur:i], start + cur))
                cur = None
            continue
        if cur is None:
            cur = i
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
    if cur is not None:
        out.append((text[cur:], start + cur))
    return out


class _Parser:
    def __init__(self):
        self.ring = None
        self.kinds = {}
        self.line = 0

    def fail(self, col, msg):
        raise SessionParseError(self.line, col, msg)

    def polys(self, text, col):
        try:
            return [parse_polynomial(self.ring, piece, col - 1 + s) for piece, s in split_top_level(text, ",")]
        except ParseError as e:
            raise SessionParseError(self.line, e.column, str(e).rsplit(" (column", 1)[0]) from None

    def bind(self, name, kind, col):
        if name != "_" and name in self.kinds:
            self.fail(col, f"name {name!r} already bound")
        self.kinds[name] = kind

    def need(self, name, kinds, col):
        kind = self.kinds.get(name)
        if kind is None:
            self.fail(col, f"unbound name {name!r}")
        if kind not in kinds:
            self.fail(col, f"{name!r} is a {kind}, expected {' or '.join(kinds)}")
        return kind

    def need_ring(self, col):
        if self.ring is None:
            self.fail(col, "no ring declared")

    def parse(self, text: str) -> Session:
        stmts = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            self.line = lineno
            body = raw.split("#", 1)[0].rstrip()
            if not body.strip():
                continue
            lead = len(body) - len(body.lstrip())
            word = body.split()[0]
            handler = {
                "ring": self.ring_stmt,
                "ideal": self.ideal_stmt,
                "module": self.module_stmt,
                "map": self.map_stmt,
                "art": self.art_stmt,
            }.get(word, self.command)
            st = handler(body, lead)
            st.line, st.text = lineno, body.strip()
            stmts.append(st)
        return Session(self.ring, stmts)

    def ring_stmt(self, body, lead):
        if self.ring is not None:
            self.fail(lead + 1, "ring already declared")
        toks = _tokens(body, 1)[1:]
        if len(toks) < 2:
            self.fail(lead + 1, "usage: ring <p> <v1> ... <vn>")
        p, col = toks[0]
        if not p.isdigit():
            self.fail(col, f"expected a prime, got {p!r}")
        names = [t for t, _ in toks[1:]]
        for t, c in toks[1:]:
            if not re.fullmatch(NAME, t):
                self.fail(c, f"bad variable name {t!r}")
        try:
            self.ring = PolyRing(int(p), tuple(names))
        except ValueError as e:
            self.fail(col, str(e))
        for n, k in BUILTINS.items():
            self.kinds.setdefault(n, k)
        return Statement(0, "", "ring", data={"ring": self.ring})

    def ideal_stmt(self, body, lead):
        m = re.fullmatch(rf"\s*ideal\s+({NAME})\s*=\s*(.*)", body)
        if not m:
            self.fail(lead + 1, "usage: ideal <name> = <poly>, ...")
        self.need_ring(lead + 1)
        polys = self.polys(m.group(2), m.start(2) + 1)
        self.bind(m.group(1), "ideal", m.start(1) + 1)
        return Statement(0, "", "ideal", m.group(1), {"polys": polys})

    def rows(self, text, col, width=None, twists=None):
        out = []
        if not text.strip():
            return out
        for piece, s in split_top_level(text, ";"):
            entries = self.polys(piece, col + s)
            if width is not None and len(entries) != width:
                self.fail(col + s, f"expected {width} entries, got {len(entries)}")
            if twists is not None:
                degs = {f.degree + t for f, t in zip(entries, twists) if not f.is_zero()}
                if len(degs) > 1:
                    self.fail(col + s, "inhomogeneous relation in the twisted grading")
            out.append(entries)
        return out

    def module_stmt(self, body, lead):
        m = re.fullmatch(rf"\s*module\s+({NAME})\s*=\s*coker\s+twists:\[(.*?)\]\s*rel:\[(.*)\]\s*", body)
        if not m:
            self.fail(lead + 1, "usage: module <name> = coker twists:[...] rel:[...]")
        self.need_ring(lead + 1)
        twists = []
        for piece, s in split_top_level(m.group(2), ","):
            if not piece.strip():
                if m.group(2).strip():
                    self.fail(m.start(2) + s + 1, "empty twist")
                continue
            try:
                twists.append(int(piece))
            except ValueError:
                self.fail(m.start(2) + s + 1, f"bad twist {piece.strip()!r}")
        rels = self.rows(m.group(3), m.start(3) + 1, len(twists), twists)
        self.bind(m.group(1), "module", m.start(1) + 1)
        return Statement(0, "", "module", m.group(1), {"twists": twists, "rels": rels})

    def map_stmt(self, body, lead):
        m = re.fullmatch(rf"\s*map\s+({NAME})\s*:\s*({NAME})\s*->\s*({NAME})\s*=\s*\[(.*)\]\s*", body)
        if not m:
            self.fail(lead + 1, "usage: map <name>: <src> -> <dst> = [row; ...]")
        self.need_ring(lead + 1)
        self.need(m.group(2), ("module", "ideal"), m.start(2) + 1)
        self.need(m.group(3), ("module", "ideal"), m.start(3) + 1)
        rows = self.rows(m.group(4), m.start(4) + 1)
        self.bind(m.group(1), "map", m.start(1) + 1)
        return Statement(0, "", "map", m.group(1), {"src": m.group(2), "dst": m.group(3), "rows": rows})

    def art_stmt(self, body, lead):
        m = re.fullmatch(rf"\s*art\s+({NAME})\s*=\s*(F1|F2)\s+({NAME})\s*", body)
        if not m:
            self.fail(lead + 1, "usage: art <name> = F1|F2 <module>")
        self.need(m.group(3), ("module", "ideal"), m.start(3) + 1)
        self.bind(m.group(1), "art", m.start(1) + 1)
        return Statement(0, "", "art", m.group(1), {"functor": m.group(2), "module": m.group(3)})

    def command(self, body, lead):
        toks = _tokens(body, 1)
        verb, vcol = toks[0]
        if verb not in VERBS:
            self.fail(vcol, f"unknown verb {verb!r}")
        pos_kinds, kw_kinds, result = VERBS[verb]
        toks = toks[1:]
        bind = None
        if len(toks) >= 2 and toks[-2][0] == "as":
            bind = toks[-1]
            if not re.fullmatch(NAME, bind[0]):
                self.fail(bind[1], f"bad name {bind[0]!r}")
            toks = toks[:-2]
        positional = [t for t in toks if "=" not in t[0]]
        keywords = [t for t in toks if "=" in t[0]]
        if len(positional) != len(pos_kinds):
            self.fail(vcol, f"{verb} takes {len(pos_kinds)} positional argument(s), got {len(positional)}")
        args = []
        for (tok, col), kind in zip(positional, pos_kinds):
            if kind == "int":
                if not re.fullmatch(r"-?\d+", tok):
                    self.fail(col, f"expected an integer, got {tok!r}")
                args.append(int(tok))
            else:
                allowed = ("module", "ideal") if kind == "module" else (kind,)
                self.need(tok, allowed, col)
                args.append(tok)
        kwargs = {}
        for tok, col in keywords:
            key, val = tok.split("=", 1)
            kind = kw_kinds.get(key)
            if kind is None:
                self.fail(col, f"{verb} has no option {key!r}")
            vcol2 = col + len(key) + 1
            if kind == "int":
                if not re.fullmatch(r"-?\d+", val):
                    self.fail(vcol2, f"expected an integer, got {val!r}")
                kwargs[key] = int(val)
            else:
                self.need_ring(col)
                if not (val.startswith("(") and val.endswith(")")):
                    self.fail(vcol2, "expected a parenthesised list")
                inner = val[1:-1]
                kwargs[key] = self.polys(inner, vcol2 + 1) if inner.strip() else []
        if verb == "paper-example":
            if self.ring is None:
                self.ring = PolyRing.standard(4)
                for n, k in BUILTINS.items():
                    self.kinds.setdefault(n, k)
            for n, k in EXAMPLE_NAMES.items():
                self.bind(n, k, vcol)
        elif self.ring is None:
            self.fail(vcol, "no ring declared")
        if result is not None:
            self.kinds["_"] = result
            if bind is not None:
                self.bind(bind[0], result, bind[1])
        elif bind is not None:
            self.fail(bind[1], f"{verb} produces nothing to bind")
        return Statement(0, "", "command", bind[0] if bind else None, {"verb": verb, "args": args, "kwargs": kwargs})


def parse_session(text: str) -> Session:
    return _Parser().parse(text)


# ---------------------------------------------------------------------------
# execution


@dataclass
class _ModuleBinding:
    module: FPModule
    twists: list  # declared generator twists
    kept: list
    proj: list
    rels: list  # declared relation vecs


def _indent(text, pad="  "):
    return "\n".join(pad + line for line in text.splitlines())


def _render_matrix(ring, cols, rank):
    rows = []
    for i in range(rank):
        rows.append(", ".join(render_polynomial(_entry(ring, col, i)) for col in cols))
    return "[" + "; ".join(rows) + "]"


def _entry(ring, col, i):
    return Polynomial(ring, {m: x for (c, m), x in col.items() if c == i}, check=False)


class Runner:
    def __init__(self, session: Session, seed: int = 0, max_degree: int = 6):
        self.session = session
        self.ring = session.ring
        self.seed = seed
        self.max_degree = max_degree
        self.env = {}
        self.out = []

    # -- bindings
    def _declare_module(self, name, twists, rel_vecs):
        M, kept, proj = _canonical(self.ring, twists, rel_vecs)
        self.env[name] = ("module", _ModuleBinding(M, list(twists), kept, proj, list(rel_vecs)))

    def _plain_binding(self, M):
        one = self.ring.one_mono
        ident = [{(k, one): 1} for k in range(M.rank)]
        return _ModuleBinding(M, list(M.twists), list(range(M.rank)), ident, list(M.rel_vecs))

    def _set_module(self, name, M):
        self.env[name] = ("module", self._plain_binding(M))

    def _builtins(self):
        ring = self.ring
        self._set_module("S", FPModule.free(ring))
        self._declare_module("k", [0], [{(0, ring.var_mono(j)): 1} for j in range(ring.n)])

    def module_binding(self, name) -> _ModuleBinding:
        kind, val = self.env[name]
        if kind == "ideal":
            return val[1]
        if kind != "module":
            raise CommandError(f"{name} is not a module")
        return val

    def module(self, name) -> FPModule:
        return self.module_binding(name).module

    # -- statements
    def run(self) -> int:
        for st in self.session.statements:
            self.out.append(f"> {st.text}")
            try:
                self.execute(st)
            except (CommandError, ValueError, ArithmeticError, RuntimeError) as e:
                label = st.data.get("verb", st.kind)
                self.out.append(f"error: {label}: {e}")
                return 1
        return 0

    def execute(self, st: Statement):
        if st.kind == "ring":
            self.ring = st.data["ring"]
            self._builtins()
        elif st.kind == "ideal":
            polys = st.data["polys"]
            vecs = [{(0, m): c for m, c in f.coeffs.items()} for f in polys if not f.is_zero()]
            M, kept, proj = _canonical(self.ring, [0], vecs)
            self.env[st.name] = ("ideal", (polys, _ModuleBinding(M, [0], kept, proj, vecs)))
        elif st.kind == "module":
            twists = st.data["twists"]
            vecs = []
            for row in st.data["rels"]:
                v = {}
                for c, f in enumerate(row):
                    for m, x in f.coeffs.items():
                        v[(c, m)] = x
                if v:
                    vecs.append(v)
            self._declare_module(st.name, twists, vecs)
        elif st.kind == "map":
            self.env[st.name] = ("map", self.build_map(st.data["src"], st.data["dst"], st.data["rows"]))
        elif st.kind == "art":
            M = self.module(st.data["module"])
            self.env[st.name] = ("art", F1(M) if st.data["functor"] == "F1" else F2(M))
        else:
            self.command(st)

    def build_map(self, src, dst, rows) -> ModuleMap:
        s, t = self.module_binding(src), self.module_binding(dst)
        if len(rows) != len(t.twists) or any(len(r) != len(s.twists) for r in rows):
            raise CommandError(f"matrix must be {len(t.twists)} x {len(s.twists)}")
        try:
            fm = FreeMap.from_matrix(FreeModule(self.ring, s.twists), FreeModule(self.ring, t.twists), rows)
        except InhomogeneousError as e:
            raise CommandError(str(e)) from None
        p = self.ring.p
        lift = [apply_columns(t.proj, fm.columns[j], p) for j in s.kept]
        return ModuleMap(s.module, t.module, lift)

    def bind_result(self, st, kind, value):
        targets = ["_"] + ([st.name] if st.name else [])
        for n in targets:
            if kind == "module":
                self._set_module(n, value)
            else:
                self.env[n] = (kind, value)

    def art(self, name) -> ArtinianRep:
        kind, val = self.env[name]
        if kind != "art":
            raise CommandError(f"{name} is not an artinian module")
        return val

    def emit(self, text):
        self.out.extend(text.splitlines() or [""])

    def command(self, st):
        verb = st.data["verb"]
        args, kw = st.data["args"], st.data["kwargs"]
        getattr(self, "do_" + verb.replace("-", "_"))(st, *args, **kw)

    # -- verbs
    def do_invariants(self, st, m):
        self.emit(invariants(self.module(m)).render())

    def do_gb(self, st, m):
        b = self.module_binding(m)
        G = gb_of_vecs(b.rels, FreeModule(self.ring, b.twists))
        if not G.vecs:
            self.emit("gb: []")
        else:
            self.emit("gb: " + "; ".join(render_vec(self.ring, v, len(b.twists)) for v in G.vecs))

    def do_resolve(self, st, m):
        res = free_resolution(self.module(m))
        for i, F in enumerate(res.modules):
            self.emit(f"F{i}: [{', '.join(map(str, F.twists))}]")
        for i, f in enumerate(res.maps, 1):
            self.emit(f"d{i}: {_render_matrix(self.ring, f.lift, f.target.rank)}")

    def do_betti(self, st, m):
        self.emit(render_betti(self.module(m)))

    def do_hilbert(self, st, m, lo=None, hi=None):
        M = self.module(m)
        if lo is None:
            lo = min([0] + list(M.twists))
        if hi is None:
            hi = self.max_degree
        vals = [str(hilbert_function(M, d)) for d in range(lo, hi + 1)]
        self.emit(f"hilbert[{lo}..{hi}]: {' '.join(vals)}")

    def do_ext(self, st, i, m, t):
        E = ext_module(i, self.module(m), t)
        self.emit(render_module(E))
        self.bind_result(st, "module", E)

    def do_koszul(self, st, m, xs=None):
        if xs is None:
            raise CommandError("koszul needs xs=(...)")
        K = koszul_complex(xs, self.module(m))
        for i in range(K.length + 1):
            self.emit(f"H_{i}:")
            self.emit(_indent(render_module(complex_homology(K, i))))

    def _emit_art(self, X):
        self.emit("art, dual module:")
        self.emit(_indent(render_module(X.dual)))

    def do_F1(self, st, m):
        X = F1(self.module(m))
        self._emit_art(X)
        self.bind_result(st, "art", X)

    def do_F2(self, st, m):
        X = F2(self.module(m))
        self._emit_art(X)
        self.bind_result(st, "art", X)

    def do_G1(self, st, x):
        M = G1(self.art(x))
        self.emit(render_module(M))
        self.bind_result(st, "module", M)

    def do_G2(self, st, x):
        M = G2(self.art(x))
        self.emit(render_module(M))
        self.bind_result(st, "module", M)

    def do_ndim(self, st, x):
        self.emit(f"ndim={ndim(self.art(x))}")

    def do_width(self, st, x):
        self.emit(f"width={width(self.art(x))}")

    def do_cocm(self, st, x):
        self.emit(f"cocm={'yes' if is_co_cm(self.art(x)) else 'no'}")

    def do_lochom_top(self, st, x, sop=None):
        X = self.art(x)
        if sop is None:
            sop = list(find_sop(X.dual, self.seed).elements) if not X.is_zero() else []
        self.emit("sop=(" + ", ".join(render_polynomial(f) for f in sop) + ")")
        trail = []
        M = local_homology_top(sop, X, trail)
        for line in trail:
            self.emit(line)
        self.emit(render_module(M))
        self.bind_result(st, "module", M)

    def do_koszul_art(self, st, x, xs=None, t=1, i=0):
        if xs is None:
            raise CommandError("koszul-art needs xs=(...)")
        X = koszul_homology_artinian(xs, t, i, self.art(x))
        self._emit_art(X)
        self.bind_result(st, "art", X)

    def do_cmfication(self, st, m):
        C = cmfication_candidate(self.module(m))
        self.emit(render_module(C))
        self.bind_result(st, "module", C)

    def _map(self, name) -> ModuleMap:
        kind, val = self.env[name]
        if kind != "map":
            raise CommandError(f"{name} is not a map")
        return val

    def do_verify_cmf(self, st, m, mt, f):
        self.emit(verify_cmfication(self.module(m), self.module(mt), self._map(f)).render())

    def do_thm4_check(self, st, m, b, f):
        self.emit(theorem4_check(self.module(m), self.module(b), self._map(f)).render())

    def do_goto_check(self, st, m):
        ok = goto_pattern_check(self.module(m))
        self.emit(f"pattern={'yes' if ok else 'no'}")
        self.emit("buchsbaum=not checked")

    def do_cor2_check(self, st, m):
        rec = corollary2_check(self.module(m))
        self.emit(rec.render())
        self.emit("ext:")
        self.emit(_indent(render_module(rec.extModule)))
        self.bind_result(st, "module", rec.extModule)

    def do_paper_example(self, st):
        ex = paper_example(self.ring)
        self.env["I"] = ("ideal", (list(ex.I), self._plain_binding(ex.R)))
        self._set_module("R", ex.R)
        self._set_module("B", ex.B)
        self.env["iota"] = ("map", ex.iota)
        self.emit("I: " + ", ".join(render_polynomial(f) for f in ex.I))
        self.emit("R:")
        self.emit(_indent(render_module(ex.R)))
        self.emit("B:")
        self.emit(_indent(render_module(ex.B)))
        self.emit(f"iota: {_render_matrix(self.ring, ex.iota.lift, ex.B.rank)}")

    def do_iso(self, st, a, b):
        self.emit(is_isomorphic(self.module(a), self.module(b), self.seed))


def module_statement(name: str, M: FPModule) -> str:
    """A ``module`` line that parses back to ``M``."""
    rels = "; ".join(render_vec(M.ring, v, M.rank) for v in M.rel_vecs)
    return f"module {name} = coker twists:[{', '.join(map(str, M.twists))}] rel:[{rels}]"


def ideal_statement(name: str, polys) -> str:
    return f"ideal {name} = " + ", ".join(render_polynomial(f) for f in polys)


def run_session(text: str, seed: int = 0, max_degree: int = 6):
    """Parse and run; returns ``(exit_code, transcript_lines)``."""
    try:
        session = parse_session(text)
    except SessionParseError as e:
        return 2, [f"parse error: {e}"]
    runner = Runner(session, seed, max_degree)
    code = runner.run()
    return code, runner.out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="cmduality", description="Run a session file (or stdin).")
    ap.add_argument("file", nargs="?", help="session file; stdin if omitted")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    ap.add_argument("--max-degree", type=int, default=6, help="upper degree for degreewise output")
    ns = ap.parse_args(argv)
    if ns.file:
        with open(ns.file, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    code, lines = run_session(text, ns.seed, ns.max_degree)
    if code == 2:
        print(lines[0], file=sys.stderr)
    else:
        sys.stdout.write("".join(line + "\n" for line in lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
