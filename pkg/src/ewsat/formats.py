"""Text formats: families (.fam), formulas (.ewsat), graphs (.edge/.hedge), WDI (.wdi).

All formats are line based, 1-based, with '#' comments.  Internally graphs and
WDI instances are 0-based.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

from .boolfun import BoolFun, ConstraintFamily
from .clique import Graph, Hypergraph
from .errors import ParseError, UsageError
from .formula import ONE, ZERO, Constraint, Formula
from .wdi import WdiInstance

PathLike = Union[str, Path]


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int, path, what: str, lo: Optional[int] = None) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}", no, path) from None
    if lo is not None and v < lo:
        raise ParseError(f"{what} must be >= {lo}, got {v}", no, path)
    return v


def _header(toks: List[str], kind: str, count: int, no: int, path) -> List[int]:
    if len(toks) != 2 + count or toks[0] != "p" or toks[1] != kind:
        raise ParseError(f"expected header 'p {kind}' with {count} numbers", no, path)
    return [_int(t, no, path, "header field", 0) for t in toks[2:]]


def directives(text: str) -> Dict[str, str]:
    """``# key: value`` comment lines (used for expected answers in corpora)."""
    out = {}
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("#") and ":" in s:
            key, val = s[1:].split(":", 1)
            out[key.strip()] = val.strip()
    return out


# -- families ---------------------------------------------------------------

def parse_family(text: str, path=None) -> ConstraintFamily:
    funs = []
    for no, toks in _lines(text):
        if toks[0] != "fun" or len(toks) != 4:
            raise ParseError("expected 'fun <name> <arity> <table>'", no, path)
        _, name, ar, bits = toks
        arity = _int(ar, no, path, "arity", 1)
        if len(bits) != 1 << arity:
            raise ParseError(f"table of {name} has length {len(bits)}, expected {1 << arity}", no, path)
        try:
            funs.append(BoolFun.from_bits(name, bits))
        except UsageError as e:
            raise ParseError(str(e), no, path) from None
    try:
        return ConstraintFamily(tuple(funs))
    except UsageError as e:
        raise ParseError(str(e), None, path) from None


def write_family(F: ConstraintFamily) -> str:
    return "".join(f"fun {f.name} {f.arity} {f.bits()}\n" for f in F)


def load_family(path: PathLike) -> ConstraintFamily:
    path = Path(path)
    return parse_family(path.read_text(encoding="utf-8"), path)


# -- formulas ---------------------------------------------------------------

def parse_formula(text: str, resolve: Callable[[str], ConstraintFamily], path=None
                  ) -> Tuple[Formula, int, str]:
    """Returns (formula, k, family name); ``resolve`` maps the 'use' name to a family."""
    header = None
    fam_name = None
    F = None
    cons = []
    for no, toks in _lines(text):
        if header is None:
            header = _header(toks, "ewsat", 3, no, path)
            continue
        if toks[0] == "use":
            if fam_name is not None or len(toks) != 2:
                raise ParseError("expected exactly one 'use <family>' line", no, path)
            fam_name = toks[1]
            try:
                F = resolve(fam_name)
            except (OSError, KeyError) as e:
                raise ParseError(f"cannot load family {fam_name!r}: {e}", no, path) from None
            continue
        if toks[0] != "c" or len(toks) < 2:
            raise ParseError("expected 'c <fun> <terms...>'", no, path)
        if F is None:
            raise ParseError("constraint before the 'use' line", no, path)
        if toks[1] not in F:
            raise ParseError(f"unknown function {toks[1]!r}", no, path)
        f = F[toks[1]]
        terms = []
        for t in toks[2:]:
            if t in (ONE, ZERO):
                terms.append(t)
            else:
                v = _int(t, no, path, "variable", 1)
                if v > header[0]:
                    raise ParseError(f"variable {v} exceeds n={header[0]}", no, path)
                terms.append(v)
        if len(terms) != f.arity:
            raise ParseError(f"{f.name} expects {f.arity} terms, got {len(terms)}", no, path)
        cons.append(Constraint(f, tuple(terms)))
    if header is None:
        raise ParseError("missing 'p ewsat' header", None, path)
    if F is None:
        raise ParseError("missing 'use' line", None, path)
    n, m, k = header
    if len(cons) != m:
        raise ParseError(f"header announces {m} constraints, found {len(cons)}", None, path)
    return Formula(n, F, tuple(cons)), k, fam_name


def write_formula(phi: Formula, k: int, family_name: str, comments: Tuple[str, ...] = ()) -> str:
    out = [f"# {c}\n" for c in comments]
    out.append(f"p ewsat {phi.n} {phi.m} {k}\n")
    out.append(f"use {family_name}\n")
    for c in phi.constraints:
        out.append("c " + " ".join([c.fun.name] + [str(t) for t in c.args]) + "\n")
    return "".join(out)


def load_formula(path: PathLike, family: Optional[ConstraintFamily] = None
                 ) -> Tuple[Formula, int, str]:
    """Read a formula; its family comes from ``<name>.fam`` next to it unless given."""
    path = Path(path)

    def resolve(name: str) -> ConstraintFamily:
        if family is not None:
            return family
        return load_family(path.parent / f"{name}.fam")

    return parse_formula(path.read_text(encoding="utf-8"), resolve, path)


# -- graphs -------------------------------------------------------------------

def parse_graph(text: str, path=None) -> Graph:
    header = None
    edges = set()
    for no, toks in _lines(text):
        if header is None:
            header = _header(toks, "edge", 2, no, path)
            continue
        if toks[0] != "e" or len(toks) != 3:
            raise ParseError("expected 'e <u> <v>'", no, path)
        u, v = (_int(t, no, path, "vertex", 1) for t in toks[1:])
        if u > header[0] or v > header[0]:
            raise ParseError("vertex out of range", no, path)
        if u == v:
            raise ParseError("self-loop", no, path)
        e = (min(u, v) - 1, max(u, v) - 1)
        if e in edges:
            raise ParseError("duplicate edge", no, path)
        edges.add(e)
    if header is None:
        raise ParseError("missing 'p edge' header", None, path)
    if len(edges) != header[1]:
        raise ParseError(f"header announces {header[1]} edges, found {len(edges)}", None, path)
    return Graph.from_edges(header[0], edges)


def write_graph(G: Graph) -> str:
    edges = G.edges()
    return f"p edge {G.n} {len(edges)}\n" + "".join(f"e {u + 1} {v + 1}\n" for u, v in edges)


def parse_hypergraph(text: str, path=None) -> Hypergraph:
    header = None
    edges = set()
    for no, toks in _lines(text):
        if header is None:
            header = _header(toks, "hedge", 3, no, path)
            if header[0] < 1:
                raise ParseError("uniformity must be positive", no, path)
            continue
        d, n = header[0], header[1]
        if toks[0] != "e" or len(toks) != 1 + d:
            raise ParseError(f"expected 'e' with {d} vertices", no, path)
        vs = [_int(t, no, path, "vertex", 1) for t in toks[1:]]
        if max(vs) > n or len(set(vs)) != d:
            raise ParseError("hyperedge vertices out of range or repeated", no, path)
        e = tuple(sorted(v - 1 for v in vs))
        if e in edges:
            raise ParseError("duplicate hyperedge", no, path)
        edges.add(e)
    if header is None:
        raise ParseError("missing 'p hedge' header", None, path)
    if len(edges) != header[2]:
        raise ParseError(f"header announces {header[2]} hyperedges, found {len(edges)}", None, path)
    return Hypergraph(header[0], header[1], frozenset(edges))


def write_hypergraph(H: Hypergraph) -> str:
    edges = sorted(H.edges)
    return (f"p hedge {H.d} {H.n} {len(edges)}\n"
            + "".join("e " + " ".join(str(v + 1) for v in e) + "\n" for e in edges))


# -- WDI -------------------------------------------------------------------------

def parse_wdi(text: str, path=None) -> WdiInstance:
    header = None
    weights: List[int] = []
    seen_w = set()
    arcs = set()
    for no, toks in _lines(text):
        if header is None:
            header = _header(toks, "wdi", 3, no, path)
            weights = [1] * header[0]
            continue
        n = header[0]
        if toks[0] == "w" and len(toks) == 3:
            v = _int(toks[1], no, path, "vertex", 1)
            if v > n:
                raise ParseError("vertex out of range", no, path)
            if v in seen_w:
                raise ParseError(f"weight of vertex {v} given twice", no, path)
            seen_w.add(v)
            weights[v - 1] = _int(toks[2], no, path, "weight", 1)
        elif toks[0] == "a" and len(toks) == 3:
            u, v = (_int(t, no, path, "vertex", 1) for t in toks[1:])
            if u > n or v > n:
                raise ParseError("vertex out of range", no, path)
            if (u - 1, v - 1) in arcs:
                raise ParseError("duplicate arc", no, path)
            arcs.add((u - 1, v - 1))
        else:
            raise ParseError("expected 'w <v> <weight>' or 'a <u> <v>'", no, path)
    if header is None:
        raise ParseError("missing 'p wdi' header", None, path)
    if len(arcs) != header[1]:
        raise ParseError(f"header announces {header[1]} arcs, found {len(arcs)}", None, path)
    return WdiInstance(header[0], frozenset(arcs), tuple(weights), header[2])


def write_wdi(inst: WdiInstance) -> str:
    out = [f"p wdi {inst.n} {len(inst.arcs)} {inst.k}\n"]
    out += [f"w {v + 1} {w}\n" for v, w in enumerate(inst.weights) if w != 1]
    out += [f"a {u + 1} {v + 1}\n" for u, v in sorted(inst.arcs)]
    return "".join(out)
