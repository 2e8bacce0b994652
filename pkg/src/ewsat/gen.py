"""Instance generators for the hardness direction.

Clique -> weighted implications -> unit-weight implications -> SAT(IMPL);
hypergraph -> SAT(NAND_d); and formulas over IMPL/NAND_d re-expressed in an
arbitrary family that represents them, using gadgets that pin fresh
variables to constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

from .boolfun import (CONST0, CONST1, ArgMap, BoolFun, ConstraintFamily, family,
                      find_restriction, impl, is_one_valid, is_zero_valid, nand, represents)
from .clique import Graph, Hypergraph
from .errors import UsageError
from .formula import ONE, ZERO, Constraint, Formula, Term, is_var
from .wdi import WdiInstance


# -- clique / implications ----------------------------------------------------

def clique_to_wdi(G: Graph, k: int) -> WdiInstance:
    """Vertex nodes of weight C(k,2)+1 and unit edge nodes pointing at both endpoints.

    Nodes 0..n-1 are the vertices, then one node per edge in sorted order.
    A closed set of weight k*K + C(k,2) exists iff G has a k-clique.
    """
    if k < 2:
        raise UsageError("clique size must be at least 2")
    K = comb(k, 2) + 1
    edges = G.edges()
    weights = [K] * G.n + [1] * len(edges)
    arcs = set()
    for i, (u, v) in enumerate(edges):
        node = G.n + i
        arcs.add((node, u))
        arcs.add((node, v))
    return WdiInstance(G.n + len(edges), frozenset(arcs), tuple(weights), k * K + comb(k, 2))


def wdi_to_unit(inst: WdiInstance) -> Tuple[WdiInstance, List[List[int]]]:
    """Replace each weight-w vertex by a directed w-cycle.

    Returns the unit-weight instance and, per original vertex, its cycle nodes
    (the first one carries the original arcs).
    """
    nodes: List[List[int]] = []
    nxt = 0
    for w in inst.weights:
        nodes.append(list(range(nxt, nxt + w)))
        nxt += w
    arcs = set()
    for cyc in nodes:
        if len(cyc) > 1:
            for i, x in enumerate(cyc):
                arcs.add((x, cyc[(i + 1) % len(cyc)]))
    for u, v in inst.arcs:
        arcs.add((nodes[u][0], nodes[v][0]))
    return WdiInstance(nxt, frozenset(arcs), (1,) * nxt, inst.k), nodes


def digraph_to_sat_impl(n: int, arcs: Iterable[Tuple[int, int]]) -> Formula:
    """One implication per arc; 0-based vertex v becomes variable v+1."""
    f = impl()
    cons = [Constraint(f, (u + 1, v + 1)) for u, v in sorted(set(arcs))]
    return Formula(n, family(f), tuple(cons))


def hypergraph_to_sat_nand(H: Hypergraph) -> Formula:
    """NAND_d on every d-set that is not a hyperedge."""
    f = nand(H.d)
    cons = [Constraint(f, tuple(v + 1 for v in e))
            for e in combinations(range(H.n), H.d) if e not in H.edges]
    return Formula(H.n, family(f), tuple(cons))


# -- constant gadgets -----------------------------------------------------------

def _contains_hard_binary(f: BoolFun) -> bool:
    return find_restriction(f, impl()) is not None or find_restriction(f, nand(2)) is not None


def _supports(r: int) -> List[Tuple[int, ...]]:
    """All subsets of [r] (0-based positions) by size, then lexicographically."""
    return [S for size in range(r + 1) for S in combinations(range(r), size)]


def _row(S: Sequence[int]) -> int:
    m = 0
    for i in S:
        m |= 1 << i
    return m


def const01_choice(f: BoolFun) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    """(S, S2, T): S the satisfying support used to pin y; S2 < T with f(S2)=1, f(T)=0."""
    subsets = _supports(f.arity)
    S = next(s for s in subsets if f.value(_row(s)))
    pairs = [(a, b) for a in subsets if f.value(_row(a))
             for b in subsets if set(a) < set(b) and not f.value(_row(b))]
    S2, T = min(pairs, key=lambda p: (len(p[0]), p[0], len(p[1]), p[1]))
    return S, S2, T


def gadget_const01(f: BoolFun, k: int) -> Formula:
    """Fragment over y=1, z_j=1+j (j=1..k+1) whose only weight-(<=k) solution is y=1, z=0."""
    if is_zero_valid(f):
        raise UsageError(f"{f.name} is 0-valid")
    if not _contains_hard_binary(f):
        raise UsageError(f"{f.name} contains neither IMPL nor NAND2")
    S, S2, T = const01_choice(f)
    y = 1
    z = [None] + [1 + j for j in range(1, k + 2)]
    cons = []
    for j in range(1, k + 2):
        cons.append(Constraint(f, tuple(y if i in S else z[j] for i in range(f.arity))))
    for j in range(1, k + 2):
        for j2 in range(1, k + 2):
            if j == j2:
                continue
            args = tuple(y if i in S2 else z[j] if i in T else z[j2] for i in range(f.arity))
            cons.append(Constraint(f, args))
    return Formula(k + 2, family(f), tuple(cons))


def const0_choice(f: BoolFun) -> Optional[Tuple[int, ...]]:
    """Smallest nonempty proper S with f(a_S)=0, or None when f is not 1-valid."""
    if not is_one_valid(f):
        return None
    return next(S for S in _supports(f.arity)[1:] if len(S) < f.arity and not f.value(_row(S)))


def gadget_const0(f: BoolFun, k: int, offset: int = 0) -> Formula:
    """Fragment over z_i = offset+i (i=1..k+1) whose only weight-(<=k) solution is all-zero."""
    if not is_zero_valid(f):
        raise UsageError(f"{f.name} is not 0-valid")
    if not _contains_hard_binary(f):
        raise UsageError(f"{f.name} contains neither IMPL nor NAND2")
    z = [None] + [offset + i for i in range(1, k + 2)]
    S = const0_choice(f)
    cons = []
    if S is None:
        for i in range(1, k + 2):
            cons.append(Constraint(f, (z[i],) * f.arity))
    else:
        for i in range(1, k + 2):
            for i2 in range(1, k + 2):
                if i != i2:
                    cons.append(Constraint(f, tuple(z[i] if p in S else z[i2] for p in range(f.arity))))
    return Formula(offset + k + 1, family(f), tuple(cons))


# -- expressing SAT(g) inside a family ----------------------------------------------

@dataclass(frozen=True)
class Expressed:
    formula: Formula
    k: int
    case: str  # "a", "b" or "c"
    member: BoolFun
    argmap: ArgMap

    def project(self, a: int, n: int) -> int:
        """Assignment to the original variables x_1..x_n."""
        return a & ((1 << n) - 1)


def _target_function(phi: Formula) -> BoolFun:
    used = {c.fun for c in phi.constraints} or set(phi.family)
    if len(used) != 1:
        raise UsageError("formula must use a single function (IMPL or NAND_d)")
    g = next(iter(used))
    if g == impl() or g == nand(g.arity):
        return g
    raise UsageError(f"{g.name} is neither IMPL nor a NAND")


def _expand(f: BoolFun, m: ArgMap, args: Sequence[Term], zero: int, one: Optional[int]) -> Constraint:
    def sub(t: Term) -> int:
        if is_var(t):
            return t
        if t == ZERO:
            return zero
        if one is None:
            raise UsageError("constant 1 cannot be expressed here")
        return one

    out = []
    for e in m:
        if e == CONST0:
            out.append(zero)
        elif e == CONST1:
            if one is None:
                raise UsageError("constant 1 cannot be expressed here")
            out.append(one)
        else:
            out.append(sub(args[e - 1]))
    return Constraint(f, tuple(out))


def express_sat_g_in_family(phi: Formula, F: ConstraintFamily, k: int) -> Expressed:
    """Equivalent instance over ``F``: phi has a weight-k solution iff the output
    has one of weight ``Expressed.k``.  The original variables keep indices 1..n."""
    g = _target_function(phi)
    hit = represents(F, g)
    if hit is None:
        raise UsageError(f"family does not represent {g.name}")
    f, m = hit
    n = phi.n
    uses_one = any(t == ONE for c in phi.constraints for t in c.args)

    def shift(frag: Formula, by: int) -> List[Constraint]:
        return [Constraint(c.fun, tuple(t + by if is_var(t) else t for t in c.args))
                for c in frag.constraints]

    if not is_zero_valid(f):
        # y = n+1, z_j = n+1+j, j = 1..k+2
        frag = gadget_const01(f, k + 1)
        y, z1 = n + 1, n + 2
        cons = shift(frag, n) + [_expand(f, m, c.args, z1, y) for c in phi.constraints]
        return Expressed(Formula(n + k + 3, F, tuple(cons)), k + 1, "a", f, m)

    m0 = find_restriction(f, g, allow_const1=False)
    if m0 is not None and not uses_one:
        frag = gadget_const0(f, k, offset=n)
        z1 = n + 1
        cons = shift(frag, 0) + [_expand(f, m0, c.args, z1, None) for c in phi.constraints]
        return Expressed(Formula(n + k + 1, F, tuple(cons)), k, "b", f, m0)

    imp = next(((h, mi) for h in F for mi in [find_restriction(h, impl(), allow_const1=False)]
                if mi is not None), None)
    if imp is None:
        raise UsageError(f"cannot express the constant 1 for {g.name} in this family")
    h, mi = imp
    # y = n+1, z_i = n+1+i, i = 1..k+2
    y, z1 = n + 1, n + 2
    frag = gadget_const0(f, k + 1, offset=n + 1)
    cons = list(frag.constraints)
    cons += [_expand(h, mi, (x, y), z1, None) for x in range(1, n + 1)]
    cons += [_expand(f, m, c.args, z1, y) for c in phi.constraints]
    return Expressed(Formula(n + k + 3, F, tuple(cons)), k + 1, "c", f, m)
