"""Seeded instance generators shared by tests, benchmarks and the checked-in corpus."""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .boolfun import BoolFun, ConstraintFamily, eq2, family, find_restriction, impl, nand, or2
from .clique import Graph, Hypergraph, find_clique_bruteforce
from .errors import UsageError
from .formats import write_family, write_formula, write_graph, write_wdi
from .formula import Constraint, Formula, weight
from .wdi import FrobeniusView, WdiInstance, frobenius_violations, solve_bruteforce


def dual_horn() -> BoolFun:
    return BoolFun.from_callable("DH3", 3, lambda a, b, c: (not a) or b or c)


def f_prime() -> BoolFun:
    # true exactly on (0,0,0), (1,0,1), (1,1,0)
    return BoolFun.from_bits("FP3", "10010100")


def three_sat_family() -> ConstraintFamily:
    """The eight ternary clauses: each function has exactly one falsifying row."""
    full = (1 << 8) - 1
    return ConstraintFamily(tuple(BoolFun(f"CL{m}", 3, full ^ (1 << m)) for m in range(8)))


def random_formula(rng: random.Random, F: ConstraintFamily, n: int, m: int) -> Formula:
    fs = list(F)
    cons = []
    for _ in range(m):
        f = rng.choice(fs)
        cons.append(Constraint(f, tuple(rng.randint(1, n) for _ in range(f.arity))))
    return Formula(n, F, tuple(cons))


def satisfiable(phi: Formula, k: int) -> bool:
    return any(weight(a) == k and phi(a) for a in range(1 << phi.n))


# -- families -----------------------------------------------------------------

def ternary_pool(avoid: BoolFun, allow_const1: bool = True) -> List[BoolFun]:
    """Non-constant arity-3 functions not containing ``avoid`` as a restriction."""
    out = []
    for t in range(1, 255):
        f = BoolFun(f"T{t}", 3, t)
        if find_restriction(f, avoid, allow_const1) is None:
            out.append(f)
    return out


def nand2_avoiding_zoo() -> List[ConstraintFamily]:
    fams = [family(impl()), family(dual_horn()), family(or2()), family(eq2()),
            family(impl(), f_prime()), family(or2(), eq2())]
    pool = ternary_pool(nand(2))
    rng = random.Random(7)
    for _ in range(6):
        fams.append(ConstraintFamily(tuple(rng.sample(pool, 2))))
    return fams


def nand3_avoiding_zoo() -> List[ConstraintFamily]:
    pool = ternary_pool(nand(3))
    fams = [family(nand(2)), family(nand(2), impl()), family(nand(2), or2())]
    rng = random.Random(11)
    for _ in range(9):
        fams.append(ConstraintFamily(tuple(rng.sample(pool, 2)) + (nand(2),)))
    return fams


def formula_corpus(seed: int, count: int, zoo: Sequence[ConstraintFamily], max_n: int, max_k: int,
                   want: Optional[bool] = None, min_n: int = 2) -> List[Tuple[Formula, int]]:
    """``count`` random (formula, k) pairs; ``want`` filters on weight-k satisfiability."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        F = rng.choice(zoo)
        n = rng.randint(min_n, max_n)
        phi = random_formula(rng, F, n, rng.randint(1, 2 * n))
        k = rng.randint(1, min(max_k, n))
        if want is None or satisfiable(phi, k) == want:
            out.append((phi, k))
    return out


# -- graphs and WDI -------------------------------------------------------------------

def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_hypergraph(rng: random.Random, d: int, n: int, p: float) -> Hypergraph:
    return Hypergraph(d, n, frozenset(e for e in combinations(range(n), d) if rng.random() < p))


def random_dag(rng: random.Random, n: int, p: float, weights: Sequence[int] = (1,), k: int = 0
               ) -> WdiInstance:
    """Arcs point from higher to lower index under a random relabelling."""
    perm = list(range(n))
    rng.shuffle(perm)
    arcs = {(perm[u], perm[v]) for u in range(n) for v in range(u) if rng.random() < p}
    return WdiInstance(n, frozenset(arcs), tuple(rng.choice(weights) for _ in range(n)), k)


def frobenius_instance(rng: random.Random, layer_weights: Sequence[int], sizes: Sequence[int],
                       k: int, p: float = 0.3) -> Tuple[WdiInstance, FrobeniusView]:
    """Layered instance satisfying the four Frobenius properties for target k.

    Arcs from layer i go to lower layers only, and are dropped whenever they
    would push a descendant weight past the sqrt(k/2) bound.
    """
    if any(2 * w * w > k for w in layer_weights):
        raise UsageError(f"layer weights {list(layer_weights)} too heavy for k={k}")
    layers: List[List[int]] = []
    weights: List[int] = []
    nxt = 0
    for w, size in zip(layer_weights, sizes):
        layers.append(list(range(nxt, nxt + size)))
        weights += [w] * size
        nxt += size
    succ: List[List[int]] = [[] for _ in range(nxt)]
    desc = [{v} for v in range(nxt)]
    for i, layer in enumerate(layers):
        lower = [v for L in layers[:i] for v in L]
        for v in layer:
            for x in lower:
                if rng.random() >= p:
                    continue
                grown = desc[v] | desc[x]
                wd = sum(weights[u] for u in grown)
                if 2 * wd * wd <= k:
                    succ[v].append(x)
                    desc[v] = grown
    arcs = frozenset((u, v) for u in range(nxt) for v in succ[u])
    view = FrobeniusView(layers, list(layer_weights), succ)
    assert not frobenius_violations(view, k)
    return WdiInstance(nxt, arcs, tuple(weights), k), view


def layered_instance(seed: int, n: int = 2000, k: int = 100, heights: int = 3) -> WdiInstance:
    """Large layered DAG with small descendant sets; mixed weights per layer."""
    rng = random.Random(seed)
    per = n // heights
    layers = [list(range(h * per, (h + 1) * per if h < heights - 1 else n)) for h in range(heights)]
    weights = [0] * n
    arcs = set()
    for h, layer in enumerate(layers):
        for v in layer:
            weights[v] = rng.choice((2, 3)) if h == 0 else rng.choice((1, 2))
            if h:
                for x in rng.sample(layers[h - 1], 1):
                    arcs.add((v, x))
    return WdiInstance(n, frozenset(arcs), tuple(weights), k)


# -- checked-in corpus ------------------------------------------------------------------

def write_corpus(root, seed: int = 0) -> List[Path]:
    """Small mixed corpus with expected answers, consumed by ``ewsat xcheck``."""
    from .solver import solve_oracle

    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    written: List[Path] = []

    def put(name: str, text: str) -> None:
        p = root / name
        p.write_text(text, encoding="utf-8")
        written.append(p)

    fams = {"IMPL": family(impl()), "NAND2": family(nand(2)), "NAND3": family(nand(3)),
            "OR2": family(or2()), "EQ2": family(eq2()), "DH3": family(dual_horn())}
    regimes = {"IMPL": "Subexponential", "NAND2": "Clique", "NAND3": "BruteForce",
               "OR2": "FPT", "EQ2": "FPT", "DH3": "Subexponential"}
    for name, F in fams.items():
        put(f"{name}.fam", f"# regime: {regimes[name]}\n" + write_family(F))
    for i in range(12):
        name = list(fams)[i % len(fams)]
        n = rng.randint(3, 9)
        phi = random_formula(rng, fams[name], n, rng.randint(1, 2 * n))
        k = rng.randint(1, min(4, n))
        ans = solve_oracle(phi, k)
        expect = "YES " + " ".join(map(str, ans.witness)) if ans.yes else "NO"
        put(f"f{i:02d}_{name}.ewsat", write_formula(phi, k, name, (f"expect: {expect}",)))
    for i in range(6):
        inst = random_dag(rng, rng.randint(4, 12), 0.25, (1, 1, 2, 3), rng.randint(1, 8))
        S = solve_bruteforce(inst)
        expect = "YES " + " ".join(str(v + 1) for v in sorted(S)) if S is not None else "NO"
        put(f"w{i:02d}.wdi", f"# expect: {expect}\n" + write_wdi(inst))
    for i in range(4):
        G = random_graph(rng, rng.randint(5, 14), 0.5)
        k = rng.randint(3, 5)
        C = find_clique_bruteforce(G, k)
        expect = "YES " + " ".join(str(v + 1) for v in C) if C is not None else "NO"
        put(f"g{i:02d}.edge", f"# k: {k}\n# expect: {expect}\n" + write_graph(G))
    return written
