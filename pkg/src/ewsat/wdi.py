"""Weighted DAG Implications: find a closed vertex set of weight exactly k.

Vertices are 0-based.  An arc ``(u, v)`` means ``u in S`` forces ``v in S``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import CapacityError, UsageError

log = logging.getLogger(__name__)

Witness = FrozenSet[int]


@dataclass(frozen=True)
class WdiInstance:
    n: int
    arcs: FrozenSet[Tuple[int, int]]
    weights: Tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) != self.n:
            raise UsageError(f"{len(self.weights)} weights for {self.n} vertices")
        if any(w < 1 for w in self.weights):
            raise UsageError("vertex weights must be positive")
        if self.k < 0:
            raise UsageError("target weight must be nonnegative")
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise UsageError(f"arc ({u}, {v}) out of range")

    @classmethod
    def unit(cls, n: int, arcs: Iterable[Tuple[int, int]], k: int) -> "WdiInstance":
        return cls(n, frozenset(arcs), (1,) * n, k)

    def with_k(self, k: int) -> "WdiInstance":
        return WdiInstance(self.n, self.arcs, self.weights, k)

    def successors(self) -> List[List[int]]:
        succ: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in sorted(self.arcs):
            if u != v:
                succ[u].append(v)
        return succ

    @property
    def total_weight(self) -> int:
        return sum(self.weights)


def verify_witness(inst: WdiInstance, S: Iterable[int]) -> bool:
    S = set(S)
    if any(not 0 <= v < inst.n for v in S):
        return False
    if any(u in S and v not in S for u, v in inst.arcs):
        return False
    return sum(inst.weights[v] for v in S) == inst.k


def strongly_connected_components(n: int, succ: Sequence[Sequence[int]]) -> List[List[int]]:
    """Tarjan's algorithm, iterative.  Components come out in reverse topological order."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: List[int] = []
    comps: List[List[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(sorted(comp))
    return comps


def condense(inst: WdiInstance) -> Tuple[WdiInstance, Tuple[Tuple[int, ...], ...]]:
    """Contract strongly connected components.

    Component ``c`` of the result stands for the original vertices
    ``components[c]``; components are numbered by their smallest vertex.
    """
    comps = strongly_connected_components(inst.n, inst.successors())
    comps.sort(key=lambda c: c[0])
    comp_of = [0] * inst.n
    for c, members in enumerate(comps):
        for v in members:
            comp_of[v] = c
    arcs = {(comp_of[u], comp_of[v]) for u, v in inst.arcs if comp_of[u] != comp_of[v]}
    weights = tuple(sum(inst.weights[v] for v in members) for members in comps)
    return WdiInstance(len(comps), frozenset(arcs), weights, inst.k), tuple(map(tuple, comps))


def is_acyclic(inst: WdiInstance) -> bool:
    if any(u == v for u, v in inst.arcs):
        return False
    return all(len(c) == 1 for c in strongly_connected_components(inst.n, inst.successors()))


def _expand(S: Iterable[int], comps: Sequence[Sequence[int]]) -> Witness:
    return frozenset(v for c in S for v in comps[c])


# -- Frobenius instances --------------------------------------------------

def frobenius_feasible(weights: Sequence[int], k: int) -> bool:
    if not weights:
        return k == 0
    g = 0
    for w in weights:
        g = gcd(g, w)
    return k % g == 0


@dataclass
class FrobeniusView:
    """Layers V_1..V_l of a (sub)graph with one weight per layer.

    ``succ`` is the adjacency of the ambient DAG; only arcs between vertices
    of the view count.
    """
    layers: List[List[int]]
    weights: List[int]
    succ: Sequence[Sequence[int]]

    def vertices(self) -> Set[int]:
        return {v for layer in self.layers for v in layer}

    def layer_of(self) -> Dict[int, int]:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}

    def descendants(self, S: Iterable[int], alive: Optional[Set[int]] = None) -> Set[int]:
        alive = self.vertices() if alive is None else alive
        seen = set()
        todo = [v for v in S if v in alive]
        while todo:
            v = todo.pop()
            if v in seen:
                continue
            seen.add(v)
            todo.extend(x for x in self.succ[v] if x in alive and x not in seen)
        return seen

    def weight_of(self, S: Iterable[int], layer_of: Optional[Dict[int, int]] = None) -> int:
        layer_of = self.layer_of() if layer_of is None else layer_of
        return sum(self.weights[layer_of[v]] for v in S)


def frobenius_violations(view: FrobeniusView, k: int) -> List[str]:
    """Which of the defining properties P1-P4 fail (empty list: a Frobenius instance)."""
    problems = []
    layer_of = view.layer_of()
    if len(layer_of) != sum(len(layer) for layer in view.layers):
        problems.append("P1: a vertex sits in two layers")
    if len(view.weights) != len(view.layers) or any(w < 1 for w in view.weights):
        problems.append("P1: layer weights malformed")
        return problems
    for v, i in layer_of.items():
        for x in view.succ[v]:
            if x in layer_of and layer_of[x] >= i:
                problems.append(f"P2: arc {v}->{x} does not go to a lower layer")
    for i, layer in enumerate(view.layers):
        if len(layer) < k:
            problems.append(f"P3: layer {i + 1} has {len(layer)} < {k} vertices")
    alive = set(layer_of)
    for v in layer_of:
        wd = view.weight_of(view.descendants([v], alive), layer_of)
        if 2 * wd * wd > k:
            problems.append(f"P4: vertex {v} has descendant weight {wd}")
    return problems


def frobenius_witness(view: FrobeniusView, k: int, check: bool = True) -> Witness:
    """Closed set of weight exactly ``k`` in a Frobenius instance with gcd | k.

    Follows the inductive construction: either drop the last layer, or fix the
    residue modulo the gcd d of the other layers with b < d vertices of the
    last layer, then divide all remaining weights and the target by d.
    """
    layers = [list(layer) for layer in view.layers]
    weights = list(view.weights)
    if not frobenius_feasible(weights, k):
        raise AssertionError(f"gcd of {weights} does not divide {k}")
    if check:
        problems = frobenius_violations(view, k)
        if problems:
            raise AssertionError("not a Frobenius instance: " + "; ".join(problems))
    result: Set[int] = set()
    while k:
        if len(layers) == 1:
            assert k % weights[0] == 0
            result.update(layers[0][: k // weights[0]])
            return frozenset(result)
        d = 0
        for w in weights[:-1]:
            d = gcd(d, w)
        if k % d == 0:
            layers.pop()
            weights.pop()
            continue
        wl = weights[-1]
        g = gcd(wl, d)
        assert k % g == 0
        b = (k // g) * pow(wl // g, -1, d // g) % (d // g)
        assert b < d and (b * wl - k) % d == 0
        cur = FrobeniusView(layers, weights, view.succ)
        layer_of = cur.layer_of()
        DS = cur.descendants(layers[-1][:b], set(layer_of))
        wDS = cur.weight_of(DS, layer_of)
        assert (k - wDS) % d == 0 and wDS <= k
        result |= DS
        k = (k - wDS) // d
        layers = [[v for v in layer if v not in DS] for layer in layers[:-1]]
        weights = [w // d for w in weights[:-1]]
        if check:
            problems = frobenius_violations(FrobeniusView(layers, weights, view.succ), k)
            if problems:
                raise AssertionError("derived instance is not Frobenius: " + "; ".join(problems))
    return frozenset(result)


# -- the recursive solver ---------------------------------------------------

@dataclass
class FrobeniusStats:
    calls: int = 0
    step1_branches: int = 0
    step2_branches: int = 0
    frobenius_leaves: int = 0
    max_depth: int = 0
    max_layers: int = 0


def _max_height(k: int) -> int:
    # largest h with 2 h^2 <= k
    h = 0
    while 2 * (h + 1) ** 2 <= k:
        h += 1
    return h


class _Solver:
    def __init__(self, dag: WdiInstance, stats: FrobeniusStats, check: bool):
        self.succ = dag.successors()
        self.pred: List[List[int]] = [[] for _ in range(dag.n)]
        for u, vs in enumerate(self.succ):
            for v in vs:
                self.pred[v].append(u)
        self.w = dag.weights
        self.stats = stats
        self.check = check

    def descendants(self, v: int, alive: Set[int], cap: int) -> Optional[Tuple[Set[int], int]]:
        """D(v) inside ``alive`` and its weight, or None once the weight exceeds ``cap``."""
        seen = {v}
        total = self.w[v]
        if total > cap:
            return None
        todo = [v]
        while todo:
            u = todo.pop()
            for x in self.succ[u]:
                if x in alive and x not in seen:
                    seen.add(x)
                    total += self.w[x]
                    if total > cap:
                        return None
                    todo.append(x)
        return seen, total

    def delete(self, v: int, alive: Set[int]) -> None:
        """Remove ``v`` and all of its ascendants."""
        if v not in alive:
            return
        alive.discard(v)
        todo = [v]
        while todo:
            u = todo.pop()
            for p in self.pred[u]:
                if p in alive:
                    alive.discard(p)
                    todo.append(p)

    def heights(self, alive: Set[int]) -> Dict[int, int]:
        height: Dict[int, int] = {}
        for root in sorted(alive):
            if root in height:
                continue
            work = [(root, iter(self.succ[root]))]
            while work:
                v, it = work[-1]
                advanced = False
                for x in it:
                    if x in alive and x not in height:
                        work.append((x, iter(self.succ[x])))
                        advanced = True
                        break
                if not advanced:
                    work.pop()
                    height[v] = 1 + max((height[x] for x in self.succ[v] if x in alive), default=0)
        return height

    def solve(self, alive: Set[int], k: int, depth: int = 0) -> Optional[Set[int]]:
        st = self.stats
        st.calls += 1
        st.max_depth = max(st.max_depth, depth)
        if k == 0:
            return set()
        if k < 0 or sum(self.w[v] for v in alive) < k:
            return None
        alive = set(alive)

        # Step 1: vertices with heavy descendant sets are guessed directly.
        for v in sorted(alive):
            if v not in alive:
                continue
            got = self.descendants(v, alive, k)
            if got is None:
                self.delete(v, alive)
                continue
            D, wD = got
            if 2 * wD * wD > k:
                st.step1_branches += 1
                sub = self.solve(alive - D, k - wD, depth + 1)
                if sub is not None:
                    return D | sub
                self.delete(v, alive)

        # Step 2: layer by height, split by weight, brute-force small sublayers.
        height = self.heights(alive)
        sublayers: Dict[Tuple[int, int], List[int]] = {}
        for v in sorted(alive):
            sublayers.setdefault((height[v], self.w[v]), []).append(v)
        if self.check and height:
            assert max(height.values()) <= _max_height(k), "too many layers"
        for key in sorted(sublayers):
            members = [v for v in sublayers[key] if v in alive]
            if not 0 < len(members) < k:
                continue
            for v in members:
                if v not in alive:
                    continue
                got = self.descendants(v, alive, k)
                assert got is not None
                D, wD = got
                st.step2_branches += 1
                sub = self.solve(alive - D, k - wD, depth + 1)
                if sub is not None:
                    return D | sub
                self.delete(v, alive)

        # Step 3: what is left is a Frobenius instance.
        st.frobenius_leaves += 1
        layers, weights = [], []
        for key in sorted(sublayers):
            members = [v for v in sublayers[key] if v in alive]
            if members:
                assert len(members) >= k
                layers.append(members)
                weights.append(key[1])
        st.max_layers = max(st.max_layers, len(layers))
        if not frobenius_feasible(weights, k):
            return None
        view = FrobeniusView(layers, weights, self.succ)
        return set(frobenius_witness(view, k, check=self.check))


def solve_frobenius(inst: WdiInstance, stats: Optional[FrobeniusStats] = None,
                    check: bool = True) -> Optional[Witness]:
    """Exact solver built on the Frobenius-instance criterion.

    Heavy vertices (2 w(D(v))^2 > k) and sparsely populated weight classes are
    branched on; the remainder is decided by a gcd test.
    """
    if stats is None:
        stats = FrobeniusStats()
    if inst.k == 0:
        return frozenset()
    dag, comps = condense(inst)
    found = _Solver(dag, stats, check).solve(set(range(dag.n)), dag.k)
    if found is None:
        return None
    S = _expand(found, comps)
    assert verify_witness(inst, S), "solver produced an invalid witness"
    return S


# -- guess few sources or few non-sources --------------------------------------

def _subset_sum(items: Sequence[Tuple[int, int]], target: int) -> Optional[List[int]]:
    """Pick items (id, weight) summing to ``target``; Bellman's table with back-pointers."""
    if target < 0:
        return None
    parent: List[Optional[Tuple[int, int]]] = [None] * (target + 1)
    reach = [False] * (target + 1)
    reach[0] = True
    for idx, (_, w) in enumerate(items):
        for s in range(target, w - 1, -1):
            if not reach[s] and reach[s - w]:
                reach[s] = True
                parent[s] = (idx, s - w)
    if not reach[target]:
        return None
    chosen = []
    s = target
    while s:
        idx, prev = parent[s]
        chosen.append(items[idx][0])
        s = prev
    return chosen


def solve_sources(inst: WdiInstance) -> Optional[Witness]:
    """n^{k/2}-style solver for acyclic instances.

    A weight-k closed set has at most k vertices, so either its sources or its
    non-sources number at most k/2.  Few sources: guess them and take their
    descendants.  Few non-sources: guess them (they form a closed set), then
    fill up with vertices whose arcs all point into the guess via subset sum.
    """
    if not is_acyclic(inst):
        raise UsageError("solve_sources needs an acyclic instance; condense first")
    n, k, w = inst.n, inst.k, inst.weights
    if k == 0:
        return frozenset()
    succ_mask = [0] * n
    for u, v in inst.arcs:
        succ_mask[u] |= 1 << v
    reach = [0] * n
    order = [c[0] for c in strongly_connected_components(n, inst.successors())]
    for v in order:  # reverse topological: successors first
        m = 1 << v
        for x in range(n):
            if (succ_mask[v] >> x) & 1:
                m |= reach[x]
        reach[v] = m

    def mask_weight(m: int) -> int:
        total, v = 0, 0
        while m:
            if m & 1:
                total += w[v]
            m >>= 1
            v += 1
        return total

    light = [v for v in range(n) if mask_weight(reach[v]) <= k]
    half = k // 2
    for size in range(1, half + 1):
        for S in combinations(light, size):
            D = 0
            for v in S:
                D |= reach[v]
            if mask_weight(D) == k:
                return frozenset(v for v in range(n) if (D >> v) & 1)
    for size in range(0, half + 1):
        for S in combinations(light, size):
            inner = 0
            for v in S:
                inner |= 1 << v
            closed = all((reach[v] | inner) == inner for v in S)
            if not closed:
                continue
            rest = k - mask_weight(inner)
            if rest < 0:
                continue
            free = [(u, w[u]) for u in range(n)
                    if not (inner >> u) & 1 and (succ_mask[u] | inner) == inner]
            picked = _subset_sum(free, rest)
            if picked is not None:
                return frozenset(list(S) + picked)
    return None


# -- oracle -------------------------------------------------------------------

def solve_bruteforce(inst: WdiInstance, max_n: Optional[int] = 24) -> Optional[Witness]:
    """Exhaustive search over vertex subsets, pruned by weight and by arcs
    between already-decided vertices.  Works on cyclic inputs too."""
    n, k, w = inst.n, inst.k, inst.weights
    if max_n is not None and n > max_n:
        raise CapacityError(f"brute force limited to n <= {max_n}, got {n}")
    succ: List[List[int]] = [[] for _ in range(n)]
    pred: List[List[int]] = [[] for _ in range(n)]
    for u, v in inst.arcs:
        succ[u].append(v)
        pred[v].append(u)
    suffix = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        suffix[v] = suffix[v + 1] + w[v]
    state = [0] * n  # 0 undecided, 1 in, -1 out

    def go(v: int, total: int) -> bool:
        if total == k:
            # remaining vertices may all stay out if nothing forces them in
            ok = True
            for u in range(v, n):
                if any(state[p] == 1 for p in pred[u]):
                    ok = False
                    break
            if ok:
                return True
        if v == n or total + suffix[v] < k:
            return False
        if total + w[v] <= k and all(state[x] != -1 for x in succ[v] if x != v):
            state[v] = 1
            if go(v + 1, total + w[v]):
                return True
        if all(state[p] != 1 for p in pred[v]):
            state[v] = -1
            if go(v + 1, total):
                return True
        state[v] = 0
        return False

    if go(0, 0):
        return frozenset(v for v in range(n) if state[v] == 1)
    return None
