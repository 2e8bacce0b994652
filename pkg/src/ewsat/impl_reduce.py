"""Solve exact-weight SAT for NAND2-avoiding families through closed sets.

After 0-valid branching, each residual formula is turned into an implication
graph on its variables by a randomized process; closed sets of that graph are
satisfying assignments, so a weight-k closed set (found by the WDI solver on
the condensed graph) is a solution.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from .boolfun import Regime, classify
from .errors import CapacityError, UsageError
from .formula import Formula, minimal_extensions, weight, zero_valid_branches
from .wdi import FrobeniusStats, WdiInstance, solve_frobenius

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 8


def default_budget(k: int, r: int) -> int:
    return max(1, min(10 ** 6, (k * max(r, 1)) ** k))


@dataclass
class TrialConfig:
    budget: Optional[int] = None  # trials per branch; None means default_budget
    seed: int = 0
    exhaustive: bool = False

    def __post_init__(self):
        if self.budget is not None and self.budget < 1:
            raise UsageError("budget must be at least 1")


@dataclass
class ImplGraph:
    """Implication graph on variables 1..n; ``alive`` excludes deleted vertices."""
    n: int
    alive: Set[int]
    succ: Dict[int, Set[int]]

    @property
    def arcs(self) -> Set[Tuple[int, int]]:
        return {(u, v) for u in self.alive for v in self.succ[u] if v in self.alive}

    def descendants(self, v: int) -> Set[int]:
        seen = {v}
        todo = [v]
        while todo:
            u = todo.pop()
            for x in self.succ[u]:
                if x in self.alive and x not in seen:
                    seen.add(x)
                    todo.append(x)
        return seen


class ChoiceTree:
    """Records which choice sequences of the graph construction were explored.

    Every trial is a root-to-leaf path; choices are drawn among children whose
    subtree still has unexplored leaves, so once the root is exhausted every
    possible graph has been tried.
    """

    def __init__(self):
        self.root = self._node()

    @staticmethod
    def _node():
        return {"arity": None, "kids": {}, "done": False}

    @property
    def exhausted(self) -> bool:
        return self.root["done"]

    def walker(self, pick: Callable[[List[int]], int]):
        return _Walk(self, pick)


class _Walk:
    def __init__(self, tree: ChoiceTree, pick: Callable[[List[int]], int]):
        self.path = [tree.root]
        self.pick = pick

    def __call__(self, options: Sequence[int]) -> int:
        node = self.path[-1]
        m = len(options)
        if node["arity"] is None:
            node["arity"] = m
        assert node["arity"] == m, "graph construction is not deterministic given choices"
        open_ = [i for i in range(m) if not node["kids"].get(i, {"done": False})["done"]]
        i = self.pick(open_)
        child = node["kids"].setdefault(i, ChoiceTree._node())
        self.path.append(child)
        return options[i]

    def finish(self) -> None:
        self.path[-1]["done"] = True
        for node in reversed(self.path[:-1]):
            m = node["arity"]
            if len(node["kids"]) == m and all(c["done"] for c in node["kids"].values()):
                node["done"] = True
            else:
                break


@dataclass
class ImplStats:
    trials: int = 0
    graphs: int = 0
    max_considered: int = 0
    max_graph_arcs: int = 0
    branches: int = 0
    exhausted_branches: int = 0
    frobenius: FrobeniusStats = field(default_factory=FrobeniusStats)


def build_graph_trial(phi: Formula, k: int, choose: Callable[[Sequence[int]], int],
                      stats: Optional[ImplStats] = None) -> ImplGraph:
    """Grow an implication graph until every descendant set satisfies ``phi``.

    ``choose`` picks the arc head among the candidate list; pass
    ``random.Random(s).choice`` for a plain randomized trial.
    """
    if not phi(0):
        raise UsageError("implication graph construction needs a 0-valid formula")
    n = phi.n
    g = ImplGraph(n, set(range(1, n + 1)), {v: set() for v in range(1, n + 1)})
    pred: Dict[int, Set[int]] = {v: set() for v in range(1, n + 1)}
    considered = [0] * (n + 1)

    def delete(v: int) -> None:
        todo = [v]
        g.alive.discard(v)
        while todo:
            u = todo.pop()
            for p in pred[u]:
                if p in g.alive:
                    g.alive.discard(p)
                    todo.append(p)

    changed = True
    while changed:
        changed = False
        for v in sorted(g.alive):
            D = g.descendants(v)
            aD = 0
            for x in D:
                aD |= 1 << (x - 1)
            if phi(aD):
                continue
            considered[v] += 1
            assert considered[v] <= k, f"vertex {v} considered more than k={k} times"
            ext = minimal_extensions(phi, aD, k)
            union = 0
            for b in ext:
                union |= b
            X = [x for x in sorted(g.alive) if x not in D and (union >> (x - 1)) & 1]
            if X:
                x = choose(X)
                g.succ[v].add(x)
                pred[x].add(v)
            else:
                delete(v)
            changed = True
            break
    if stats is not None:
        stats.graphs += 1
        stats.max_considered = max(stats.max_considered, max(considered))
        stats.max_graph_arcs = max(stats.max_graph_arcs, len(g.arcs))
    return g


def graph_to_wdi(g: ImplGraph, k: int) -> Tuple[WdiInstance, List[int]]:
    """Unit-weight WDI instance on the surviving vertices (and their variable labels)."""
    labels = sorted(g.alive)
    pos = {v: i for i, v in enumerate(labels)}
    arcs = {(pos[u], pos[v]) for u, v in g.arcs}
    return WdiInstance(len(labels), frozenset(arcs), (1,) * len(labels), k), labels


def _solve_residual(phi: Formula, k: int, cfg: TrialConfig, budget: int,
                    stats: ImplStats) -> Tuple[Optional[int], bool]:
    """(assignment or None, exhausted) for a 0-valid residual instance."""
    if k == 0:
        return 0, True
    if k > phi.n:
        return None, True
    tree = ChoiceTree()
    trial = 0
    while not tree.exhausted:
        if not cfg.exhaustive and trial >= budget:
            return None, False
        if cfg.exhaustive:
            walk = tree.walker(lambda open_: open_[0])
        else:
            rng = random.Random(cfg.seed ^ trial)
            walk = tree.walker(rng.choice)
        trial += 1
        stats.trials += 1
        g = build_graph_trial(phi, k, walk, stats)
        walk.finish()
        inst, labels = graph_to_wdi(g, k)
        S = solve_frobenius(inst, stats.frobenius)
        if S is None:
            continue
        a = 0
        for i in S:
            a |= 1 << (labels[i] - 1)
        assert phi(a) and weight(a) == k, "closed set is not a satisfying assignment"
        return a, False
    return None, True


@dataclass
class ImplResult:
    assignment: Optional[int]
    certified: bool
    stats: ImplStats


def solve_nand2_avoiding(phi: Formula, k: int, cfg: Optional[TrialConfig] = None,
                         check_regime: bool = True) -> ImplResult:
    """Weight-k solution of ``phi`` (families avoiding NAND2), via branching and trials.

    YES answers are verified.  A NO is certified when every branch either had
    no options or had its whole choice tree explored; otherwise it is Monte Carlo.
    """
    cfg = cfg or TrialConfig()
    if check_regime and classify(phi.family).regime not in (Regime.FPT, Regime.SUBEXPONENTIAL):
        raise UsageError("family represents NAND2; the implication pipeline does not apply")
    if cfg.exhaustive and phi.n > EXHAUSTIVE_MAX_N:
        raise CapacityError(f"exhaustive choice replay limited to n <= {EXHAUSTIVE_MAX_N}")
    stats = ImplStats()
    if k < 0 or k > phi.n:
        return ImplResult(None, True, stats)
    budget = cfg.budget or default_budget(k, phi.family.arity)
    certified = True
    for br in zero_valid_branches(phi, k):
        stats.branches += 1
        a, exhausted = _solve_residual(br.residual, br.target, cfg, budget, stats)
        if a is not None:
            full = br.lift(a)
            assert phi(full) and weight(full) == k
            log.debug("implication pipeline: YES after %d trials", stats.trials)
            return ImplResult(full, True, stats)
        if exhausted:
            stats.exhausted_branches += 1
        else:
            certified = False
    log.debug("implication pipeline: NO (%s) after %d trials",
              "certified" if certified else "monte-carlo", stats.trials)
    return ImplResult(None, certified, stats)
