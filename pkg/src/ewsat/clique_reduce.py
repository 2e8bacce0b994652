"""Exact-weight SAT for NAND_{d+1}-avoiding families via hyperclique search.

Solutions that contain a small violating sub-assignment are found by forcing
a repairing variable and recursing.  All remaining (d-robust) solutions
satisfy a formula made only of NANDs over the small violators, which is
solved by color coding into d-uniform hyperclique.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .boolfun import ConstraintFamily, constant, nand, represents
from .clique import Hypergraph, find_hyperclique
from .errors import CapacityError, UsageError
from .formula import ZERO, Constraint, Formula, fix_ones, lift, weight

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 8
FALSE1 = constant(0, 1)


def _popcount(m: int) -> int:
    return bin(m).count("1")


def violated_assignment_index(phi: Formula, d: int) -> Dict[int, int]:
    """Support mask of each weight-(<= d) assignment violating some clause -> first such clause (0-based)."""
    index: Dict[int, int] = {}
    for cid, c in enumerate(phi.constraints):
        vs = c.variables
        for size in range(0, min(d, len(vs)) + 1):
            for U in combinations(vs, size):
                m = 0
                for v in U:
                    m |= 1 << (v - 1)
                if m not in index and not c(m):
                    index[m] = cid
    return index


def is_d_robust(phi: Formula, a: int, d: int, index: Optional[Dict[int, int]] = None) -> bool:
    if index is None:
        index = violated_assignment_index(phi, d)
    return not any(m & ~a == 0 for m in index)


def _ordered(index: Dict[int, int]) -> List[Tuple[int, int]]:
    return sorted(index.items(), key=lambda kv: (_popcount(kv[0]), kv[0]))


def robust_family(d: int) -> ConstraintFamily:
    return ConstraintFamily(tuple(nand(j) for j in range(1, d + 1)) + (FALSE1,))


def build_phi_d(phi: Formula, d: int) -> Formula:
    """NAND over the support of every small violating assignment."""
    fam = robust_family(d)
    cons = []
    for m, _ in _ordered(violated_assignment_index(phi, d)):
        vs = [i + 1 for i in range(phi.n) if (m >> i) & 1]
        if vs:
            cons.append(Constraint(fam[f"NAND{len(vs)}"], tuple(vs)))
        else:
            cons.append(Constraint(FALSE1, (ZERO,)))
    return Formula(phi.n, fam, tuple(cons))


@dataclass
class ColorConfig:
    mode: str = "random"  # or "exhaustive"
    seed: int = 0
    delta: float = 0.01
    trials: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ("random", "exhaustive"):
            raise UsageError(f"unknown coloring mode {self.mode!r}")
        if not 0 < self.delta < 1:
            raise UsageError("delta must lie strictly between 0 and 1")


def coloring_count(k: int, delta: float) -> int:
    # a random k-coloring makes a fixed k-set colorful with probability k!/k^k >= e^-k
    return max(1, math.ceil(math.exp(k) * math.log(1 / delta)))


@dataclass
class ColorStats:
    colorings: int = 0
    hyperedges: int = 0
    direct: int = 0
    nodes: int = 0
    max_depth: int = 0


def _full_enumeration(n: int, k: int, cfg: ColorConfig) -> bool:
    if cfg.mode == "exhaustive":
        return True
    # enumerating every coloring is no dearer than sampling, and certifies a NO
    return k ** n <= (cfg.trials or coloring_count(k, cfg.delta))


def _colorings(n: int, k: int, cfg: ColorConfig, rng_key: str):
    if _full_enumeration(n, k, cfg):
        if cfg.mode == "exhaustive" and n > EXHAUSTIVE_MAX_N:
            raise CapacityError(f"exhaustive colorings limited to n <= {EXHAUSTIVE_MAX_N}")
        yield from itertools.product(range(k), repeat=n)
        return
    rng = random.Random(rng_key)
    for _ in range(cfg.trials or coloring_count(k, cfg.delta)):
        yield tuple(rng.randrange(k) for _ in range(n))


def colorcode_solve(psi: Formula, k: int, cfg: Optional[ColorConfig] = None,
                    stats: Optional[ColorStats] = None, rng_key: str = "") -> Tuple[Optional[int], bool]:
    """Weight-k solution of ``psi`` via colorful hypercliques.

    Returns (assignment or None, certified).  Per coloring, an r-set with
    pairwise distinct colors is a hyperedge unless a clause whose variables lie
    in those color classes is violated by setting exactly that r-set to 1.
    """
    cfg = cfg or ColorConfig()
    stats = stats if stats is not None else ColorStats()
    n = psi.n
    if k < 0 or k > n:
        return None, True
    for c in psi.constraints:
        if not c.variables and not c(0):
            return None, True
    if k == 0:
        return (0, True) if psi(0) else (None, True)
    r = max(2, psi.arity)
    if k < r:
        stats.direct += 1
        for S in combinations(range(n), k):
            a = 0
            for i in S:
                a |= 1 << i
            if psi(a):
                return a, True
        return None, True
    # variables that can never be 1 (unary violators) are left out of every part
    dead = 0
    for c in psi.constraints:
        if len(c.variables) == 1 and not c(c.var_mask):
            dead |= c.var_mask
    live = [v for v in range(1, n + 1) if not (dead >> (v - 1)) & 1]
    if len(live) < k:
        return None, True
    clauses = [c for c in psi.constraints if c.variables]
    for coloring in _colorings(n, k, cfg, rng_key):
        stats.colorings += 1
        color = {v: coloring[v - 1] for v in live}
        by_parts: Dict[frozenset, List[Constraint]] = {}
        for c in clauses:
            if all(v in color for v in c.variables):
                by_parts.setdefault(frozenset(color[v] for v in c.variables), []).append(c)
        edges = []
        for e in combinations(range(len(live)), r):
            cols = [color[live[i]] for i in e]
            if len(set(cols)) < r:
                continue
            a = 0
            for i in e:
                a |= 1 << (live[i] - 1)
            ok = True
            for size in range(1, r + 1):
                for sub in combinations(cols, size):
                    for c in by_parts.get(frozenset(sub), ()):
                        if not c(a):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                edges.append(e)
        stats.hyperedges += len(edges)
        K = find_hyperclique(Hypergraph(r, len(live), frozenset(edges)), k)
        if K is None:
            continue
        a = 0
        for i in K:
            a |= 1 << (live[i] - 1)
        if psi(a) and weight(a) == k:
            return a, True
        raise AssertionError("colorful hyperclique does not satisfy the formula")
    return None, _full_enumeration(n, k, cfg)


@dataclass
class CliqueResult:
    assignment: Optional[int]
    certified: bool
    stats: ColorStats = field(default_factory=ColorStats)


def solve_nand_d_avoiding(phi: Formula, k: int, d: int = 2, cfg: Optional[ColorConfig] = None,
                          check_regime: bool = True) -> CliqueResult:
    """Weight-k solution for a family avoiding NAND_{d+1}.

    Branch on each small violator U and each variable x that could repair its
    clause (forcing U+x to 1), then handle d-robust solutions by color coding.
    Subproblems are identified by the forced set, so each is solved once.
    """
    cfg = cfg or ColorConfig()
    if d < 1:
        raise UsageError("d must be positive")
    if check_regime and d + 1 <= max(phi.family.arity, 1) and represents(phi.family, nand(d + 1)):
        raise UsageError(f"family represents NAND{d + 1}")
    stats = ColorStats()
    if k < 0 or k > phi.n:
        return CliqueResult(None, True, stats)
    failed: Dict[int, bool] = {}  # forced mask -> certified
    certified = True

    def rec(forced: int, depth: int) -> Optional[int]:
        nonlocal certified
        t = k - _popcount(forced)
        if forced in failed:
            certified &= failed[forced]
            return None
        stats.nodes += 1
        stats.max_depth = max(stats.max_depth, depth)
        assert depth <= k
        sub, varmap = fix_ones(phi, forced)
        if t == 0:
            found = 0 if sub(0) else None
            sure = True
        else:
            found, sure = None, True
            for m, cid in _ordered(violated_assignment_index(sub, d)):
                c = sub.constraints[cid]
                for x in c.variables:
                    if (m >> (x - 1)) & 1:
                        continue
                    grow = m | (1 << (x - 1))
                    if _popcount(grow) > t:
                        continue
                    got = rec(forced | lift(grow, varmap), depth + 1)
                    if got is not None:
                        return got
            psi = build_phi_d(sub, d)
            found, sure = colorcode_solve(psi, t, cfg, stats, rng_key=f"{cfg.seed}:{forced}")
            if found is not None:
                assert sub(found), "robust-part solution violates the formula"
        if found is not None:
            full = lift(found, varmap) | forced
            assert phi(full) and weight(full) == k
            return full
        failed[forced] = sure
        certified &= sure
        return None

    a = rec(0, 0)
    if a is not None:
        return CliqueResult(a, True, stats)
    return CliqueResult(None, certified, stats)
