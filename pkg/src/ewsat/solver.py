"""Regime-aware dispatch for exact-weight SAT, plus the enumeration oracle."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterable, Optional, Tuple, Union

from .boolfun import Regime, classify, nand_order
from .clique_reduce import ColorConfig, solve_nand_d_avoiding
from .errors import CapacityError, UsageError
from .formula import Formula, mask_of, ones, weight
from .impl_reduce import TrialConfig, solve_nand2_avoiding

log = logging.getLogger(__name__)

ORACLE_MAX_N = 24

CERTIFIED = "certified"
MONTE_CARLO = "monte-carlo"


@dataclass
class SolveConfig:
    budget: Optional[int] = None
    seed: int = 0
    exhaustive: bool = False  # replay every choice / coloring (tiny n only)
    delta: float = 0.01
    use_nand_order: bool = False
    method: str = "auto"  # auto | oracle | bruteforce

    def __post_init__(self):
        if self.method not in ("auto", "oracle", "bruteforce"):
            raise UsageError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class Answer:
    verdict: str  # "YES" or "NO"
    witness: Optional[Tuple[int, ...]]
    regime: Regime
    method: str
    certainty: str
    stats: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def yes(self) -> bool:
        return self.verdict == "YES"


def verify(phi: Formula, a: Union[int, Iterable[int]], k: int) -> bool:
    if not isinstance(a, int):
        a = mask_of(a)
    if a >> phi.n:
        return False
    return weight(a) == k and phi(a)


def _enumerate(phi: Formula, k: int) -> Optional[int]:
    if k < 0 or k > phi.n:
        return None
    for S in combinations(range(phi.n), k):
        a = 0
        for i in S:
            a |= 1 << i
        if phi(a):
            return a
    return None


def _answer(a: Optional[int], regime: Regime, method: str, certified: bool, **stats) -> Answer:
    if a is not None:
        return Answer("YES", ones(a), regime, method, CERTIFIED, stats)
    return Answer("NO", None, regime, method, CERTIFIED if certified else MONTE_CARLO, stats)


def solve_oracle(phi: Formula, k: int, max_n: Optional[int] = ORACLE_MAX_N) -> Answer:
    """Try every weight-k assignment."""
    if max_n is not None and phi.n > max_n:
        raise CapacityError(f"oracle limited to n <= {max_n}, got n={phi.n}")
    return _answer(_enumerate(phi, k), classify(phi.family).regime, "oracle", True)


def solve(phi: Formula, k: int, config: Optional[SolveConfig] = None) -> Answer:
    cfg = config or SolveConfig()
    regime = classify(phi.family).regime
    if cfg.method == "oracle":
        return solve_oracle(phi, k)
    if cfg.method == "bruteforce":
        return _answer(_enumerate(phi, k), regime, "bruteforce", True)

    if regime in (Regime.FPT, Regime.SUBEXPONENTIAL):
        res = solve_nand2_avoiding(phi, k, TrialConfig(cfg.budget, cfg.seed, cfg.exhaustive),
                                   check_regime=False)
        st = res.stats
        return _answer(res.assignment, regime, "frobenius-pipeline", res.certified,
                       trials=st.trials, branches=st.branches, graphs=st.graphs,
                       max_considered=st.max_considered, recursion_nodes=st.frobenius.calls)
    d = None
    if regime is Regime.CLIQUE:
        d = 2
    elif cfg.use_nand_order:
        d = nand_order(phi.family)
    if d:
        mode = "exhaustive" if cfg.exhaustive else "random"
        res = solve_nand_d_avoiding(phi, k, d, ColorConfig(mode, cfg.seed, cfg.delta),
                                    check_regime=False)
        st = res.stats
        return _answer(res.assignment, regime, "clique-pipeline", res.certified,
                       colorings=st.colorings, recursion_nodes=st.nodes, d=d, trials=st.colorings)
    return _answer(_enumerate(phi, k), regime, "bruteforce", True)
