import random
from itertools import combinations

import pytest

from ewsat.boolfun import Regime, family, impl, nand, or2
from ewsat.corpus import (formula_corpus, nand2_avoiding_zoo, nand3_avoiding_zoo, random_formula,
                          three_sat_family)
from ewsat.errors import CapacityError, UsageError
from ewsat.formula import Constraint, Formula, mask_of
from ewsat.solver import CERTIFIED, MONTE_CARLO, SolveConfig, solve, solve_oracle, verify

I, N2, N3 = impl(), nand(2), nand(3)


def chain():
    return Formula(3, family(I), (Constraint(I, (1, 2)), Constraint(I, (2, 3))))


def test_chain_example():
    ans = solve(chain(), 2)
    assert ans.yes and ans.witness == (2, 3)
    assert ans.regime is Regime.SUBEXPONENTIAL and ans.method == "frobenius-pipeline"
    assert ans.certainty == CERTIFIED


def test_k4_nand2():
    phi = Formula(4, family(N2), tuple(Constraint(N2, p) for p in combinations(range(1, 5), 2)))
    ans = solve(phi, 2)
    assert not ans.yes and ans.regime is Regime.CLIQUE and ans.method == "clique-pipeline"


def test_nand3_single():
    phi = Formula(3, family(N3), (Constraint(N3, (1, 2, 3)),))
    assert solve(phi, 3).verdict == "NO"
    ans = solve(phi, 2)
    assert ans.yes and ans.regime is Regime.BRUTE_FORCE and ans.method == "bruteforce"
    via_d = solve(phi, 2, SolveConfig(use_nand_order=True))
    assert via_d.yes and via_d.method == "clique-pipeline"


def test_oracle_examples():
    phi = chain()
    assert not solve_oracle(phi, 4).yes
    assert solve_oracle(phi, 0).yes and solve_oracle(phi, 0).witness == ()
    empty = Formula(3, family(I), ())
    assert all(solve_oracle(empty, k).yes for k in range(4))
    with pytest.raises(CapacityError):
        solve_oracle(Formula(30, family(I), ()), 1)
    with pytest.raises(CapacityError):
        solve(Formula(30, family(I), ()), 1, SolveConfig(method="oracle"))


def test_verify_examples():
    phi = Formula(2, family(I), (Constraint(I, (1, 2)),))
    assert not verify(phi, [1], 1)
    assert verify(phi, [2], 1)
    assert not verify(phi, [2], 2)
    assert verify(phi, mask_of([1, 2]), 2)
    assert not verify(phi, [3], 1)


def test_bad_method():
    with pytest.raises(UsageError):
        SolveConfig(method="portfolio")


def regression_corpus():
    zoos = [nand2_avoiding_zoo(), nand3_avoiding_zoo(),
            [family(N3), three_sat_family(), family(N3, I)]]
    out = []
    for i, zoo in enumerate(zoos):
        out += formula_corpus(100 + i, 40, zoo, 12, 5)
    return out


def test_regression_corpus_agrees_with_oracle():
    regimes = set()
    mismatches = []
    for phi, k in regression_corpus():
        truth = solve_oracle(phi, k)
        ans = solve(phi, k)
        regimes.add(ans.regime)
        if ans.yes:
            assert verify(phi, ans.witness, k)
        if ans.yes != truth.yes:
            assert not ans.yes and ans.certainty == MONTE_CARLO
            mismatches.append((phi, k))
        elif not ans.yes and ans.certainty == CERTIFIED:
            assert not truth.yes
    assert regimes == set(Regime)
    for phi, k in mismatches:
        assert solve(phi, k, SolveConfig(budget=100 * 10 ** 6)).yes


def test_deterministic_given_seed():
    rng = random.Random(8)
    phi = random_formula(rng, family(I, or2()), 11, 14)
    a = solve(phi, 4, SolveConfig(seed=3, budget=5))
    b = solve(phi, 4, SolveConfig(seed=3, budget=5))
    assert a == b and a.stats == b.stats
