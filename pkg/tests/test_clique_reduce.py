from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from ewsat.boolfun import family, nand
from ewsat.clique_reduce import (ColorConfig, build_phi_d, coloring_count, colorcode_solve, is_d_robust,
                                 solve_nand_d_avoiding, violated_assignment_index)
from ewsat.corpus import formula_corpus, nand3_avoiding_zoo
from ewsat.errors import CapacityError, UsageError
from ewsat.formula import Constraint, Formula, mask_of, weight

from oracles import feasible, popcount

N2 = nand(2)


def nand2_formula(n, pairs):
    return Formula(n, family(N2), tuple(Constraint(N2, p) for p in pairs))


def test_violated_index_example():
    phi = nand2_formula(2, [(1, 2)])
    assert violated_assignment_index(phi, 2) == {mask_of([1, 2]): 0}
    assert violated_assignment_index(phi, 1) == {}
    assert is_d_robust(phi, mask_of([1]), 2)
    assert not is_d_robust(phi, mask_of([1, 2]), 2)


def index_oracle(phi, d):
    out = {}
    for U in range(1 << phi.n):
        if popcount(U) > d:
            continue
        for cid, c in enumerate(phi.constraints):
            if U & ~c.var_mask == 0 and not c(U):
                out.setdefault(U, cid)
                break
    return out


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3))
def test_violated_index_matches_oracle(seed, d):
    [(phi, _)] = formula_corpus(seed, 1, nand3_avoiding_zoo(), 7, 3)
    assert violated_assignment_index(phi, d) == index_oracle(phi, d)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3))
def test_phi_d_holds_exactly_on_robust_assignments(seed, d):
    # phi_d forbids precisely the supports of small violators
    [(phi, _)] = formula_corpus(seed, 1, nand3_avoiding_zoo(), 7, 3)
    index = violated_assignment_index(phi, d)
    psi = build_phi_d(phi, d)
    for a in range(1 << phi.n):
        assert psi(a) == is_d_robust(phi, a, d, index)
        if phi(a):
            assert psi(a) or not is_d_robust(phi, a, d, index)


def test_colorcode_examples():
    psi = nand2_formula(3, [(1, 2)])
    a, sure = colorcode_solve(psi, 2, ColorConfig("exhaustive"))
    assert a is not None and psi(a) and weight(a) == 2
    K = nand2_formula(4, list(combinations(range(1, 5), 2)))
    assert colorcode_solve(K, 2, ColorConfig("exhaustive")) == (None, True)
    assert colorcode_solve(K, 2) == (None, True)  # small enough to enumerate all colorings


def test_config_validation():
    with pytest.raises(UsageError):
        ColorConfig("nope")
    with pytest.raises(UsageError):
        ColorConfig(delta=1.5)
    with pytest.raises(CapacityError):
        colorcode_solve(nand2_formula(9, [(1, 2)]), 3, ColorConfig("exhaustive"))


def test_coloring_count():
    assert coloring_count(3, 0.01) == 93  # ceil(e^3 * ln 100)
    assert coloring_count(1, 0.5) == 2


def test_k4_nand2_is_certified_no():
    phi = nand2_formula(4, list(combinations(range(1, 5), 2)))
    res = solve_nand_d_avoiding(phi, 2)
    assert res.assignment is None and res.certified
    res = solve_nand_d_avoiding(phi, 1)
    assert res.assignment == mask_of([1])


def test_regime_guard():
    N3 = nand(3)
    phi = Formula(3, family(N3), (Constraint(N3, (1, 2, 3)),))
    with pytest.raises(UsageError):
        solve_nand_d_avoiding(phi, 2, 2)
    res = solve_nand_d_avoiding(phi, 2, 3)
    assert res.assignment is not None and weight(res.assignment) == 2
    assert solve_nand_d_avoiding(phi, 3, 3).assignment is None


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_exhaustive_mode_matches_enumeration(seed):
    [(phi, k)] = formula_corpus(seed, 1, nand3_avoiding_zoo(), 7, 4)
    res = solve_nand_d_avoiding(phi, k, 2, ColorConfig("exhaustive", seed))
    assert (res.assignment is not None) == feasible(phi, k)
    assert res.certified
    if res.assignment is not None:
        assert phi(res.assignment) and weight(res.assignment) == k


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_random_mode_is_sound(seed):
    [(phi, k)] = formula_corpus(seed, 1, nand3_avoiding_zoo(), 10, 4)
    res = solve_nand_d_avoiding(phi, k, 2, ColorConfig(seed=seed, trials=2))
    if res.assignment is not None:
        assert phi(res.assignment) and weight(res.assignment) == k
    elif res.certified:
        assert not feasible(phi, k)


def test_recursion_depth_bounded_by_k():
    for phi, k in formula_corpus(9, 30, nand3_avoiding_zoo(), 9, 4):
        res = solve_nand_d_avoiding(phi, k)
        assert res.stats.max_depth <= k


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_phi_d_solutions_satisfy_phi(seed):
    # for NAND3-avoiding phi, avoiding every small violator means satisfying phi
    [(phi, _)] = formula_corpus(seed, 1, nand3_avoiding_zoo(), 9, 3)
    psi = build_phi_d(phi, 2)
    for a in range(1 << phi.n):
        if psi(a):
            assert phi(a)
