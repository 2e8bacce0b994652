import pytest
from hypothesis import given, settings, strategies as st

from ewsat.boolfun import family, impl, nand, or2
from ewsat.corpus import dual_horn
from ewsat.errors import UsageError
from ewsat.formula import (ONE, ZERO, Constraint, Formula, SearchStats, compact, effective_function,
                           eval_constraint, find_violated, fix_ones, mask_of, minimal_extensions,
                           ones, restrict_vars_to_one, weight, zero_valid_branches)

from oracles import feasible, minimal_extensions_oracle

I = impl()
FI = family(I)


def chain2():
    return Formula(3, FI, (Constraint(I, (1, 2)), Constraint(I, (1, 3))))


def test_eval_constraint_examples():
    assert eval_constraint(Constraint(I, (1, 2)), mask_of([1])) == 0
    for a in range(4):
        assert eval_constraint(Constraint(I, (1, ONE)), a) == 1
    assert eval_constraint(Constraint(nand(2), (1, 1)), mask_of([1])) == 0
    assert eval_constraint(Constraint(I, (ZERO, 1)), 0) == 1


def test_constraint_validation():
    with pytest.raises(UsageError):
        Constraint(I, (1,))
    with pytest.raises(UsageError):
        Constraint(I, (0, 1))
    with pytest.raises(UsageError):
        Constraint(I, (1, "X"))
    with pytest.raises(UsageError):
        Formula(1, FI, (Constraint(I, (1, 2)),))
    with pytest.raises(UsageError):
        Formula(2, family(or2()), (Constraint(I, (1, 2)),))


def test_find_violated_examples():
    phi = Formula(2, FI, (Constraint(I, (1, 2)),))
    assert find_violated(phi, mask_of([1])) == 0  # first constraint, 0-based
    assert find_violated(phi, mask_of([1, 2])) is None
    assert find_violated(Formula(3, FI, ()), 7) is None


def test_minimal_extensions_examples():
    phi = chain2()
    assert minimal_extensions(phi, mask_of([1]), 3) == {mask_of([1, 2, 3])}
    assert minimal_extensions(phi, mask_of([1]), 2) == frozenset()
    single = Formula(2, FI, (Constraint(I, (1, 2)),))
    for k in range(3):
        assert minimal_extensions(single, 0, k) == {0}


@st.composite
def formulas(draw, fams=(family(impl()), family(dual_horn()), family(or2()), family(nand(2), impl()))):
    F = draw(st.sampled_from(fams))
    n = draw(st.integers(1, 8))
    fs = list(F)
    m = draw(st.integers(0, 8))
    cons = []
    for _ in range(m):
        f = draw(st.sampled_from(fs))
        cons.append(Constraint(f, tuple(draw(st.integers(1, n)) for _ in range(f.arity))))
    return Formula(n, F, tuple(cons))


@settings(max_examples=150, deadline=None)
@given(formulas(), st.data())
def test_minimal_extensions_match_oracle(phi, data):
    a = data.draw(st.integers(0, (1 << phi.n) - 1))
    k = data.draw(st.integers(0, phi.n))
    stats = SearchStats()
    got = minimal_extensions(phi, a, k, stats)
    if phi(a):
        assert got == {a}
        return
    assert got == minimal_extensions_oracle(phi, a, k)
    for b in got:
        assert phi(b) and b & a == a and weight(b) <= k
    r = max((len(c.variables) for c in phi.constraints), default=1)
    assert stats.leaves <= max(r, 1) ** k


@settings(max_examples=150, deadline=None)
@given(formulas(), st.data())
def test_zero_valid_branches_complete(phi, data):
    k = data.draw(st.integers(0, phi.n))
    branches = zero_valid_branches(phi, k)
    for br in branches:
        assert br.residual(0)
        assert br.target == k - weight(br.forced) >= 0
        for a in range(1 << br.residual.n):
            assert br.residual(a) == phi(br.lift(a))
    via_branches = any(feasible(br.residual, br.target) for br in branches)
    assert via_branches == feasible(phi, k)


def test_zero_valid_branches_examples():
    phi = Formula(2, FI, (Constraint(I, (1, 2)),))
    [br] = zero_valid_branches(phi, 2)
    assert br.forced == 0 and br.residual == phi and br.target == 2
    O = or2()
    phi = Formula(2, family(O), (Constraint(O, (1, 2)),))
    brs = zero_valid_branches(phi, 2)
    assert sorted(ones(b.forced) for b in brs) == [(1,), (2,)]
    assert all(b.target == 1 and b.residual(0) for b in brs)
    phi = Formula(1, family(O), (Constraint(O, (1, 1)),))
    # the only extension has weight 1 > k=0, so no branch survives
    assert zero_valid_branches(phi, 0) == []
    assert not feasible(phi, 0)


def test_restrict_vars_to_one():
    phi = Formula(2, FI, (Constraint(I, (1, 2)),))
    psi = restrict_vars_to_one(phi, [1])
    for a in range(4):
        if a & 1:
            assert phi(a) == psi(a)
    assert restrict_vars_to_one(phi, []) == phi
    N = nand(2)
    psi = restrict_vars_to_one(Formula(2, family(N), (Constraint(N, (1, 2)),)), [1, 2])
    assert not any(psi(a) for a in range(4))
    assert psi.constraints[0].args == (ONE, ONE)


def test_compact_and_lift():
    phi = Formula(3, FI, (Constraint(I, (1, 3)),))
    res, varmap = compact(phi, mask_of([2]))
    assert res.n == 2 and varmap == (1, 3)
    assert res.constraints[0].args == (1, 2)
    with pytest.raises(UsageError):
        compact(phi, mask_of([3]))
    res, varmap = fix_ones(phi, mask_of([1]))
    assert res.n == 2 and varmap == (2, 3)
    assert not res(0) and res(mask_of([2]))


def test_effective_function():
    f, vs = effective_function(Constraint(I, (1, ONE)))
    assert f.arity == 1 and f.bits() == "11" and vs == (1,)
    f, _ = effective_function(Constraint(I, (1, 1)))
    assert f.bits() == "11"
    f, vs = effective_function(Constraint(nand(3), (1, 2, ONE)))
    assert f.bits() == nand(2).bits() and vs == (1, 2)
    f, vs = effective_function(Constraint(nand(3), (2, 1, 2)))
    assert vs == (2, 1) and f.bits() == "1110"
