"""Exact-weight CSP instances.

Variables are numbered 1..n.  A constraint argument (a *term*) is either a
variable index or one of the constants ``ONE``/``ZERO``.  Assignments are
Python ints used as bitmasks: variable ``i`` is bit ``i-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .boolfun import BoolFun, ConstraintFamily
from .errors import UsageError

ONE = "T"
ZERO = "F"

Term = Union[int, str]


def is_var(t: Term) -> bool:
    return isinstance(t, int) and not isinstance(t, bool)


def mask_of(variables: Iterable[int]) -> int:
    m = 0
    for v in variables:
        m |= 1 << (v - 1)
    return m


def ones(a: int) -> Tuple[int, ...]:
    out = []
    i = 1
    while a:
        if a & 1:
            out.append(i)
        a >>= 1
        i += 1
    return tuple(out)


def weight(a: int) -> int:
    return bin(a).count("1")


@dataclass(frozen=True)
class Constraint:
    fun: BoolFun
    args: Tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.fun.arity:
            raise UsageError(f"{self.fun.name} expects {self.fun.arity} arguments, got {len(self.args)}")
        for t in self.args:
            if is_var(t):
                if t < 1:
                    raise UsageError(f"variable index {t} < 1")
            elif t not in (ONE, ZERO):
                raise UsageError(f"bad term {t!r}")

    @cached_property
    def _compiled(self) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
        base = 0
        positions: Dict[int, int] = {}
        for j, t in enumerate(self.args):
            if t == ONE:
                base |= 1 << j
            elif is_var(t):
                positions[t] = positions.get(t, 0) | (1 << j)
        return base, tuple((1 << (v - 1), pos) for v, pos in positions.items())

    @cached_property
    def variables(self) -> Tuple[int, ...]:
        """Distinct variables in first-occurrence order."""
        seen: List[int] = []
        for t in self.args:
            if is_var(t) and t not in seen:
                seen.append(t)
        return tuple(seen)

    @cached_property
    def var_mask(self) -> int:
        return mask_of(self.variables)

    def __call__(self, a: int) -> int:
        index, groups = self._compiled
        for bit, pos in groups:
            if a & bit:
                index |= pos
        return (self.fun.table >> index) & 1

    def __str__(self):
        return f"{self.fun.name}(" + ",".join(str(t) if is_var(t) else t for t in self.args) + ")"


def eval_constraint(c: Constraint, a: int) -> int:
    return c(a)


@dataclass(frozen=True)
class Formula:
    n: int
    family: ConstraintFamily
    constraints: Tuple[Constraint, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.n < 0:
            raise UsageError("negative variable count")
        for c in self.constraints:
            if c.fun.name not in self.family or self.family[c.fun.name] != c.fun:
                raise UsageError(f"constraint function {c.fun.name} is not in the family")
            for v in c.variables:
                if v > self.n:
                    raise UsageError(f"variable {v} exceeds n={self.n}")

    @property
    def m(self) -> int:
        return len(self.constraints)

    @cached_property
    def arity(self) -> int:
        return max((len(c.variables) for c in self.constraints), default=0)

    def __call__(self, a: int) -> bool:
        return all(c(a) for c in self.constraints)

    def with_constraints(self, constraints: Iterable[Constraint]) -> "Formula":
        return Formula(self.n, self.family, tuple(constraints))


def satisfies(phi: Formula, a: int) -> bool:
    return phi(a)


def find_violated(phi: Formula, a: int) -> Optional[int]:
    """Index (0-based, file order) of the first constraint ``a`` violates."""
    for i, c in enumerate(phi.constraints):
        if not c(a):
            return i
    return None


@dataclass
class SearchStats:
    leaves: int = 0
    nodes: int = 0


def minimal_extensions(phi: Formula, a: int, k: int,
                       stats: Optional[SearchStats] = None) -> FrozenSet[int]:
    """Minimal satisfying extensions of ``a`` with weight at most ``k``.

    Bounded search tree: repair the first violated constraint by setting one of
    its 0-valued variables, prune above weight ``k``.  A satisfying ``a`` is
    returned as its own (only) extension.
    """
    if stats is None:
        stats = SearchStats()
    if phi(a):
        stats.leaves += 1
        stats.nodes += 1
        return frozenset({a})
    found = set()

    def grow(b: int, w: int) -> None:
        stats.nodes += 1
        i = find_violated(phi, b)
        if i is None:
            stats.leaves += 1
            found.add(b)
            return
        children = [v for v in phi.constraints[i].variables if not (b >> (v - 1)) & 1]
        if w >= k or not children:
            stats.leaves += 1
            return
        for v in children:
            grow(b | (1 << (v - 1)), w + 1)

    grow(a, weight(a))
    minimal = [b for b in found if not any(c != b and c & ~b == 0 for c in found)]
    return frozenset(minimal)


def restrict_vars_to_one(phi: Formula, S: Union[int, Iterable[int]]) -> Formula:
    """Replace every occurrence of a variable in ``S`` by the constant 1."""
    forced = S if isinstance(S, int) else mask_of(S)
    if forced >> phi.n:
        raise UsageError("forced variables outside the formula")
    if not forced:
        return phi
    out = []
    for c in phi.constraints:
        if c.var_mask & forced:
            args = tuple(ONE if is_var(t) and (forced >> (t - 1)) & 1 else t for t in c.args)
            out.append(Constraint(c.fun, args))
        else:
            out.append(c)
    return phi.with_constraints(out)


def compact(phi: Formula, drop: int) -> Tuple[Formula, Tuple[int, ...]]:
    """Renumber ``phi`` without the variables in ``drop`` (which must not occur).

    Returns the new formula and, for each new variable ``j``, its old index at
    position ``j-1``.
    """
    for c in phi.constraints:
        if c.var_mask & drop:
            raise UsageError("cannot drop a variable that still occurs")
    keep = [v for v in range(1, phi.n + 1) if not (drop >> (v - 1)) & 1]
    new_index = {v: j for j, v in enumerate(keep, 1)}
    cons = [Constraint(c.fun, tuple(new_index[t] if is_var(t) else t for t in c.args))
            for c in phi.constraints]
    return Formula(len(keep), phi.family, tuple(cons)), tuple(keep)


def lift(a: int, varmap: Sequence[int]) -> int:
    """Translate an assignment of a compacted formula back to the old numbering."""
    out = 0
    for j, v in enumerate(varmap):
        if (a >> j) & 1:
            out |= 1 << (v - 1)
    return out


@dataclass(frozen=True)
class Branch:
    """One instance produced by 0-valid branching.

    ``residual`` is 0-valid and only mentions the variables outside
    ``forced``; ``varmap`` lifts its assignments back.
    """
    forced: int
    residual: Formula
    target: int
    varmap: Tuple[int, ...]

    def lift(self, a: int) -> int:
        return lift(a, self.varmap) | self.forced


def fix_ones(phi: Formula, forced: int) -> Tuple[Formula, Tuple[int, ...]]:
    """Force ``forced`` to 1 and drop those variables from the universe."""
    return compact(restrict_vars_to_one(phi, forced), forced)


def zero_valid_branches(phi: Formula, k: int) -> List[Branch]:
    if phi(0):
        return [Branch(0, phi, k, tuple(range(1, phi.n + 1)))]
    out = []
    for m in sorted(minimal_extensions(phi, 0, k)):
        residual, varmap = fix_ones(phi, m)
        out.append(Branch(m, residual, k - weight(m), varmap))
    return out


def effective_function(c: Constraint) -> Tuple[BoolFun, Tuple[int, ...]]:
    """The function ``c`` induces on its distinct variables (first-occurrence order)."""
    vs = c.variables
    table = 0
    for x in range(1 << len(vs)):
        a = 0
        for j, v in enumerate(vs):
            if (x >> j) & 1:
                a |= 1 << (v - 1)
        if c(a):
            table |= 1 << x
    return BoolFun(f"{c.fun.name}*", len(vs), table), vs
