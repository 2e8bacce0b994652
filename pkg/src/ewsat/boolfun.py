"""Boolean functions as truth tables, restrictions, and regime classification.

Truth tables are stored as Python ints: bit ``m`` of ``table`` is the value of
the function on the row whose argument ``j+1`` equals bit ``j`` of ``m``
(argument 1 is the least significant bit).

An argument map (``ArgMap``) is a tuple with one entry per argument of the
source function: a positive int ``i`` plugs in argument ``i`` of the target,
``CONST0`` plugs in 0 and ``CONST1`` plugs in 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np

from .errors import CapacityError, UsageError

R_MAX = 10

CONST0 = 0
CONST1 = -1

ArgMap = Tuple[int, ...]


@dataclass(frozen=True)
class BoolFun:
    name: str = field(compare=False)
    arity: int
    table: int

    def __post_init__(self):
        if self.arity < 0:
            raise UsageError(f"negative arity for {self.name}")
        if self.table < 0 or self.table >> (1 << self.arity):
            raise UsageError(f"table of {self.name} does not fit arity {self.arity}")

    @classmethod
    def from_bits(cls, name: str, bits: str) -> "BoolFun":
        """Build from a '0'/'1' string; character ``m`` is table index ``m``."""
        n = len(bits)
        arity = n.bit_length() - 1
        if n == 0 or (1 << arity) != n or set(bits) - {"0", "1"}:
            raise UsageError(f"bad truth table {bits!r} for {name}")
        table = 0
        for m, ch in enumerate(bits):
            if ch == "1":
                table |= 1 << m
        return cls(name, arity, table)

    @classmethod
    def from_callable(cls, name: str, arity: int, fn: Callable[..., object]) -> "BoolFun":
        table = 0
        for m in range(1 << arity):
            if fn(*((m >> j) & 1 for j in range(arity))):
                table |= 1 << m
        return cls(name, arity, table)

    def bits(self) -> str:
        return "".join("1" if (self.table >> m) & 1 else "0" for m in range(1 << self.arity))

    def value(self, index: int) -> int:
        return (self.table >> index) & 1

    def __call__(self, *args: int) -> int:
        return eval_fun(self, args)

    def renamed(self, name: str) -> "BoolFun":
        return BoolFun(name, self.arity, self.table)

    def __repr__(self):
        return f"BoolFun({self.name!r}, {self.arity}, {self.bits()!r})"


def eval_fun(f: BoolFun, args: Sequence[int]) -> int:
    if len(args) != f.arity:
        raise UsageError(f"{f.name} takes {f.arity} arguments, got {len(args)}")
    index = 0
    for j, bit in enumerate(args):
        if bit:
            index |= 1 << j
    return f.value(index)


def index_of(bits: Iterable[int]) -> int:
    """Table index of the row given by a 0/1 sequence (LSB first)."""
    index = 0
    for j, bit in enumerate(bits):
        if bit:
            index |= 1 << j
    return index


def impl() -> BoolFun:
    return BoolFun.from_bits("IMPL", "1011")


def nand(d: int) -> BoolFun:
    if d < 1:
        raise UsageError("NAND needs at least one argument")
    return BoolFun(f"NAND{d}", d, ((1 << (1 << d)) - 1) ^ (1 << ((1 << d) - 1)))


def or2() -> BoolFun:
    return BoolFun.from_bits("OR2", "0111")


def and2() -> BoolFun:
    return BoolFun.from_bits("AND2", "0001")


def eq2() -> BoolFun:
    return BoolFun.from_bits("EQ2", "1001")


def constant(value: int, arity: int = 1) -> BoolFun:
    name = "TRUE" if value else "FALSE"
    return BoolFun(name, arity, (1 << (1 << arity)) - 1 if value else 0)


def is_zero_valid(f: BoolFun) -> bool:
    return bool(f.table & 1)


def is_one_valid(f: BoolFun) -> bool:
    return bool(f.value((1 << f.arity) - 1))


def _check_map(f: BoolFun, m: ArgMap, surjective: bool) -> int:
    if len(m) != f.arity:
        raise UsageError(f"argument map {m} has length {len(m)}, {f.name} has arity {f.arity}")
    used = set()
    for entry in m:
        if entry not in (CONST0, CONST1):
            if not isinstance(entry, int) or entry < 1:
                raise UsageError(f"bad argument map entry {entry!r}")
            used.add(entry)
    s = max(used, default=0)
    if surjective and used != set(range(1, s + 1)):
        raise UsageError(f"argument map {m} does not use every target argument")
    return s


def restrict(f: BoolFun, m: ArgMap, arity: Optional[int] = None, *, surjective: bool = True,
             name: Optional[str] = None) -> BoolFun:
    """The function obtained by plugging target arguments / constants into ``f``."""
    s = _check_map(f, m, surjective)
    if arity is not None:
        if arity < s:
            raise UsageError(f"argument map {m} refers past arity {arity}")
        s = arity
    ones = 0
    masks = [0] * (s + 1)
    for j, entry in enumerate(m):
        if entry == CONST1:
            ones |= 1 << j
        elif entry != CONST0:
            masks[entry] |= 1 << j
    table = 0
    for x in range(1 << s):
        index = ones
        for i in range(1, s + 1):
            if (x >> (i - 1)) & 1:
                index |= masks[i]
        if f.value(index):
            table |= 1 << x
    return BoolFun(name or f"{f.name}|{format_argmap(m)}", s, table)


def format_argmap(m: ArgMap) -> str:
    def one(entry):
        if entry == CONST0:
            return "0"
        if entry == CONST1:
            return "1"
        return f"x{entry}"
    return "(" + ",".join(one(e) for e in m) + ")"


# Restriction search.  Map codes: 0..s-1 are target arguments 1..s, s is
# constant 0 and s+1 constant 1.  Reading the codes as digits of a base-(s+2)
# number with argument 1 most significant, numeric order is the lexicographic
# order GArg1 < ... < GArgs < Const0 < Const1.

_CHUNK = 1 << 15
_SMALL = 1 << 14


@lru_cache(maxsize=64)
def _digit_block(r: int, base: int, lo: int, hi: int) -> np.ndarray:
    ids = np.arange(lo, hi, dtype=np.int64)
    digits = np.empty((hi - lo, r), dtype=np.int8)
    for j in range(r):
        digits[:, j] = (ids // base ** (r - 1 - j)) % base
    return digits


def _code_values(s: int) -> np.ndarray:
    # value[c, x]: bit plugged in by code c on target row x
    vals = np.zeros((s + 2, 1 << s), dtype=np.int64)
    rows = np.arange(1 << s)
    for c in range(s):
        vals[c] = (rows >> c) & 1
    vals[s + 1] = 1
    return vals


@lru_cache(maxsize=256)
def _index_matrix(r: int, s: int, base: int, surjective: bool):
    """All maps in lexicographic order, and the f-row each one reads per target row."""
    digits = _digit_block(r, base, 0, base ** r)
    if surjective and s:
        ok = np.ones(len(digits), dtype=bool)
        for c in range(s):
            ok &= (digits == c).any(axis=1)
        digits = digits[ok]
    vals = _code_values(s)
    shifts = np.int64(1) << np.arange(r, dtype=np.int64)
    index = (vals[digits] * shifts[None, :, None]).sum(axis=1)
    return digits, index


def _search(f: BoolFun, g: BoolFun, base: int, surjective: bool) -> Optional[ArgMap]:
    r, s = f.arity, g.arity
    total = base ** r
    ftab = np.array([f.value(m) for m in range(1 << r)], dtype=np.int8)
    gtab = np.array([g.value(x) for x in range(1 << s)], dtype=np.int8)
    if total <= _SMALL:
        digits, index = _index_matrix(r, s, base, surjective)
        hits = np.flatnonzero((ftab[index] == gtab).all(axis=1))
        if len(hits):
            return tuple(_decode(int(c), s) for c in digits[hits[0]])
        return None
    # large search spaces: chunked, discarding maps at their first mismatching row
    vals = _code_values(s)
    shifts = np.int64(1) << np.arange(r, dtype=np.int64)
    for lo in range(0, total, _CHUNK):
        hi = min(total, lo + _CHUNK)
        digits = _digit_block.__wrapped__(r, base, lo, hi)
        cand = np.arange(hi - lo)
        if surjective and s:
            ok = np.ones(hi - lo, dtype=bool)
            for c in range(s):
                ok &= (digits == c).any(axis=1)
            cand = cand[ok]
        sub = digits[cand]
        for x in range(1 << s):
            if not len(cand):
                break
            index = (vals[sub, x] * shifts).sum(axis=1)
            keep = ftab[index] == gtab[x]
            cand = cand[keep]
            sub = sub[keep]
        if len(cand):
            return tuple(_decode(int(c), s) for c in digits[cand[0]])
    return None


def _decode(code: int, s: int) -> int:
    if code < s:
        return code + 1
    return CONST0 if code == s else CONST1


@lru_cache(maxsize=1 << 16)
def find_restriction(f: BoolFun, g: BoolFun, allow_const1: bool = True, *,
                     surjective: bool = True) -> Optional[ArgMap]:
    """Lexicographically first argument map turning ``f`` into ``g``, or None.

    With ``allow_const1=False`` only 0-restrictions are searched.  With
    ``surjective=False`` target arguments may go unused.
    """
    if f.arity > R_MAX:
        raise CapacityError(f"arity {f.arity} of {f.name} exceeds R_MAX={R_MAX}")
    if surjective and g.arity > f.arity:
        return None
    base = g.arity + (2 if allow_const1 else 1)
    return _search(f, g, base, surjective)


@dataclass(frozen=True)
class ConstraintFamily:
    functions: Tuple[BoolFun, ...]

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if not self.functions:
            raise UsageError("constraint family must be nonempty")
        names = [f.name for f in self.functions]
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate function names in family: {names}")

    @property
    def arity(self) -> int:
        return max(f.arity for f in self.functions)

    def __getitem__(self, name: str) -> BoolFun:
        for f in self.functions:
            if f.name == name:
                return f
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(f.name == name for f in self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __len__(self):
        return len(self.functions)

    def extended(self, *fs: BoolFun) -> "ConstraintFamily":
        extra = [f for f in fs if f.name not in self]
        return ConstraintFamily(self.functions + tuple(extra))


def family(*fs: BoolFun) -> ConstraintFamily:
    return ConstraintFamily(tuple(fs))


def represents(F: ConstraintFamily, g: BoolFun, allow_const1: bool = True
               ) -> Optional[Tuple[BoolFun, ArgMap]]:
    for f in F:
        m = find_restriction(f, g, allow_const1)
        if m is not None:
            return f, m
    return None


class Regime(enum.Enum):
    FPT = "FPT"
    SUBEXPONENTIAL = "Subexponential"
    CLIQUE = "Clique"
    BRUTE_FORCE = "BruteForce"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Classification:
    regime: Regime
    target: Optional[BoolFun] = None
    witness: Optional[BoolFun] = None
    argmap: Optional[ArgMap] = None

    def replays(self) -> bool:
        if self.target is None:
            return self.witness is None
        return restrict(self.witness, self.argmap, self.target.arity) == self.target


def classify(F: ConstraintFamily) -> Classification:
    for regime, target in ((Regime.BRUTE_FORCE, nand(3)),
                           (Regime.CLIQUE, nand(2)),
                           (Regime.SUBEXPONENTIAL, impl())):
        hit = represents(F, target)
        if hit is not None:
            return Classification(regime, target, hit[0], hit[1])
    return Classification(Regime.FPT)


def nand_order(F: ConstraintFamily) -> int:
    """Largest d >= 2 with NAND_d represented by ``F`` (0 if none)."""
    for d in range(F.arity, 1, -1):
        if represents(F, nand(d)) is not None:
            return d
    return 0
