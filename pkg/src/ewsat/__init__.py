"""Exact-weight Boolean constraint satisfaction."""

from .boolfun import (CONST0, CONST1, BoolFun, Classification, ConstraintFamily, Regime, classify,
                      family, find_restriction, impl, nand, nand_order, represents, restrict)
from .errors import CapacityError, EwsatError, ParseError, UsageError
from .formula import ONE, ZERO, Constraint, Formula
from .solver import Answer, SolveConfig, solve, solve_oracle, verify

__version__ = "0.1.0"

__all__ = [
    "CONST0", "CONST1", "BoolFun", "Classification", "ConstraintFamily", "Regime", "classify",
    "family", "find_restriction", "impl", "nand", "nand_order", "represents", "restrict",
    "CapacityError", "EwsatError", "ParseError", "UsageError",
    "ONE", "ZERO", "Constraint", "Formula",
    "Answer", "SolveConfig", "solve", "solve_oracle", "verify",
]
