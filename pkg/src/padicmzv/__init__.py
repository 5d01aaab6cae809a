"""
Deligne p-adic multiple zeta values

This package computes p-adic multiple zeta values to a requested p-adic
precision as limits of finite sums of binomial multiple harmonic sums,
together with the word combinatorics, series arithmetic and identity
checks that the computation rests on.
"""
from __future__ import annotations

import contextvars as _ctx

__all__ = [
    "cur_config",
    "cur_table",
    "PrecisionError",
    "WordError",
    "NotGrouplikeError",
    "SubstitutionError",
    "MissingEntryError",
    "ConvergenceError",
    "ConfigError",
    "build_table",
    "mzv_limit",
]

cur_config = _ctx.ContextVar("cur_config")
cur_table = _ctx.ContextVar("cur_table")

del _ctx


class PrecisionError(ArithmeticError):
    "The available p-adic precision cannot certify the result."


class WordError(ValueError):
    "A word or index is malformed, or not of the required shape."


class NotGrouplikeError(ValueError):
    "A series that must be group-like is not."


class SubstitutionError(ValueError):
    "Preconditions of the e1-substitution are violated."


class MissingEntryError(KeyError):
    "A table of zeta values lacks a required index."

    def __init__(self, index):
        super().__init__(index)
        self.index = index

    def __str__(self):
        return f"no table entry for index {self.index!r}"


class ConvergenceError(RuntimeError):
    "Successive truncation levels do not agree well enough."

    def __init__(self, msg, levels=()):
        super().__init__(msg)
        self.levels = list(levels)


class ConfigError(ValueError):
    "Invalid run configuration."


from .engine import build_table, mzv_limit
