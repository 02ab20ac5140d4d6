"""Difference-of-submodular and cardinality-constrained maximization.

Both ride on the saddle solver: the difference F - H enters through
base-polytope points s of H (F(A) - H(A) <= F_nu(A) - s.1_A for any s in
the base polytope, by the greedy/polyhedral characterization of H), and a
cardinality budget enters as one extra nonnegative multiplier on the
singleton moment sum.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .core import DomainError, check_submodular
from .solver import SolverConfig, _Engine

SUBMODULARITY_CHECK_CAP = 12


class DifferenceInstance:
    """Objective A -> f(A) - h(A) with both parts submodular and normalized.

    Submodularity of both parts is verified on construction when n is small
    enough to enumerate (n <= 12); larger instances are taken on trust.
    """

    def __init__(self, f, h, meta=None):
        if f.n != h.n:
            raise DomainError(f"f has n={f.n} but h has n={h.n}")
        if f.n <= SUBMODULARITY_CHECK_CAP:
            if not check_submodular(f):
                raise DomainError("f is not submodular")
            if not check_submodular(h):
                raise DomainError("h is not submodular")
        self.f = f
        self.h = h
        self.n = f.n
        self.meta = dict(meta) if meta else {}

    def value(self, mask):
        return self.f.evaluate(mask) - self.h.evaluate(mask)


def solve_difference(di, config=None):
    """Upper bound max_A f(A) - h(A) and a rounded set.

    Each hull vertex is a joint (nu, s) pair; the oracle picks s by the
    base-polytope greedy ordered by the singleton moments.  With h
    identically zero every s is the zero vector and the run is bit-identical
    to solve(f) at the same seed.

    Returns (dual_bound, best_set, state).
    """
    if config is None:
        config = SolverConfig()
    if config.budget is not None:
        raise DomainError("cardinality budgets are not supported in difference mode")
    state = _Engine(di.f, config, h=di.h).run()
    return state.dual_bound, state.best_set, state


def solve_cardinality(f, m, config=None):
    """Upper bound max over |A| <= m of F(A), plus a rounded set of size <= m.

    Returns (dual_bound, best_set, state).
    """
    if config is None:
        config = SolverConfig()
    if not 0 <= m <= f.n:
        raise DomainError(f"budget {m} outside 0..{f.n}")
    cfg = dataclasses.replace(config, budget=int(m))
    state = _Engine(f, cfg).run()
    return state.dual_bound, state.best_set, state
