"""Shared fixtures and an independent LP reference for the structured bound.

The LP route rebuilds the payoff and every local-consistency row from
scratch (itertools subset enumeration, its own sign bookkeeping, its own
Mobius transform) and hands the system to scipy's solver, so agreement
with the package's own machinery checks two genuinely different
implementations against each other.
"""

import itertools

import numpy as np
import pytest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
from scipy.optimize import linprog

from submax import CutInstance, mask_of


@pytest.fixture
def triangle():
    return CutInstance(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])


@pytest.fixture
def path3():
    return CutInstance(3, [(0, 1, 1.0), (1, 2, 1.0)])


@pytest.fixture
def single_edge():
    return CutInstance(2, [(0, 1, 1.0)])


def mobius_weight(f, subset):
    """Alternating-sum transform of f at a subset, by direct enumeration."""
    total = 0.0
    members = sorted(subset)
    for r in range(len(members) + 1):
        for t in itertools.combinations(members, r):
            total += (-1) ** (len(subset) - r) * f.evaluate(mask_of(t))
    return total


def lp_structure_value(f, nu_items, k):
    """max over the width-k local polytope of the structured payoff.

    nu_items: iterable of (clique_mask, coefficient).  Returns the LP
    optimum; raises if the solver does not converge.
    """
    n = f.n
    subsets = []
    for size in range(1, k + 2):
        subsets.extend(frozenset(c)
                       for c in itertools.combinations(range(n), size))
    pos = {s: i for i, s in enumerate(subsets)}
    item_sets = [(frozenset(i for i in range(n) if (cm >> i) & 1), co)
                 for cm, co in nu_items]
    payoff = np.zeros(len(subsets))
    for i, b in enumerate(subsets):
        kappa = sum(co for cs, co in item_sets if b <= cs)
        if kappa != 0.0:
            payoff[i] = kappa * mobius_weight(f, b)
    rows = []
    rhs = []
    for d in itertools.combinations(range(n), k + 1):
        dset = frozenset(d)
        for r in range(k + 2):
            for c in itertools.combinations(d, r):
                cset = frozenset(c)
                row = np.zeros(len(subsets))
                const = 0.0
                extra = sorted(dset - cset)
                for rr in range(len(extra) + 1):
                    for e in itertools.combinations(extra, rr):
                        b = cset | frozenset(e)
                        sign = (-1.0) ** (len(b) - len(cset))
                        if b:
                            row[pos[b]] += sign
                        else:
                            const += sign
                rows.append(-row)
                rhs.append(const)
    res = linprog(-payoff, A_ub=np.array(rows), b_ub=np.array(rhs),
                  bounds=(0.0, 1.0), method="highs")
    assert res.status == 0, res.message
    return -res.fun
