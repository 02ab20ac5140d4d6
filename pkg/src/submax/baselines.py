"""Reference maximizers: brute force, double greedy, local search."""

from __future__ import annotations

import numpy as np

from .core import DomainError, set_of, value_table

LOCAL_SEARCH_MOVE_CAP = 100_000


def brute_force_max(f):
    """Exhaustive maximum over all 2^n subsets (n <= 22).

    Returns (value, mask); ties go to the smallest bitmask.
    """
    vals = value_table(f)
    best = int(np.argmax(vals))  # argmax returns the first (smallest) mask
    return float(vals[best]), best


def _nonneg(f, mask):
    v = f.evaluate(mask)
    if v < 0:
        raise DomainError(
            f"negative value {v} at subset {set_of(mask)}; "
            "this algorithm requires a non-negative function")
    return v


def double_greedy(f, mode="deterministic", seed=None):
    """Single-pass double greedy maximization of a non-negative submodular f.

    Maintains X subseteq Y; at element i computes a = F(X+i) - F(X) and
    b = F(Y-i) - F(Y), then either includes i in X or drops it from Y.
    Deterministic mode includes iff a >= b.  Randomized mode includes with
    probability a+/(a+ + b+), and includes outright (consuming no random
    draw) when both clipped values are zero.  Non-negativity is checked
    lazily on every evaluation; a violation names the offending subset.

    Returns (value, mask).
    """
    if mode not in ("deterministic", "randomized"):
        raise DomainError(f"unknown double-greedy mode {mode!r}")
    rng = np.random.default_rng(seed) if mode == "randomized" else None
    n = f.n
    x = 0
    y = f.ground.full_mask
    for i in range(n):
        bit = 1 << i
        a = _nonneg(f, x | bit) - _nonneg(f, x)
        b = _nonneg(f, y & ~bit) - _nonneg(f, y)
        if rng is None:
            take = a >= b
        else:
            ap, bp = max(a, 0.0), max(b, 0.0)
            take = True if ap + bp == 0.0 else rng.random() < ap / (ap + bp)
        if take:
            x |= bit
        else:
            y &= ~bit
    return _nonneg(f, x), x


def local_search(f, epsilon=0.01, seed=None):
    """Approximate local search for non-negative submodular maximization.

    Starts at the best singleton and applies add/remove moves that improve
    the value by a factor of at least 1 + epsilon/n^2 (scan order shuffled
    per sweep by the seeded generator); at a local optimum returns the
    better of the set and its complement.

    Returns (value, mask).
    """
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    n = f.n
    rng = np.random.default_rng(seed)
    best_i, best_v = 0, -np.inf
    for i in range(n):
        v = _nonneg(f, 1 << i)
        if v > best_v:
            best_i, best_v = i, v
    cur = 1 << best_i
    val = best_v
    factor = 1.0 + epsilon / (n * n)
    moves = 0
    improved = True
    while improved:
        improved = False
        order = rng.permutation(n)
        for i in order:
            alt = cur ^ (1 << int(i))
            v = _nonneg(f, alt)
            if v > val and v >= factor * val:
                cur, val = alt, v
                moves += 1
                if moves > LOCAL_SEARCH_MOVE_CAP:
                    raise RuntimeError(
                        f"local search exceeded {LOCAL_SEARCH_MOVE_CAP} moves")
                improved = True
    comp = f.ground.full_mask & ~cur
    comp_v = _nonneg(f, comp)
    if comp_v > val:
        return comp_v, comp
    return val, cur
