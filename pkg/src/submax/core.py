"""Ground-set and set-function primitives.

Subsets of the ground set {0, ..., n-1} are plain integer bitmasks: bit i
set means element i is in the subset.  Every oracle is normalized so the
empty set evaluates to exactly 0.0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS = 1e-9
EXHAUSTIVE_CAP = 14     # hard cap for exhaustive 2^n verification loops
MEMO_DEFAULT_CAP = 20   # memoize oracle values by default up to this n
BRUTE_FORCE_CAP = 22    # hard cap for brute-force maximization


class DomainError(ValueError):
    """An argument lies outside the documented domain of an operation."""


class CapacityError(RuntimeError):
    """An exhaustive routine was asked to exceed its documented size cap."""


def bits(mask):
    """Yield the element indices of a subset bitmask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements):
    """Bitmask of an iterable of element indices."""
    m = 0
    for i in elements:
        m |= 1 << i
    return m


def set_of(mask):
    """Sorted tuple of the elements of a bitmask."""
    return tuple(bits(mask))


@dataclass(frozen=True)
class GroundSet:
    """The ground set {0, ..., n-1}."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"ground set needs an integer n >= 1, got {self.n!r}")

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    def check_subset(self, mask):
        if not isinstance(mask, (int, np.integer)) or mask < 0 or mask > self.full_mask:
            raise DomainError(f"subset {mask!r} is not a bitmask over {self.n} elements")
        return int(mask)

    def subsets(self):
        """Iterate all 2^n subset masks (refuses large ground sets)."""
        if self.n > EXHAUSTIVE_CAP:
            raise CapacityError(f"refusing to enumerate 2^{self.n} subsets")
        return range(1 << self.n)


class SetFunction:
    """Normalized set-function oracle F with F(empty) = 0.

    Subclasses implement ``_raw(mask)``; ``evaluate`` subtracts the raw
    empty-set value once so all instances are normalized.  Values are
    memoized per instance when n <= MEMO_DEFAULT_CAP (or when ``memo`` is
    passed explicitly).  Instances are treated as immutable after
    construction; concurrent ``evaluate`` calls are safe because the memo
    is a single dict keyed by bitmask (a race can only recompute the same
    pure value, never corrupt it).
    """

    family = "abstract"

    def __init__(self, ground, memo=None):
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        self.ground = ground
        if memo is None:
            memo = ground.n <= MEMO_DEFAULT_CAP
        self._memo = {} if memo else None
        self._offset = float(self._raw(0))

    @property
    def n(self):
        return self.ground.n

    def _raw(self, mask):
        raise NotImplementedError

    def evaluate(self, mask):
        """F(mask), normalized so F(0) == 0.0 exactly."""
        mask = self.ground.check_subset(mask)
        cache = self._memo
        if cache is not None:
            hit = cache.get(mask)
            if hit is not None:
                return hit
        val = float(self._raw(mask)) - self._offset
        if cache is not None:
            cache[mask] = val
        return val

    def __repr__(self):
        return f"<{type(self).__name__} family={self.family} n={self.n}>"


class LambdaFunction(SetFunction):
    """Wrap an arbitrary ``mask -> value`` callable as a SetFunction."""

    family = "custom"

    def __init__(self, n, fn, memo=None):
        self._fn = fn
        super().__init__(n, memo=memo)

    def _raw(self, mask):
        return self._fn(mask)


def value_table(f):
    """All 2^n values of ``f`` as an array indexed by bitmask.

    Uses a family-specific vectorized path when the instance provides
    ``dense_values``; otherwise falls back to one oracle call per subset.
    """
    n = f.n
    if n > BRUTE_FORCE_CAP:
        raise CapacityError(f"value table for n={n} exceeds cap {BRUTE_FORCE_CAP}")
    fast = getattr(f, "dense_values", None)
    if fast is not None:
        vals = np.asarray(fast(), dtype=np.float64)
        if vals.shape != (1 << n,):
            raise AssertionError("dense_values returned a malformed table")
        return vals
    return np.fromiter((f.evaluate(m) for m in range(1 << n)),
                       dtype=np.float64, count=1 << n)


def check_submodular(f, tol=EPS):
    """Exhaustively verify diminishing returns on all subsets.

    Checks the equivalent pairwise form: for every S and every x != y
    outside S,  F(S+x) + F(S+y) >= F(S+xy) + F(S) - tol.  This is the same
    condition as the chain form over all A subset B, x outside B, but needs
    only 2^n * n^2 comparisons.  Refuses n > EXHAUSTIVE_CAP.
    """
    n = f.n
    if n > EXHAUSTIVE_CAP:
        raise CapacityError(f"submodularity check capped at n={EXHAUSTIVE_CAP}, got {n}")
    vals = value_table(f)
    masks = np.arange(1 << n, dtype=np.int64)
    for x in range(n):
        bx = 1 << x
        for y in range(x + 1, n):
            by = 1 << y
            base = masks[(masks & (bx | by)) == 0]
            lhs = vals[base | bx] + vals[base | by]
            rhs = vals[base | bx | by] + vals[base]
            if np.any(lhs < rhs - tol):
                return False
    return True


def check_monotone(f, tol=EPS):
    """Exhaustively verify F(A) <= F(A+x) + tol for all A and x outside A."""
    n = f.n
    if n > EXHAUSTIVE_CAP:
        raise CapacityError(f"monotonicity check capped at n={EXHAUSTIVE_CAP}, got {n}")
    vals = value_table(f)
    masks = np.arange(1 << n, dtype=np.int64)
    for x in range(n):
        bx = 1 << x
        base = masks[(masks & bx) == 0]
        if np.any(vals[base | bx] < vals[base] - tol):
            return False
    return True


def base_polytope_greedy(h, w):
    """Edmonds' greedy algorithm: maximize <w, s> over the base polytope of h.

    Elements are sorted by decreasing weight, ties broken by increasing
    index; s assigns each element its marginal gain along that prefix
    chain.  Returns ``(s, value)`` where s is an ndarray of length n and
    value = <w, s> equals the support function of the base polytope at w
    (the Lovasz extension of h at w up to normalization).
    """
    n = h.n
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (n,):
        raise DomainError(f"weight vector must have length {n}, got shape {w.shape}")
    order = np.lexsort((np.arange(n), -w))
    s = np.zeros(n, dtype=np.float64)
    prefix = 0
    prev = 0.0
    for i in order:
        prefix |= 1 << int(i)
        cur = h.evaluate(prefix)
        s[i] = cur - prev
        prev = cur
    return s, float(np.dot(w, s))
