"""Moment coordinates over small subsets and the local-consistency polytope.

Vectors y live over D_k = all nonempty subsets of size <= k+1, indexed in
canonical (size, lexicographic) order.  The outer polytope N_k demands that
for every maximal subset D every signed inclusion-exclusion combination

    mu_D(C) = sum_{C <= B <= D} (-1)^{|B|-|C|} y_B        (y_empty = 1)

is nonnegative; these are the joint on/off probabilities a local
distribution on D would assign, so integral points of N_k are exactly the
moment vectors of sets and N_k contains the moment polytope M_k.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np
from scipy import sparse

from .core import DomainError, bits, mask_of, set_of

INDEX_CAP = 1_000_000


class CliqueIndex:
    """Canonical ordering of the nonempty subsets of {0..n-1} with at most
    k+1 elements: all singletons first, then pairs, and so on, each block
    lexicographic by element tuple.

    Attributes: ``masks`` (list of bitmasks), ``pos`` (mask -> position),
    ``sizes`` (numpy array of subset cardinalities).
    """

    def __init__(self, n, k):
        if n < 1 or k < 1 or k > n - 1:
            raise DomainError(f"need n >= 2 and 1 <= k <= n - 1, got n={n}, k={k}")
        total = 0
        from math import comb
        for s in range(1, k + 2):
            total += comb(n, s)
        if total > INDEX_CAP:
            from .core import CapacityError
            raise CapacityError(
                f"subset index would hold {total} entries (cap {INDEX_CAP}); "
                f"reduce n or the interaction order k")
        masks = []
        for s in range(1, k + 2):
            for tup in combinations(range(n), s):
                masks.append(mask_of(tup))
        self.n = n
        self.k = k
        self.masks = masks
        self.pos = {m: i for i, m in enumerate(masks)}
        self.sizes = np.array([m.bit_count() for m in masks], dtype=np.int64)
        self.dim = len(masks)
        self._rows = None

    def maximal_masks(self):
        """Subsets of the top size k+1, in index order."""
        lo = self.dim - _comb(self.n, self.k + 1)
        return self.masks[lo:]

    def rows(self):
        """All (D, C) constraint rows of N_k in canonical order: D runs over
        the maximal subsets, C over all subsets of D including the empty set.

        Each row is (D, C, coords, signs, const) where the row value at y is
        const + sum signs[t] * y[coords[t]], and const is 1.0 exactly when
        C is empty (the y_empty = 1 convention), else 0.0.
        """
        if self._rows is None:
            rows = []
            for d in self.maximal_masks():
                elems = set_of(d)
                for r in range(len(elems) + 1):
                    for ctup in combinations(elems, r):
                        c = mask_of(ctup)
                        coords = []
                        signs = []
                        const = 0.0
                        free = [e for e in elems if not (c >> e) & 1]
                        for t in range(len(free) + 1):
                            for btup in combinations(free, t):
                                b = c | mask_of(btup)
                                sgn = -1.0 if t % 2 else 1.0
                                if b == 0:
                                    const += sgn
                                else:
                                    coords.append(self.pos[b])
                                    signs.append(sgn)
                        rows.append((d, c,
                                     np.array(coords, dtype=np.int64),
                                     np.array(signs),
                                     const))
            self._rows = rows
        return self._rows

    def constraint_matrix(self):
        """Sparse (rows x dim) matrix M and offset vector m0 with
        N_k = { y : M y + m0 >= 0 }."""
        rows = self.rows()
        data, ri, ci = [], [], []
        m0 = np.zeros(len(rows))
        for r, (_, _, coords, signs, const) in enumerate(rows):
            m0[r] = const
            ri.extend([r] * len(coords))
            ci.extend(coords)
            data.extend(signs)
        m = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), self.dim))
        return m, m0

    def superset_matrix(self):
        """Sparse (dim x dim) 0/1 matrix S with (S v)[B] = sum_{C >= B} v[C]
        over subsets in the index (used to turn clique coefficients into
        per-subset objective weights)."""
        data, ri, ci = [], [], []
        for cj, c in enumerate(self.masks):
            b = c
            while b:  # nonempty submasks of c
                ri.append(self.pos[b])
                ci.append(cj)
                data.append(1.0)
                b = (b - 1) & c
        return sparse.csr_matrix((data, (ri, ci)), shape=(self.dim, self.dim))

    def moments_of(self, mask):
        """Moment vector of a set: y_B = 1 iff B is contained in the set."""
        y = np.zeros(self.dim)
        for i, b in enumerate(self.masks):
            if b & ~mask == 0:
                y[i] = 1.0
        return y


def _comb(n, r):
    from math import comb
    return comb(n, r)


def enumerate_dk(n, k):
    """Canonical index of all subsets of size 1..k+1 (see CliqueIndex)."""
    return CliqueIndex(n, k)


def nk_violations(index, y, tol=1e-8):
    """Constraint rows of N_k violated by y, as (D, C, value) triples with
    value < -tol, plus box violations reported with D = C = the subset."""
    y = np.asarray(y, dtype=float)
    if y.shape != (index.dim,):
        raise DomainError(f"y has shape {y.shape}, index dimension is {index.dim}")
    out = []
    for i, m in enumerate(index.masks):
        if y[i] < -tol:
            out.append((m, m, float(y[i])))
        if y[i] > 1.0 + tol:
            out.append((m, m, float(1.0 - y[i])))
    for d, c, coords, signs, const in index.rows():
        val = const + float(signs @ y[coords]) if len(coords) else const
        if val < -tol:
            out.append((d, c, val))
    return out


def in_nk(index, y, tol=1e-8):
    return not nk_violations(index, y, tol)


def mk_membership(index, y, tol=1e-8):
    """Check membership in the exact moment polytope M_k (the convex hull
    of the 2^n set-moment vectors).

    Only integral vectors are supported: the candidate set is read off the
    singleton coordinates and all moments are verified against it.  A
    fractional y raises DomainError (deciding fractional membership needs an
    LP over 2^n vertices and callers doing that should build it explicitly).
    Ground sets are capped at 14 elements.
    """
    if index.n > 14:
        from .core import CapacityError
        raise CapacityError(f"moment membership capped at n=14, got n={index.n}")
    y = np.asarray(y, dtype=float)
    if y.shape != (index.dim,):
        raise DomainError(f"y has shape {y.shape}, index dimension is {index.dim}")
    rounded = np.rint(y)
    if np.any(np.abs(y - rounded) > tol) or np.any((rounded != 0) & (rounded != 1)):
        raise DomainError("mk_membership only decides 0/1 moment vectors")
    mask = 0
    for i in range(index.n):
        if rounded[index.pos[1 << i]] == 1:
            mask |= 1 << i
    return bool(np.array_equal(rounded, index.moments_of(mask)))


def project_simplex(v):
    """Euclidean projection onto the probability simplex (sort and threshold)."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DomainError("simplex projection needs a nonempty vector")
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    cond = u - css / idx > 0
    rho = int(idx[cond][-1])
    theta = css[rho - 1] / rho
    w = np.maximum(v - theta, 0.0)
    return w
