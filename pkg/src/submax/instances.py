"""Concrete set-function families and seeded synthetic generators.

All generators use ``numpy.random.default_rng`` (PCG64), which is a
documented, portable bit stream: the same seed yields the same instance
on every platform.
"""

from __future__ import annotations

import heapq
import math

import numpy as np

from .core import DomainError, GroundSet, SetFunction, bits

ENTROPY_STATE_CAP = 1 << 16


class CutInstance(SetFunction):
    """Weighted graph cut F(A) = total weight of edges with exactly one end in A."""

    family = "cut"

    def __init__(self, n, edges, meta=None):
        seen = set()
        clean = []
        for e in edges:
            i, j, w = int(e[0]), int(e[1]), float(e[2])
            if not (0 <= i < j < n):
                raise DomainError(f"cut edge ({i},{j}) is not 0 <= i < j < n={n}")
            if (i, j) in seen:
                raise DomainError(f"duplicate cut edge ({i},{j})")
            if not (w > 0.0) or not math.isfinite(w):
                raise DomainError(f"cut edge ({i},{j}) needs finite weight > 0, got {w}")
            seen.add((i, j))
            clean.append((i, j, w))
        clean.sort()
        self.edges = tuple(clean)
        self.meta = dict(meta) if meta else {}
        super().__init__(GroundSet(n))

    def _raw(self, mask):
        total = 0.0
        for i, j, w in self.edges:
            if ((mask >> i) ^ (mask >> j)) & 1:
                total += w
        return total

    def dense_values(self):
        n = self.n
        masks = np.arange(1 << n, dtype=np.int64)
        vals = np.zeros(1 << n, dtype=np.float64)
        for i, j, w in self.edges:
            vals += w * (((masks >> i) ^ (masks >> j)) & 1)
        return vals

    def batch_evaluate(self, masks):
        """Vectorized evaluation of an explicit mask list (any n; masks may be
        Python ints).  Used by the solver to tabulate thousands of subsets."""
        if not self.edges:
            return np.zeros(len(masks), dtype=np.float64)
        member = np.zeros((len(masks), self.n), dtype=bool)
        for r, m in enumerate(masks):
            for i in bits(m):
                member[r, i] = True
        ii = np.array([e[0] for e in self.edges])
        jj = np.array([e[1] for e in self.edges])
        ww = np.array([e[2] for e in self.edges])
        return (member[:, ii] ^ member[:, jj]) @ ww

    def total_weight(self):
        return float(sum(w for _, _, w in self.edges))


class CoverageInstance(SetFunction):
    """Weighted coverage F(A) = weight of the union of the sets indexed by A."""

    family = "coverage"

    def __init__(self, n, universe, weights, sets, meta=None):
        universe = int(universe)
        if universe < 1:
            raise DomainError(f"coverage universe must be >= 1, got {universe}")
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (universe,):
            raise DomainError(f"coverage needs {universe} weights, got shape {weights.shape}")
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise DomainError("coverage weights must be finite and >= 0")
        if len(sets) != n:
            raise DomainError(f"coverage needs {n} sets, got {len(sets)}")
        masks = []
        for s in sets:
            m = 0
            for u in s:
                u = int(u)
                if not 0 <= u < universe:
                    raise DomainError(f"coverage set element {u} outside universe {universe}")
                m |= 1 << u
            masks.append(m)
        self.universe = universe
        self.weights = weights
        self.set_masks = tuple(masks)
        self.meta = dict(meta) if meta else {}
        super().__init__(GroundSet(n))

    def _raw(self, mask):
        union = 0
        for i in bits(mask):
            union |= self.set_masks[i]
        return sum(self.weights[u] for u in bits(union))


class ModularInstance(SetFunction):
    """Additive function F(A) = sum of per-element weights over A."""

    family = "modular"

    def __init__(self, n, weights, meta=None):
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (n,):
            raise DomainError(f"modular needs {n} weights, got shape {weights.shape}")
        if not np.all(np.isfinite(weights)):
            raise DomainError("modular weights must be finite")
        self.weights = weights
        self.meta = dict(meta) if meta else {}
        super().__init__(GroundSet(n))

    def _raw(self, mask):
        return sum(self.weights[i] for i in bits(mask))

    def dense_values(self):
        n = self.n
        masks = np.arange(1 << n, dtype=np.int64)
        vals = np.zeros(1 << n, dtype=np.float64)
        for i in range(n):
            vals += self.weights[i] * ((masks >> i) & 1)
        return vals


class EntropyInstance(SetFunction):
    """Joint entropy F(A) = H(X_A) of a discrete distribution, in nats.

    ``table`` is the joint probability mass over the product space of the
    variable cardinalities; the product space is capped at 2^16 states.
    """

    family = "entropy"

    def __init__(self, cards, table, meta=None):
        cards = tuple(int(c) for c in cards)
        if any(c < 2 for c in cards):
            raise DomainError("entropy variable cardinalities must be >= 2")
        states = math.prod(cards)
        if states > ENTROPY_STATE_CAP:
            raise DomainError(f"entropy state space {states} exceeds cap {ENTROPY_STATE_CAP}")
        table = np.asarray(table, dtype=np.float64).reshape(cards)
        if np.any(table < 0):
            raise DomainError("entropy table must be non-negative")
        if abs(float(table.sum()) - 1.0) > 1e-12:
            raise DomainError(f"entropy table must sum to 1 within 1e-12, got {table.sum()!r}")
        self.cards = cards
        self.table = table
        self.meta = dict(meta) if meta else {}
        super().__init__(GroundSet(len(cards)))

    def _raw(self, mask):
        drop = tuple(i for i in range(self.n) if not (mask >> i) & 1)
        p = self.table.sum(axis=drop) if drop else self.table
        p = np.asarray(p, dtype=np.float64).ravel()
        p = p[p > 0.0]
        return float(-(p * np.log(p)).sum())


def entropy_value(inst, mask):
    """Joint entropy of the variables in ``mask`` (normalized oracle value)."""
    return inst.evaluate(mask)


# ---------------------------------------------------------------------------
# generators


def _prufer_tree(n, rng):
    """Uniform random labeled tree on n nodes via a Prufer sequence."""
    if n == 2:
        return [(0, 1)]
    seq = [int(v) for v in rng.integers(0, n, size=n - 2)]
    deg = [1] * n
    for v in seq:
        deg[v] += 1
    leaves = [i for i in range(n) if deg[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, v), max(leaf, v)))
        deg[v] -= 1
        if deg[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return edges


def _grid_edges(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    edges.sort()
    return edges


def gen_instance(family, params, seed):
    """Seeded random cut instance of one of the documented graph families.

    family "tree":   params {"n": int >= 2}, uniform random labeled tree.
    family "grid":   params {"rows": int, "cols": int}, 2D lattice.
    family "random": params {"n": int, "p": float}, each of the C(n,2)
                     undirected pairs is an edge independently with
                     probability p (Erdos-Renyi G(n, p); the model choice
                     is recorded in the instance metadata).

    Edge weights are drawn uniformly from (0, 1], assigned to the edge
    list in lexicographic order after the topology is fixed.
    """
    rng = np.random.default_rng(seed)
    params = dict(params)
    try:
        return _gen_instance(family, params, seed, rng)
    except KeyError as exc:
        raise DomainError(f"family {family!r} needs parameter {exc.args[0]!r}") from None


def _gen_instance(family, params, seed, rng):
    if family == "tree":
        n = int(params.pop("n"))
        if n < 2:
            raise DomainError("tree family needs n >= 2")
        topo = sorted(_prufer_tree(n, rng))
    elif family == "grid":
        rows, cols = int(params.pop("rows")), int(params.pop("cols"))
        if rows < 1 or cols < 1 or rows * cols < 2:
            raise DomainError("grid family needs rows, cols >= 1 and at least 2 nodes")
        n = rows * cols
        topo = _grid_edges(rows, cols)
    elif family == "random":
        n = int(params.pop("n"))
        p = float(params.pop("p"))
        if n < 2 or not 0.0 <= p <= 1.0:
            raise DomainError("random family needs n >= 2 and p in [0, 1]")
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        keep = rng.random(len(pairs)) < p
        topo = [e for e, k in zip(pairs, keep) if k]
    else:
        raise DomainError(f"unknown instance family {family!r}")
    if params:
        raise DomainError(f"unused parameters for family {family!r}: {sorted(params)}")
    w = 1.0 - rng.random(len(topo))
    edges = [(i, j, float(wt)) for (i, j), wt in zip(topo, w)]
    meta = {"family": family, "seed": int(seed)}
    if family == "grid":
        meta.update(rows=rows, cols=cols)
    if family == "random":
        meta.update(model="gnp", p=p)
    return CutInstance(n, edges, meta=meta)


def gen_coverage(n, universe, seed, p_member=0.3):
    """Seeded random coverage instance: each set keeps each universe element
    with probability p_member; element weights are uniform on (0, 1]."""
    rng = np.random.default_rng(seed)
    member = rng.random((n, universe)) < p_member
    weights = 1.0 - rng.random(universe)
    sets = [[u for u in range(universe) if member[i, u]] for i in range(n)]
    return CoverageInstance(n, universe, weights, sets,
                            meta={"family": "coverage", "seed": int(seed)})


def gen_entropy(n, seed, card=2):
    """Seeded random joint entropy instance over n variables of equal
    cardinality; the joint table is a normalized exponential draw."""
    rng = np.random.default_rng(seed)
    cards = (card,) * n
    table = rng.exponential(1.0, size=math.prod(cards))
    table = table / table.sum()
    return EntropyInstance(cards, table, meta={"family": "entropy", "seed": int(seed)})


def gen_modular(n, seed, low=-1.0, high=1.0):
    """Seeded random modular function with uniform weights on [low, high)."""
    rng = np.random.default_rng(seed)
    return ModularInstance(n, rng.uniform(low, high, size=n),
                           meta={"family": "modular", "seed": int(seed)})
