"""Directed and decomposable graph upper bounds on submodular functions.

A DAG G with parent sets pi_i induces the bound

    F_G(A) = sum over i in A of  F(A * (pi_i + i)) - F(A * pi_i)

(* is intersection) which dominates F pointwise.  For decomposable
(triangulated) graphs the same bound telescopes into the junction-tree
form  sum_C F(C * A) - sum_seps F(S * A), equivalently a signed
coefficient vector ("nu") over the small subsets of the ground set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DomainError, SetFunction, bits, mask_of, set_of


class NotTriangulatedError(DomainError):
    """Graph is not chordal; ``witness`` holds a chordless cycle (length >= 4)."""

    def __init__(self, witness):
        self.witness = list(witness)
        super().__init__(f"graph is not triangulated: chordless cycle {self.witness}")


# ---------------------------------------------------------------------------
# DAGs


@dataclass(frozen=True)
class Dag:
    """Directed acyclic graph over {0..n-1}: per-node parent bitmasks plus a
    topological order (parents always precede their children)."""

    n: int
    parents: tuple
    topo: tuple

    def __post_init__(self):
        if len(self.parents) != self.n or sorted(self.topo) != list(range(self.n)):
            raise DomainError("parents/topo must both cover exactly n nodes")
        seen = 0
        for v in self.topo:
            p = self.parents[v]
            if p & ~seen:
                raise DomainError(f"node {v} has parents after it in topo order")
            if (p >> v) & 1:
                raise DomainError(f"node {v} is its own parent")
            seen |= 1 << v

    @classmethod
    def from_parents(cls, n, parent_masks):
        """Build with a deterministic (smallest-index-first) topological sort."""
        parent_masks = tuple(int(p) for p in parent_masks)
        for v, p in enumerate(parent_masks):
            if p < 0 or p >> n:
                raise DomainError(f"node {v} has a parent outside the ground set")
        indeg = [p.bit_count() for p in parent_masks]
        children = [[] for _ in range(n)]
        for v, p in enumerate(parent_masks):
            for u in bits(p):
                children[u].append(v)
        import heapq
        ready = [v for v in range(n) if indeg[v] == 0]
        heapq.heapify(ready)
        topo = []
        while ready:
            u = heapq.heappop(ready)
            topo.append(u)
            for w in children[u]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(ready, w)
        if len(topo) != n:
            raise DomainError("parent sets contain a directed cycle")
        return cls(n, parent_masks, tuple(topo))

    def closure_mask(self, v):
        """Ancestors of v including v."""
        out = 1 << v
        stack = [v]
        while stack:
            u = stack.pop()
            for w in bits(self.parents[u]):
                if not (out >> w) & 1:
                    out |= 1 << w
                    stack.append(w)
        return out


def dag_bound(f, g, mask):
    """Evaluate the DAG-projection upper bound F_G at a subset mask."""
    if f.n != g.n:
        raise DomainError(f"function is over n={f.n} but graph has n={g.n}")
    total = 0.0
    for i in bits(mask):
        p = g.parents[i] & mask
        total += f.evaluate(p | (1 << i)) - f.evaluate(p)
    return total


def is_ancestral(g, mask):
    """True when every parent of every member of ``mask`` is in ``mask``."""
    return all(g.parents[i] & ~mask == 0 for i in bits(mask))


def random_dag(n, rng, p=0.4, max_parents=3):
    """Random DAG: random permutation as topological order, each earlier node
    kept as a parent with probability p, capped at ``max_parents`` parents."""
    order = [int(v) for v in rng.permutation(n)]
    parents = [0] * n
    for t, v in enumerate(order):
        cand = [order[s] for s in range(t) if rng.random() < p]
        if len(cand) > max_parents:
            pick = rng.choice(len(cand), size=max_parents, replace=False)
            cand = [cand[i] for i in sorted(int(x) for x in pick)]
        parents[v] = mask_of(cand)
    return Dag(n, tuple(parents), tuple(order))


def is_directed_tree(g):
    """True when g is a connected directed tree (one root, unique parents)."""
    roots = [v for v in range(g.n) if g.parents[v] == 0]
    if len(roots) != 1:
        return False
    if any(g.parents[v].bit_count() > 1 for v in range(g.n)):
        return False
    seen = 1 << roots[0]
    for v in g.topo:
        p = g.parents[v]
        if p and not (p & seen):
            return False
        seen |= 1 << v
    return seen == (1 << g.n) - 1


def reroot_tree(g, new_root):
    """Reorient a directed tree away from ``new_root`` (same skeleton)."""
    if not 0 <= new_root < g.n:
        raise DomainError(f"root {new_root} outside ground set of size {g.n}")
    if not is_directed_tree(g):
        raise DomainError("reroot_tree needs a connected directed tree")
    adj = [0] * g.n
    for v in range(g.n):
        for u in bits(g.parents[v]):
            adj[v] |= 1 << u
            adj[u] |= 1 << v
    parents = [0] * g.n
    seen = 1 << new_root
    frontier = [new_root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in bits(adj[u] & ~seen):
                parents[w] = 1 << u
                seen |= 1 << w
                nxt.append(w)
        frontier = nxt
    return Dag.from_parents(g.n, parents)


def random_directed_tree(n, rng):
    """Uniform labeled tree skeleton, rooted at a random node."""
    from .instances import _prufer_tree
    edges = _prufer_tree(n, rng) if n >= 2 else []
    root = int(rng.integers(0, n))
    adj = [0] * n
    for i, j in edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    parents = [0] * n
    seen = 1 << root
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in bits(adj[u] & ~seen):
                parents[w] = 1 << u
                seen |= 1 << w
                nxt.append(w)
        frontier = nxt
    return Dag.from_parents(n, parents)


# ---------------------------------------------------------------------------
# chordality, junction trees


def _mcs_order(adj):
    """Maximum cardinality search; returns the elimination order (a perfect
    elimination order iff the graph is chordal).  Ties pick the smallest index."""
    n = len(adj)
    weight = [0] * n
    selected = [False] * n
    selection = []
    for _ in range(n):
        best = -1
        for u in range(n):
            if not selected[u] and (best < 0 or weight[u] > weight[best]):
                best = u
        selected[best] = True
        selection.append(best)
        for w in bits(adj[best]):
            if not selected[w]:
                weight[w] += 1
    selection.reverse()
    return selection


def _chordless_cycle(adj, v, x, y):
    """Shortest x..y path avoiding N[v] - {x, y}, closed through v.

    The path is shortest in the reduced graph, hence induced; none of its
    interior vertices neighbor v, so [v, x, ..., y] is a chordless cycle of
    length >= 4 whenever the path exists.
    """
    n = len(adj)
    blocked = (adj[v] | (1 << v)) & ~((1 << x) | (1 << y))
    prev = {x: None}
    frontier = [x]
    while frontier and y not in prev:
        nxt = []
        for u in frontier:
            for w in bits(adj[u] & ~blocked):
                if w not in prev:
                    prev[w] = u
                    nxt.append(w)
        frontier = nxt
    if y not in prev:
        return None
    path = []
    cur = y
    while cur is not None:
        path.append(cur)
        cur = prev[cur]
    path.reverse()
    if len(path) < 3:
        return None
    return [v] + path


def _find_witness(adj):
    """Some chordless cycle of length >= 4 in a non-chordal graph."""
    n = len(adj)
    for v in range(n):
        nb = list(bits(adj[v]))
        for i, x in enumerate(nb):
            for y in nb[i + 1:]:
                if not (adj[x] >> y) & 1:
                    cyc = _chordless_cycle(adj, v, x, y)
                    if cyc is not None:
                        return cyc
    raise AssertionError("no chordless cycle found in a non-chordal graph")


def peo_and_check(adj):
    """Perfect elimination order for a triangulated graph.

    Returns ``(peo, pi)`` where peo lists vertices in elimination order and
    pi[v] is the bitmask of v's neighbors eliminated after v.  Raises
    NotTriangulatedError carrying a chordless-cycle witness otherwise.
    """
    adj = tuple(int(a) for a in adj)
    n = len(adj)
    for v in range(n):
        if (adj[v] >> v) & 1:
            raise DomainError(f"self-loop at vertex {v}")
        for u in bits(adj[v]):
            if not (adj[u] >> v) & 1:
                raise DomainError(f"adjacency is not symmetric at ({v},{u})")
    peo = _mcs_order(adj)
    pos = [0] * n
    for idx, v in enumerate(peo):
        pos[v] = idx
    later = [0] * n
    for v in range(n):
        later[v] = mask_of(u for u in bits(adj[v]) if pos[u] > pos[v])
    for v in peo:
        nb = list(bits(later[v]))
        for i, x in enumerate(nb):
            for y in nb[i + 1:]:
                if not (adj[x] >> y) & 1:
                    cyc = _chordless_cycle(adj, v, x, y)
                    if cyc is None:
                        cyc = _find_witness(adj)
                    raise NotTriangulatedError(cyc)
    return peo, later


class _Dsu:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.p[rb] = ra
        return True


class DecomposableGraph:
    """A triangulated undirected graph with its junction tree.

    Construction runs maximum cardinality search, verifies the perfect
    elimination order (raising NotTriangulatedError with a chordless-cycle
    witness if it fails), extracts the maximal cliques, and connects them
    by a maximum-weight spanning tree on pairwise intersection sizes
    (Kruskal, ties broken lexicographically).  Disconnected inputs get
    empty separators joining their components.
    """

    def __init__(self, adj):
        adj = tuple(int(a) for a in adj)
        self.n = len(adj)
        if self.n < 1:
            raise DomainError("decomposable graph needs at least one vertex")
        self.adj = adj
        self.peo, self.pi = peo_and_check(adj)
        cand = sorted({(1 << v) | self.pi[v] for v in range(self.n)},
                      key=lambda m: (m.bit_count(), set_of(m)))
        cliques = [c for c in cand
                   if not any(c != d and c & ~d == 0 for d in cand)]
        self.cliques = tuple(cliques)
        m = len(cliques)
        pairs = []
        for i in range(m):
            for j in range(i + 1, m):
                w = (cliques[i] & cliques[j]).bit_count()
                pairs.append((-w, i, j))
        pairs.sort()
        dsu = _Dsu(m)
        jt_edges = []
        separators = []
        for negw, i, j in pairs:
            if dsu.union(i, j):
                jt_edges.append((i, j))
                separators.append(cliques[i] & cliques[j])
                if len(jt_edges) == m - 1:
                    break
        self.jt_edges = tuple(jt_edges)
        self.separators = tuple(separators)
        self.width = max(c.bit_count() for c in cliques) - 1
        assert self._running_intersection_ok()

    @classmethod
    def from_edges(cls, n, edges):
        adj = [0] * n
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if not (0 <= i < n and 0 <= j < n and i != j):
                raise DomainError(f"bad edge ({i},{j}) for n={n}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(adj)

    @classmethod
    def from_tree(cls, n, edges):
        edges = list(edges)
        if len(edges) != n - 1:
            raise DomainError(f"a tree on {n} nodes has {n - 1} edges, got {len(edges)}")
        g = cls.from_edges(n, edges)
        if any(s == 0 for s in g.separators):
            raise DomainError("tree edges do not span a connected graph")
        return g

    def _running_intersection_ok(self):
        nbr = [[] for _ in self.cliques]
        for i, j in self.jt_edges:
            nbr[i].append(j)
            nbr[j].append(i)
        for v in range(self.n):
            holding = [i for i, c in enumerate(self.cliques) if (c >> v) & 1]
            if not holding:
                return False
            seen = {holding[0]}
            stack = [holding[0]]
            hold = set(holding)
            while stack:
                u = stack.pop()
                for w in nbr[u]:
                    if w in hold and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != len(holding):
                return False
        return True

    def to_dag(self):
        """Orient along the elimination order: parents are the later-eliminated
        neighbors, so the topological order is the reversed elimination order."""
        return Dag(self.n, tuple(self.pi), tuple(reversed(self.peo)))

    def __repr__(self):
        return (f"<DecomposableGraph n={self.n} width={self.width} "
                f"cliques={len(self.cliques)}>")


def junction_tree(dec):
    """Clique list and separator multiset of a decomposable graph's
    junction tree (separator multiplicities preserved; |cliques| - 1 edges)."""
    return list(dec.cliques), sorted(dec.separators, key=lambda m: (m.bit_count(), set_of(m)))


def decomposable_bound(f, dec, mask, validate=None):
    """Junction-tree evaluation of the bound for a decomposable graph.

    Computes sum_C F(C * A) - sum_seps F(S * A).  When ``validate`` is true
    (default: in debug runs) the elimination-order form is computed as well
    and the two must agree to 1e-9 relative.
    """
    if f.n != dec.n:
        raise DomainError(f"function is over n={f.n} but graph has n={dec.n}")
    total = 0.0
    for c in dec.cliques:
        total += f.evaluate(c & mask)
    for s in dec.separators:
        total -= f.evaluate(s & mask)
    if validate is None:
        validate = __debug__
    if validate:
        elim = 0.0
        for v in range(dec.n):
            p = dec.pi[v] & mask
            if (mask >> v) & 1:
                elim += f.evaluate(p | (1 << v)) - f.evaluate(p)
        if abs(elim - total) > 1e-9 * (1.0 + abs(total)):
            raise AssertionError(
                f"junction-tree and elimination forms disagree: {total} vs {elim}")
    return total


# ---------------------------------------------------------------------------
# signed clique coefficients ("nu" vectors)


@dataclass(frozen=True)
class NuVector:
    """Signed coefficients over small subsets encoding a junction-tree bound:
    +1 per maximal clique, -1 per separator occurrence, zeros dropped.

    ``items`` is a tuple of (mask, coefficient) pairs in canonical
    (size, lexicographic) order, which makes the vector hashable and
    comparable for duplicate detection.
    """

    n: int
    k: int
    items: tuple

    @classmethod
    def from_dict(cls, n, k, coeffs):
        items = tuple(sorted(
            ((int(m), float(c)) for m, c in coeffs.items() if abs(c) > 1e-15),
            key=lambda mc: (mc[0].bit_count(), set_of(mc[0]))))
        for m, _ in items:
            if m <= 0 or m >= (1 << n):
                raise DomainError(f"coefficient mask {m:#x} outside ground set")
            if m.bit_count() > k + 1:
                raise DomainError(f"coefficient on {set_of(m)} exceeds size {k + 1}")
        return cls(n, k, items)

    def as_dict(self):
        return dict(self.items)

    def apply(self, f, mask):
        """Evaluate the bound  sum_C nu_C * F(C * A)  at subset ``mask``."""
        return sum(c * f.evaluate(m & mask) for m, c in self.items)

    def element_sums(self):
        """Per-element coefficient totals; all exactly 1.0 for a valid
        junction-tree vector."""
        sums = np.zeros(self.n)
        for m, c in self.items:
            for i in bits(m):
                sums[i] += c
        return sums

    def to_dense(self, index):
        v = np.zeros(len(index.masks))
        for m, c in self.items:
            v[index.pos[m]] = c
        return v


def nu_from_decomposable(dec):
    """NuVector of a maximal junction tree (all cliques of size k+1, all
    separators of size k); other decomposable graphs are rejected."""
    sizes = {c.bit_count() for c in dec.cliques}
    if len(sizes) != 1:
        raise DomainError(f"junction tree is not maximal: clique sizes {sorted(sizes)}")
    size = sizes.pop()
    if any(s.bit_count() != size - 1 for s in dec.separators):
        raise DomainError("junction tree is not maximal: separator size mismatch")
    coeffs = {}
    for c in dec.cliques:
        coeffs[c] = coeffs.get(c, 0.0) + 1.0
    for s in dec.separators:
        coeffs[s] = coeffs.get(s, 0.0) - 1.0
    return NuVector.from_dict(dec.n, size - 1, coeffs)


def tree_nu(n, edges):
    """NuVector of a spanning tree given as (i, j) pairs: coefficient 1 on
    every edge, 1 - degree(j) on every node."""
    coeffs = {}
    deg = [0] * n
    for i, j in edges:
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise DomainError(f"bad tree edge ({i},{j})")
        a, b = min(i, j), max(i, j)
        coeffs[(1 << a) | (1 << b)] = 1.0
        deg[i] += 1
        deg[j] += 1
    if len(coeffs) != n - 1:
        raise DomainError("tree must have n - 1 distinct edges")
    for v in range(n):
        coeffs[1 << v] = 1.0 - deg[v]
    return NuVector.from_dict(n, 1, coeffs)


def best_tree_structure(f):
    """Max-weight spanning tree under the pairwise scores
    F({i}) + F({j}) - F({i,j}): the tightest tree bound at the full set.

    Scores are non-negative for submodular F; ties are broken by
    lexicographic edge order.  Returns the tree as a DecomposableGraph.
    """
    n = f.n
    if n < 2:
        raise DomainError("tree structure needs n >= 2")
    singles = [f.evaluate(1 << i) for i in range(n)]
    scored = []
    for i in range(n):
        for j in range(i + 1, n):
            score = singles[i] + singles[j] - f.evaluate((1 << i) | (1 << j))
            scored.append((-score, i, j))
    scored.sort()
    dsu = _Dsu(n)
    edges = []
    for negs, i, j in scored:
        if dsu.union(i, j):
            edges.append((i, j))
            if len(edges) == n - 1:
                break
    return DecomposableGraph.from_tree(n, edges)


def random_ktree_nu(n, k, rng):
    """NuVector of a uniform-ish random maximal junction tree of width k,
    grown by attaching each new vertex to a random k-subset of a random
    existing clique."""
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n - 1, got k={k}, n={n}")
    order = [int(v) for v in rng.permutation(n)]
    first = mask_of(order[:k + 1])
    cliques = [first]
    seps = []
    for v in order[k + 1:]:
        host = cliques[int(rng.integers(0, len(cliques)))]
        members = list(bits(host))
        drop = members[int(rng.integers(0, len(members)))]
        sep = host & ~(1 << drop)
        cliques.append(sep | (1 << v))
        seps.append(sep)
    coeffs = {}
    for c in cliques:
        coeffs[c] = coeffs.get(c, 0.0) + 1.0
    for s in seps:
        coeffs[s] = coeffs.get(s, 0.0) - 1.0
    return NuVector.from_dict(n, k, coeffs)


def _submasks(mask):
    out = []
    s = mask
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    return out


def structure_max(f, nu, shift=None):
    """Exact maximum of the structured bound A -> sum_C nu_C F(A & C),
    minus an optional modular term <shift, 1_A>.

    Every term depends on A only through a clique of the union graph of
    nu's support; that graph is triangulated with cliques of at most k+1
    vertices, so max-sum variable elimination along a perfect elimination
    order is exact and each intermediate table has at most 2^(k+1) rows.
    Ties prefer leaving the element out, which makes the argmax
    deterministic.  Returns ``(value, argmax_mask)``.
    """
    n = nu.n
    factors = []
    adj = [0] * n
    for c, coeff in nu.items:
        factors.append((c, {s: coeff * f.evaluate(s) for s in _submasks(c)}))
        for i in bits(c):
            adj[i] |= c & ~(1 << i)
    if shift is not None:
        shift = np.asarray(shift, dtype=np.float64)
        if shift.shape != (n,):
            raise DomainError(f"shift must have length {n}, got {shift.shape}")
        for i in range(n):
            if shift[i] != 0.0:
                factors.append((1 << i, {0: 0.0, 1 << i: -float(shift[i])}))
    present = 0
    for scope, _ in factors:
        present |= scope
    peo, _ = peo_and_check(adj)
    choices = []
    for v in peo:
        bv = 1 << v
        if not (present >> v) & 1:
            continue
        touching = [fa for fa in factors if fa[0] & bv]
        if not touching:
            continue
        factors = [fa for fa in factors if not fa[0] & bv]
        union = 0
        for scope, _ in touching:
            union |= scope
        rest = union & ~bv
        table = {}
        pick = {}
        for a in _submasks(rest):
            out_v = sum(tab[a & scope] for scope, tab in touching)
            in_v = sum(tab[(a | bv) & scope] for scope, tab in touching)
            if in_v > out_v:
                table[a] = in_v
                pick[a] = bv
            else:
                table[a] = out_v
                pick[a] = 0
        factors.append((rest, table))
        choices.append((rest, pick))
    value = sum(tab[0] for _, tab in factors)
    mask = 0
    for rest, pick in reversed(choices):
        mask |= pick[mask & rest]
    return float(value), mask


def dag_bound_function(f, g):
    """The bound F_G wrapped as a SetFunction (handy for property checks)."""
    from .core import LambdaFunction
    return LambdaFunction(f.n, lambda m: dag_bound(f, g, m))
