"""Randomized property suites for the bound family and its solver pieces.

Each suite draws seeded random instances and graphs and checks one
structural fact (bound validity, tightness, monotonicity, equivalence of
the two bound forms, moment-polytope containment, oracle exactness).  The
suites call into the graphs module through attribute lookups on purpose:
a patched/broken build of a bound operation must make them fail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import graphs
from .core import DomainError, LambdaFunction, bits, check_submodular, set_of, value_table
from .instances import gen_coverage, gen_entropy, gen_instance
from .polytopes import CliqueIndex, nk_violations
from .solver import FunctionTable, SolverConfig, graph_oracle, tree_oracle_value

TOL = 1e-9

FAMILIES = ("cut", "coverage", "entropy")


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def line(self):
        return f"{self.name}: {self.passed}/{self.total}"


def _random_function(family, n, rng):
    seed = int(rng.integers(0, 2**31 - 1))
    if family == "cut":
        return gen_instance("random", {"n": n, "p": 0.5}, seed)
    if family == "coverage":
        return gen_coverage(n, universe=2 * n, seed=seed)
    if family == "entropy":
        return gen_entropy(n, seed)
    raise DomainError(f"unknown family {family!r}")


def _fail(failures, msg):
    if len(failures) < 10:  # keep reports short
        failures.append(msg)
    else:
        failures.append("...")
        raise _Stop


class _Stop(Exception):
    pass


def p1_bound_validity(n=8, trials=100, seed=0):
    """Every DAG projection dominates the function at every subset."""
    rng = np.random.default_rng(seed)
    failures = []
    total = 0
    try:
        for t in range(trials):
            family = FAMILIES[t % 3]
            f = _random_function(family, n, rng)
            g = graphs.random_dag(f.n, rng)
            total += 1
            vals = value_table(f)
            for mask in range(1 << f.n):
                fg = graphs.dag_bound(f, g, mask)
                if fg < vals[mask] - TOL:
                    _fail(failures, f"{family}#{t}: F_G({set_of(mask)})="
                                    f"{fg} < F={vals[mask]}")
                    break
    except _Stop:
        pass
    return SuiteResult("p1", total - len(failures), total, failures)


def p2_parent_tightness(n=8, trials=100, seed=0):
    """Marginals of the bound match the function on parent subsets."""
    rng = np.random.default_rng(seed)
    failures = []
    try:
        for t in range(trials):
            f = _random_function(FAMILIES[t % 3], n, rng)
            g = graphs.random_dag(f.n, rng)
            bad = False
            for i in range(f.n):
                pi = g.parents[i]
                sub = pi
                while True:
                    lhs = (graphs.dag_bound(f, g, sub | (1 << i))
                           - graphs.dag_bound(f, g, sub))
                    rhs = f.evaluate(sub | (1 << i)) - f.evaluate(sub)
                    if abs(lhs - rhs) > TOL:
                        _fail(failures, f"trial {t}, i={i}, B={set_of(sub)}: "
                                        f"{lhs} != {rhs}")
                        bad = True
                        break
                    if sub == 0:
                        break
                    sub = (sub - 1) & pi
                if bad:
                    break
    except _Stop:
        pass
    return SuiteResult("p2", trials - len(failures), trials, failures)


def p3_subgraph_monotonicity(n=8, trials=100, seed=0):
    """Dropping an edge never lowers the bound anywhere."""
    rng = np.random.default_rng(seed)
    failures = []
    try:
        for t in range(trials):
            f = _random_function(FAMILIES[t % 3], n, rng)
            g = graphs.random_dag(f.n, rng)
            arcs = [(u, v) for v in range(f.n) for u in bits(g.parents[v])]
            if not arcs:
                continue
            u, v = arcs[int(rng.integers(0, len(arcs)))]
            parents = list(g.parents)
            parents[v] &= ~(1 << u)
            g2 = graphs.Dag(g.n, tuple(parents), g.topo)
            for mask in range(1 << f.n):
                lo = graphs.dag_bound(f, g, mask)
                hi = graphs.dag_bound(f, g2, mask)
                if hi < lo - TOL:
                    _fail(failures, f"trial {t}, drop {u}->{v}, "
                                    f"A={set_of(mask)}: {hi} < {lo}")
                    break
    except _Stop:
        pass
    return SuiteResult("p3", trials - len(failures), trials, failures)


def p4_ancestral_domination(n=8, trials=100, seed=0):
    """On ancestral sets the gap is between 0 and the full-set gap."""
    rng = np.random.default_rng(seed)
    failures = []
    try:
        for t in range(trials):
            f = _random_function(FAMILIES[t % 3], n, rng)
            g = graphs.random_dag(f.n, rng)
            vals = value_table(f)
            full = (1 << f.n) - 1
            top = graphs.dag_bound(f, g, full) - vals[full]
            for mask in range(1 << f.n):
                if not graphs.is_ancestral(g, mask):
                    continue
                gap = graphs.dag_bound(f, g, mask) - vals[mask]
                if gap < -TOL or gap > top + TOL:
                    _fail(failures, f"trial {t}, A={set_of(mask)}: "
                                    f"gap {gap} outside [0, {top}]")
                    break
    except _Stop:
        pass
    return SuiteResult("p4", trials - len(failures), trials, failures)


def p5_tree_bound_submodular(n=8, trials=100, seed=0):
    """Directed-tree bounds are themselves submodular."""
    rng = np.random.default_rng(seed)
    failures = []
    try:
        for t in range(trials):
            f = _random_function(FAMILIES[t % 3], n, rng)
            g = graphs.random_directed_tree(f.n, rng)
            fg = LambdaFunction(f.n, lambda m: graphs.dag_bound(f, g, m))
            if not check_submodular(fg, tol=TOL):
                _fail(failures, f"trial {t}: tree bound not submodular")
    except _Stop:
        pass
    return SuiteResult("p5", trials - len(failures), trials, failures)


def p6_reroot_invariance(n=8, trials=100, seed=0):
    """Rerooting a directed tree changes no bound value."""
    rng = np.random.default_rng(seed)
    failures = []
    try:
        for t in range(trials):
            f = _random_function(FAMILIES[t % 3], n, rng)
            g = graphs.random_directed_tree(f.n, rng)
            g2 = graphs.reroot_tree(g, int(rng.integers(0, f.n)))
            for mask in range(1 << f.n):
                a = graphs.dag_bound(f, g, mask)
                b = graphs.dag_bound(f, g2, mask)
                if abs(a - b) > TOL:
                    _fail(failures, f"trial {t}, A={set_of(mask)}: {a} != {b}")
                    break
    except _Stop:
        pass
    return SuiteResult("p6", trials - len(failures), trials, failures)


def _random_ktree_edges(n, k, rng):
    """Edge list of a random maximal width-k decomposable graph."""
    order = [int(v) for v in rng.permutation(n)]
    edges = set()
    first = order[:k + 1]
    for a in range(len(first)):
        for b in range(a + 1, len(first)):
            edges.add((min(first[a], first[b]), max(first[a], first[b])))
    cliques = [tuple(sorted(first))]
    for v in order[k + 1:]:
        host = list(cliques[int(rng.integers(0, len(cliques)))])
        host.remove(host[int(rng.integers(0, len(host)))])
        for u in host:
            edges.add((min(u, v), max(u, v)))
        cliques.append(tuple(sorted(host + [v])))
    return sorted(edges)


def p7_junction_equivalence(n=8, trials=100, seed=0):
    """Junction-tree and elimination forms agree; the bound is tight on
    cliques; the signed-coefficient vector reproduces the bound."""
    rng = np.random.default_rng(seed)
    failures = []
    try:
        for t in range(trials):
            f = _random_function(FAMILIES[t % 3], n, rng)
            k = 1 + int(rng.integers(0, 3))
            dec = graphs.DecomposableGraph.from_edges(
                f.n, _random_ktree_edges(f.n, k, rng))
            nu = graphs.nu_from_decomposable(dec)
            sums = nu.element_sums()
            if np.max(np.abs(sums - 1.0)) > TOL:
                _fail(failures, f"trial {t}: element sums {sums}")
                continue
            bad = False
            for mask in range(1 << f.n):
                # validate=True cross-checks the elimination form inside
                jt = graphs.decomposable_bound(f, dec, mask, validate=True)
                if abs(nu.apply(f, mask) - jt) > TOL:
                    _fail(failures, f"trial {t}, A={set_of(mask)}: nu form "
                                    f"{nu.apply(f, mask)} != {jt}")
                    bad = True
                    break
                in_clique = any(mask & ~c == 0 for c in dec.cliques)
                if in_clique and abs(jt - f.evaluate(mask)) > TOL:
                    _fail(failures, f"trial {t}: not tight on clique subset "
                                    f"{set_of(mask)}")
                    bad = True
                    break
            if bad:
                continue
    except _Stop:
        pass
    return SuiteResult("p7", trials - len(failures), trials, failures)


def _decode_prufer(seq, n):
    """Labeled tree from a length n-2 sequence (smallest-leaf decoding)."""
    import heapq
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((min(u, w), max(u, w)))
    return edges


def all_spanning_trees(n):
    """All n^(n-2) labeled spanning trees (n >= 2)."""
    if n == 2:
        return [[(0, 1)]]
    return [_decode_prufer(seq, n) for seq in product(range(n), repeat=n - 2)]


def p8_moments_and_oracle(n=6, trials=100, seed=0):
    """Integral moment vectors satisfy every local constraint, and the
    spanning-tree oracle matches exhaustive enumeration exactly."""
    rng = np.random.default_rng(seed)
    failures = []
    cfg = SolverConfig()
    try:
        for t in range(trials):
            nn = int(rng.integers(2, n + 1))
            k = 1 if nn == 2 else 1 + int(rng.integers(0, min(2, nn - 1)))
            idx = CliqueIndex(nn, k)
            mask = int(rng.integers(0, 1 << nn))
            y = idx.moments_of(mask)
            viol = nk_violations(idx, y)
            if viol:
                _fail(failures, f"trial {t}: integral point of {set_of(mask)} "
                                f"violates {viol[:3]}")
                continue
            if nn > 6:
                continue
            f = _random_function("cut", nn, rng)
            ws = FunctionTable(f, 1)
            ybar = rng.random(ws.index.dim)
            nu, val = graph_oracle(f, ybar, 1, cfg, table=ws)
            enum = min(tree_oracle_value(ws, ybar, edges)
                       for edges in all_spanning_trees(nn))
            if val != enum:
                _fail(failures, f"trial {t}: oracle {val!r} != enumerated {enum!r}")
    except _Stop:
        pass
    return SuiteResult("p8", trials - len(failures), trials, failures)


SUITES = {
    "p1": p1_bound_validity,
    "p2": p2_parent_tightness,
    "p3": p3_subgraph_monotonicity,
    "p4": p4_ancestral_domination,
    "p5": p5_tree_bound_submodular,
    "p6": p6_reroot_invariance,
    "p7": p7_junction_equivalence,
    "p8": p8_moments_and_oracle,
}


def run_suites(names, n=8, trials=100, seed=0):
    out = []
    for name in names:
        if name not in SUITES:
            raise DomainError(f"unknown property suite {name!r}; "
                              f"know {sorted(SUITES)}")
        out.append(SUITES[name](n=n, trials=trials, seed=seed))
    return out
