"""Saddle-point upper bounds on submodular maximization.

The bound family is parameterized by signed clique coefficients ("nu"
vectors, junction trees of a fixed width k); the tightest bound is found by
playing nu against a vector y of subset moments constrained to the local
consistency polytope N_k.  The bilinear payoff is evaluated through
inclusion-exclusion weights, so at the moment vector of a set A it equals
the junction-tree bound F_nu(A) exactly; maximizing it over N_k therefore
dominates max_A F_nu(A), and any feasible multiplier point of the inner
Lagrangian certifies an upper bound on max_A F(A).

Layout: an outer simplicial loop grows a hull of nu vertices (spanning
trees when k = 1); the inner loop minimizes the closed-form Lagrangian Q
over hull weights eta and row multipliers z, by extrapolated primal-dual
splitting (default) or plain projected subgradient descent, with an exact
per-row refinement on small systems; a combinatorial oracle (minimum
spanning tree on moment-weighted scores) proposes the next vertex; each
vertex's own bound is also maximized exactly by elimination, and singleton
moments are thresholded into candidate sets for primal values.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError, base_polytope_greedy, bits
from .graphs import (_Dsu, NuVector, random_ktree_nu, structure_max,
                     tree_nu)
from .polytopes import CliqueIndex, project_simplex

TRACE_COLUMNS = ("iter", "time_ms", "dual_bound", "oracle_value",
                 "best_primal", "n_vertices", "inner_steps")

# exact per-row multiplier refinement is only worth the python loop on
# systems about this small (covers every brute-forceable test size)
POLISH_ROW_CAP = 4000


@dataclass(frozen=True)
class SolverConfig:
    """Knobs for the saddle solver.

    step_rule "auto" runs the extrapolated primal-dual splitting on the
    bilinear saddle (fast, the default); "sqrt" runs plain projected
    subgradient descent with the 1/sqrt(t) schedule.
    """

    treewidth: int = 1
    max_outer: int = 50
    inner_steps: int = 5000
    tol: float = 1e-6
    theta: float = 0.5
    seed: int = 0
    budget: int | None = None
    pool_size: int = 64
    step_rule: str = "auto"
    round_every: int = 250

    def __post_init__(self):
        if self.treewidth < 1:
            raise DomainError(f"treewidth must be >= 1, got {self.treewidth}")
        if self.max_outer < 1 or self.inner_steps < 1:
            raise DomainError("iteration budgets must be >= 1")
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if not 0.0 < self.theta < 1.0:
            raise DomainError(f"theta must be in (0,1), got {self.theta}")
        if self.budget is not None and self.budget < 0:
            raise DomainError(f"budget must be >= 0, got {self.budget}")
        if self.pool_size < 1 or self.round_every < 1:
            raise DomainError("pool_size and round_every must be >= 1")
        if self.step_rule not in ("auto", "sqrt"):
            raise DomainError(f"unknown step rule {self.step_rule!r}")


@dataclass(frozen=True)
class TraceRow:
    iter: int
    time_ms: float
    dual_bound: float
    oracle_value: float
    best_primal: float
    n_vertices: int
    inner_steps: int

    def astuple(self):
        return (self.iter, self.time_ms, self.dual_bound, self.oracle_value,
                self.best_primal, self.n_vertices, self.inner_steps)


@dataclass
class SaddleState:
    """Everything one solve run produced (vertices, weights, trace, bounds)."""

    n: int
    k: int
    config: SolverConfig
    vertices: list
    svecs: list | None
    eta: np.ndarray
    z: np.ndarray
    lam: float
    ybar: np.ndarray
    dual_bound: float
    best_primal: float
    best_set: int
    trace: list
    oracle_exact: bool
    stop_reason: str  # "converged" | "optimal" | "budget"
    approx_gap: float
    outer_iters: int


class FunctionTable:
    """F tabulated over a CliqueIndex, with its inclusion-exclusion weights.

    ``fvals[t]`` is F at the t-th index subset; ``chat[t]`` is the signed
    subset sum  sum_{B' <= B} (-1)^{|B|-|B'|} F(B')  (so chat on a singleton
    is F({i}) and on a pair is F({i,j}) - F({i}) - F({j}), nonpositive for
    submodular F).  ``cvec(nu)`` maps clique coefficients to per-subset
    objective weights  c_B = chat_B * (sum of nu over index supersets of B),
    the linearization under which integral moment vectors recover the
    junction-tree bound exactly.
    """

    def __init__(self, f, k):
        self.f = f
        self.index = CliqueIndex(f.n, k)
        masks = self.index.masks
        if hasattr(f, "batch_evaluate"):
            vals = np.asarray(f.batch_evaluate(masks), dtype=np.float64) - f._offset
        else:
            vals = np.fromiter((f.evaluate(m) for m in masks),
                               dtype=np.float64, count=len(masks))
        pos = self.index.pos
        chat = np.empty(self.index.dim)
        for t, m in enumerate(masks):
            size = m.bit_count()
            acc = vals[t]
            sub = (m - 1) & m
            while sub:
                sgn = -1.0 if (size - sub.bit_count()) % 2 else 1.0
                acc += sgn * vals[pos[sub]]
                sub = (sub - 1) & m
            chat[t] = acc
        self.fvals = vals
        self.chat = chat
        self.superset = self.index.superset_matrix()
        self.max_abs = float(np.max(np.abs(vals)))
        self._constraints = None
        self._pair_ij = None

    def constraints(self):
        if self._constraints is None:
            m, m0 = self.index.constraint_matrix()
            self._constraints = (m, m0, m.T.tocsr())
        return self._constraints

    def pair_ij(self):
        """(i, j) endpoints of each subset in the pair block of the index."""
        if self._pair_ij is None:
            n = self.index.n
            lo, hi = n, n + n * (n - 1) // 2
            ii = np.empty(hi - lo, dtype=np.int64)
            jj = np.empty(hi - lo, dtype=np.int64)
            for t in range(lo, hi):
                m = self.index.masks[t]
                i = (m & -m).bit_length() - 1
                ii[t - lo], jj[t - lo] = i, (m ^ (1 << i)).bit_length() - 1
            self._pair_ij = (ii, jj)
        return self._pair_ij

    def cvec(self, nu):
        if nu.n != self.index.n or nu.k != self.index.k:
            raise DomainError(f"nu is over (n={nu.n}, k={nu.k}), "
                              f"table over (n={self.index.n}, k={self.index.k})")
        return self.chat * (self.superset @ nu.to_dense(self.index))


def _check_y(ws, y):
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (ws.index.dim,):
        raise DomainError(f"y has shape {y.shape}, index dimension is {ws.index.dim}")
    return y


def p_eval(f, nu, y, table=None):
    """Bilinear payoff P(nu, y) of clique coefficients against subset moments.

    At integral y (the moment vector of a set A) this equals the bound
    sum_C nu_C F(C & A) exactly, which is what makes every feasible dual
    point of the solver a valid upper bound on max F.
    """
    ws = table if table is not None else FunctionTable(f, nu.k)
    y = _check_y(ws, y)
    return float(ws.cvec(nu) @ y)


def q_eval(f, nu, z, budget=None, lam=0.0, table=None):
    """Closed-form inner maximum of the Lagrangian.

    Q(nu, z) = max over y in [0,1]^D of  c(nu).y + z.(M y + m0)
             = sum_B max(a_B, 0) + m0.z      with a = c(nu) + M^T z.

    Returns (Q, a); a's sign pattern is the maximizing y and drives every
    subgradient.  With a cardinality budget, singleton coordinates of a are
    shifted by -lam and Q gains +lam*budget.
    """
    ws = table if table is not None else FunctionTable(f, nu.k)
    mat, m0, mat_t = ws.constraints()
    z = np.asarray(z, dtype=np.float64)
    if z.shape != (mat.shape[0],):
        raise DomainError(f"z has shape {z.shape}, expected ({mat.shape[0]},)")
    if np.any(z < 0):
        raise DomainError("multipliers z must be >= 0")
    a = ws.cvec(nu) + mat_t @ z
    extra = 0.0
    if budget is not None:
        a = a.copy()
        a[:f.n] -= lam
        extra = lam * budget
    q = float(np.sum(a[a > 0.0]) + m0 @ z + extra)
    return q, a


def _pl_argmin(a, coords, signs, const, lo):
    """Argmin over delta >= lo of  sum_t max(a[coords[t]] + signs[t]*delta, 0)
    + const*delta  (convex piecewise linear; returns the first knot with
    nonnegative right slope)."""
    knots = [lo]
    for t in range(len(coords)):
        bp = -a[coords[t]] * signs[t]
        if bp > lo:
            knots.append(bp)
    knots.sort()
    for delta in knots:
        slope = const
        for t in range(len(coords)):
            v = a[coords[t]] + signs[t] * delta
            if v > 0.0 or (v == 0.0 and signs[t] > 0.0):
                slope += signs[t]
        if slope >= 0.0:
            return delta
    return knots[-1]


def _row_polish(ws, cvec, z, lam, budget, passes=2):
    """Exact coordinate minimization of Q over each multiplier in turn,
    keeping the hull weights fixed.  Returns (Q, z, lam) with z modified in
    place; any output is still a feasible dual point, so the value is a
    valid bound regardless of how many passes run."""
    rows = ws.index.rows()
    _, m0, mat_t = ws.constraints()
    nsing = ws.index.n
    a = cvec + mat_t @ z
    if budget is not None:
        a[:nsing] -= lam
    lam_coords = np.arange(nsing)
    lam_signs = np.full(nsing, -1.0)
    for _ in range(passes):
        moved = False
        for r, (_, _, coords, signs, const) in enumerate(rows):
            delta = _pl_argmin(a, coords, signs, const, -z[r])
            if delta != 0.0:
                z[r] += delta
                for t in range(len(coords)):
                    a[coords[t]] += signs[t] * delta
                moved = True
        if budget is not None:
            delta = _pl_argmin(a, lam_coords, lam_signs, float(budget), -lam)
            if delta != 0.0:
                lam += delta
                a[:nsing] -= delta
                moved = True
        if not moved:
            break
    # recompute from scratch: the incremental updates above drift slightly
    a = cvec + mat_t @ z
    extra = 0.0
    if budget is not None:
        a[:nsing] -= lam
        extra = lam * budget
    q = float(np.sum(a[a > 0.0]) + m0 @ z + extra)
    return q, z, lam


def _op_norm(cmat, mat, mat_t, nsing, with_lam):
    """Spectral norm of the bilinear coupling (eta, z[, lam]) -> y-space,
    by deterministic power iteration (non-negative start overlaps the
    leading singular vector; forty rounds is plenty at 1e-2 accuracy,
    which only perturbs the step-size split)."""
    nv = cmat.shape[1]
    nrows = mat.shape[0]
    x_e = np.full(nv, 1.0 / math.sqrt(nv))
    x_z = np.full(nrows, 1.0 / math.sqrt(nrows))
    x_l = 1.0
    est = 1.0
    for _ in range(40):
        y = cmat @ x_e + mat_t @ x_z
        if with_lam:
            y[:nsing] -= x_l
        x_e = cmat.T @ y
        x_z = mat @ y
        sq = float(x_e @ x_e + x_z @ x_z)
        if with_lam:
            x_l = -float(y[:nsing].sum())
            sq += x_l * x_l
        nrm = math.sqrt(sq)
        if nrm <= 0.0:
            return 1.0
        x_e /= nrm
        x_z /= nrm
        x_l /= nrm
        est = nrm
    return math.sqrt(est)


def _minimize_hull_pdhg(ws, cmat, cfg, eta, z, lam, budget, target, on_round, y0):
    """Primal-dual splitting with extrapolation on the bilinear saddle
    min_(eta, z) max_(y in [0,1]^dim) of the hull payoff.

    Both sides take proximal steps of size 1/||K||; the (eta, z) iterate is
    extrapolated one step forward before the y ascent, which is what makes
    the plain alternation convergent.  Q is evaluated every round_every
    steps; the lowest value seen and the iterate attaining it are returned,
    so any early stop still hands back a certified bound.
    """
    mat, m0, mat_t = ws.constraints()
    nsing = ws.index.n
    steps_total = cfg.inner_steps
    burn = steps_total // 4
    with_lam = budget is not None
    step = 1.0 / _op_norm(cmat, mat, mat_t, nsing, with_lam)
    y = np.zeros(ws.index.dim) if y0 is None else y0.copy()
    eta = eta.copy()
    z = z.copy()
    e_bar, z_bar, lam_bar = eta.copy(), z.copy(), lam
    ysum = np.zeros(ws.index.dim)
    ycount = 0
    q_best = math.inf
    snap = (eta.copy(), z.copy(), lam)
    steps_done = steps_total

    def qval(ee, zz, ll):
        a = cmat @ ee + mat_t @ zz
        if with_lam:
            a[:nsing] -= ll
        q = float(np.sum(a[a > 0.0]) + m0 @ zz)
        return q + ll * budget if with_lam else q

    for s in range(1, steps_total + 1):
        ky = cmat @ e_bar + mat_t @ z_bar
        if with_lam:
            ky[:nsing] -= lam_bar
        y = np.clip(y + step * ky, 0.0, 1.0)
        eta_n = project_simplex(eta - step * (cmat.T @ y))
        z_n = np.maximum(z - step * (mat @ y + m0), 0.0)
        lam_n = max(lam - step * (budget - float(y[:nsing].sum())), 0.0) \
            if with_lam else lam
        e_bar = 2.0 * eta_n - eta
        z_bar = 2.0 * z_n - z
        lam_bar = 2.0 * lam_n - lam
        eta, z, lam = eta_n, z_n, lam_n
        if s > burn:
            ysum += y
            ycount += 1
        if s % cfg.round_every == 0 or s == steps_total:
            q = qval(eta, z, lam)
            if q < q_best:
                q_best = q
                snap = (eta.copy(), z.copy(), lam)
            if on_round is not None:
                probe = np.clip(ysum / ycount, 0.0, 1.0) if ycount else y
                t2 = on_round(probe)
                if t2 is not None:
                    target = t2 if target is None else max(target, t2)
            if target is not None and \
                    q_best <= target + cfg.tol * (1.0 + abs(q_best)):
                steps_done = s
                break
    eta_b, z_b, lam_b = snap
    if len(ws.index.rows()) <= POLISH_ROW_CAP:
        q2, z_b, lam_b = _row_polish(ws, cmat @ eta_b, z_b, lam_b, budget)
        if q2 < q_best:
            q_best = q2
    ybar = np.clip(ysum / ycount, 0.0, 1.0) if ycount else np.clip(y, 0.0, 1.0)
    return q_best, eta_b, z_b, lam_b, ybar, steps_done, y


def _minimize_hull_subgrad(ws, cmat, cfg, eta, z, lam, budget, target, on_round):
    """Projected subgradient descent on (eta, z[, lam]) -> Q with the plain
    1/sqrt(t) schedule.  Returns like _minimize_hull_pdhg; ybar is the
    average of the maximizing indicator vectors past the burn-in."""
    mat, m0, mat_t = ws.constraints()
    steps_total = cfg.inner_steps
    burn = steps_total // 4
    alpha0 = 1.0 / ws.max_abs if ws.max_abs > 0 else 1.0
    nsing = ws.index.n
    ysum = np.zeros(ws.index.dim)
    ycount = 0
    yhat = np.zeros(ws.index.dim)
    q_best = math.inf
    snap = (eta.copy(), z.copy(), lam)
    steps_done = steps_total
    for s in range(1, steps_total + 1):
        a = cmat @ eta + mat_t @ z
        if budget is not None:
            a[:nsing] -= lam
        yhat = (a > 0.0).astype(np.float64)
        q = float(a @ yhat + m0 @ z)
        if budget is not None:
            q += lam * budget
        if q < q_best:
            q_best = q
            snap = (eta.copy(), z.copy(), lam)
        if s > burn:
            ysum += yhat
            ycount += 1
        if target is not None and q_best <= target + cfg.tol * (1.0 + abs(q_best)):
            steps_done = s
            break
        g_eta = cmat.T @ yhat
        g_z = mat @ yhat + m0
        g_lam = (budget - float(yhat[:nsing].sum())) if budget is not None else 0.0
        norm2 = float(g_eta @ g_eta + g_z @ g_z + g_lam * g_lam)
        if norm2 <= 0.0:
            steps_done = s  # zero subgradient: q is the exact hull minimum
            break
        alpha = alpha0 / math.sqrt(s)
        eta = project_simplex(eta - alpha * g_eta)
        z = np.maximum(z - alpha * g_z, 0.0)
        if budget is not None:
            lam = max(lam - alpha * g_lam, 0.0)
        if on_round is not None and s % cfg.round_every == 0:
            probe = np.clip(ysum / ycount, 0.0, 1.0) if ycount else yhat
            t2 = on_round(probe)
            if t2 is not None:
                target = t2 if target is None else max(target, t2)
    eta_b, z_b, lam_b = snap
    ybar = np.clip(ysum / ycount, 0.0, 1.0) if ycount else yhat.copy()
    return q_best, eta_b, z_b, lam_b, ybar, steps_done, ybar


def _minimize_hull(ws, cmat, cfg, eta, z, lam, budget, target, on_round,
                   y0=None):
    """Inner minimization over the current hull; rule "auto" runs the
    primal-dual splitting, "sqrt" the plain subgradient schedule.  Returns
    (q_best, eta, z, lam, ybar, steps, y_last)."""
    if cfg.step_rule == "auto":
        return _minimize_hull_pdhg(ws, cmat, cfg, eta, z, lam, budget,
                                   target, on_round, y0)
    return _minimize_hull_subgrad(ws, cmat, cfg, eta, z, lam, budget,
                                  target, on_round)


def inner_solve_hull(f, vertices, config, table=None):
    """Minimize Q over mixtures of the given nu vertices and multipliers z.

    Returns (eta, z, ybar, dual_bound); the bound is valid for any number of
    steps since every feasible (eta, z) certifies one.
    """
    if not vertices:
        raise DomainError("inner solve needs at least one vertex")
    k = vertices[0].k
    if any(v.k != k or v.n != f.n for v in vertices):
        raise DomainError("vertices disagree on (n, k)")
    ws = table if table is not None else FunctionTable(f, k)
    cmat = np.column_stack([ws.cvec(nu) for nu in vertices])
    z0 = np.zeros(ws.constraints()[0].shape[0])
    eta0 = np.full(len(vertices), 1.0 / len(vertices))
    budget = config.budget
    if budget is not None and budget >= f.n:
        budget = None
    q, eta, z, lam, ybar, _, _ = _minimize_hull(
        ws, cmat, config, eta0, z0, 0.0, budget, None, None)
    return eta, z, ybar, q


def tree_oracle_value(table, ybar, edges):
    """Bilinear value of a spanning tree at ybar, accumulated in canonical
    order (singleton terms by index, then edge terms sorted lexicographically)
    so that equal trees produce bit-equal values no matter who picked them."""
    n = table.index.n
    ybar = _check_y(table, ybar)
    val = 0.0
    for i in range(n):
        val += table.fvals[i] * ybar[i]
    for i, j in sorted((min(e), max(e)) for e in edges):
        p = table.index.pos[(1 << i) | (1 << j)]
        val += table.chat[p] * ybar[p]
    return float(val)


def _kruskal_min(n, wts, ii, jj):
    """Minimum spanning tree over the complete graph; ties by (weight, i, j)."""
    order = sorted(range(len(wts)), key=lambda t: (wts[t], ii[t], jj[t]))
    dsu = _Dsu(n)
    edges = []
    for t in order:
        if dsu.union(int(ii[t]), int(jj[t])):
            edges.append((int(ii[t]), int(jj[t])))
            if len(edges) == n - 1:
                break
    return edges


def graph_oracle(f, ybar, k, config, table=None, rng=None):
    """Cheapest nu vertex for the current moments: min over structures of
    P(nu, ybar).

    k = 1 solves the problem exactly as a minimum spanning tree on pair
    scores chat_ij * ybar_ij (ties lexicographic).  k > 1 samples
    config.pool_size random width-k junction trees and keeps the best by
    (value, coefficient order) — an upper bound on the true minimum, so
    callers treat the result as heuristic (oracle_exact false).
    """
    ws = table if table is not None else FunctionTable(f, k)
    ybar = _check_y(ws, ybar)
    n = f.n
    if k == 1:
        ii, jj = ws.pair_ij()
        wts = ws.chat[n:] * ybar[n:]
        edges = _kruskal_min(n, wts, ii, jj)
        return tree_nu(n, edges), tree_oracle_value(ws, ybar, edges)
    if rng is None:
        rng = np.random.default_rng(config.seed)
    best = None
    for _ in range(config.pool_size):
        nu = random_ktree_nu(n, k, rng)
        val = float(ws.cvec(nu) @ ybar)
        key = (val, nu.items)
        if best is None or key < best[0]:
            best = (key, nu)
    return best[1], best[0][0]


def round_threshold(ybar, theta, n=None):
    """Threshold singleton moments into a set: A = { i : ybar_i > theta }.

    ybar may be a full index vector (pass n) or just the singleton block.
    """
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must be in (0,1), got {theta}")
    ys = np.asarray(ybar, dtype=np.float64)
    if n is not None:
        ys = ys[:n]
    mask = 0
    for i, v in enumerate(ys):
        if v > theta:
            mask |= 1 << i
    return mask


class _Engine:
    """One solve run: owns the table, hull, primal incumbent, and trace.

    ``h`` switches on difference mode (objective f - h): each vertex is then
    a (nu, s) pair with s a base-polytope point of h entering the objective
    as -s on the singleton block.  ``config.budget`` switches on the
    cardinality multiplier.  Both reduce bit-exactly to the plain solver
    when degenerate (h identically zero, budget >= n).
    """

    def __init__(self, f, config, h=None):
        if f.n < 2:
            raise DomainError("solver needs a ground set with n >= 2")
        if config.treewidth > f.n - 1:
            raise DomainError(f"treewidth {config.treewidth} too large for n={f.n}")
        self.f = f
        self.h = h
        self.cfg = config
        self.k = config.treewidth
        budget = config.budget
        if budget is not None:
            if not 0 <= budget <= f.n:
                raise DomainError(f"budget {budget} outside 0..{f.n}")
            if budget >= f.n:
                budget = None  # vacuous: keeps the run identical to unconstrained
        self._budget = budget
        self.ws = FunctionTable(f, self.k)
        self.rng = np.random.default_rng(config.seed)
        self.best_primal = -math.inf
        self.best_set = 0
        self._exact_cache = {}
        self._consider(0)

    # -- primal side ---------------------------------------------------

    def _value(self, mask):
        v = self.f.evaluate(mask)
        if self.h is not None:
            v = v - self.h.evaluate(mask)
        return v

    def _feasible(self, mask):
        return self._budget is None or mask.bit_count() <= self._budget

    def _consider(self, mask):
        if not self._feasible(mask):
            return
        v = self._value(mask)
        if v > self.best_primal:
            self.best_primal = v
            self.best_set = mask

    def _candidate_masks(self, ybar):
        n = self.f.n
        ys = ybar[:n]
        thetas = [self.cfg.theta]
        thetas.extend(float(q) for q in np.quantile(ys, (0.25, 0.5, 0.75)))
        out = set()
        for th in thetas:
            if self._budget is None:
                mask = 0
                for i in range(n):
                    if ys[i] > th:
                        mask |= 1 << i
            else:
                order = np.lexsort((np.arange(n), -ys))
                mask = 0
                taken = 0
                for i in order:
                    if taken == self._budget:
                        break
                    if ys[i] > th:
                        mask |= 1 << int(i)
                        taken += 1
            out.add(mask)
        return out

    def _on_round(self, ybar):
        for mask in sorted(self._candidate_masks(ybar)):
            self._consider(mask)
        return self.best_primal

    def _polish_sweep(self, mask):
        """One pass of single-element add/remove improvements."""
        val = self._value(mask)
        for i in range(self.f.n):
            alt = mask ^ (1 << i)
            if not self._feasible(alt):
                continue
            v = self._value(alt)
            if v > val:
                mask, val = alt, v
        return mask

    def _round_outer(self, ybar):
        self._on_round(ybar)
        self._consider(self._polish_sweep(self.best_set))
        comp = self.f.ground.full_mask & ~self.best_set
        if self._feasible(comp):
            self._consider(comp)
            if self.f.n <= 20:
                self._consider(self._polish_sweep(comp))

    # -- dual side -----------------------------------------------------

    def _svec(self, ybar_singles):
        s, _ = base_polytope_greedy(self.h, ybar_singles)
        return s

    def _cfull(self, nu, s):
        c = self.ws.cvec(nu)
        if s is not None:
            c = c.copy()
            c[:self.f.n] -= s
        return c

    def _vkey(self, nu, s):
        return (nu.items, None if s is None else s.tobytes())

    def _init_vertex(self):
        n = self.f.n
        if self.k == 1:
            ii, jj = self.ws.pair_ij()
            edges = _kruskal_min(n, self.ws.chat[n:], ii, jj)
            nu = tree_nu(n, edges)
        else:
            best = None
            for _ in range(self.cfg.pool_size):
                cand = random_ktree_nu(n, self.k, self.rng)
                val = float(cand.to_dense(self.ws.index) @ self.ws.fvals)
                key = (val, cand.items)
                if best is None or key < best[0]:
                    best = (key, cand)
            nu = best[1]
        s = self._svec(np.ones(n)) if self.h is not None else None
        return nu, s

    def _oracle(self, ybar):
        nu, val = graph_oracle(self.f, ybar, self.k, self.cfg,
                               table=self.ws, rng=self.rng)
        s = None
        if self.h is not None:
            ys = ybar[:self.f.n]
            s = self._svec(ys)
            val = val - float(s @ ys)
        return nu, s, val

    def _exact_dual(self, verts, svecs, lam):
        """Best single-structure bound over the hull, solved exactly.

        Each vertex's bound is maximized by elimination on its own junction
        tree; that optimum equals what the inner subgradient loop could
        reach with the mixture pinned on that vertex, so the running dual
        may take it.  A cardinality multiplier folds in as a modular shift
        plus the constant lam * budget.  Argmax sets feed the primal
        incumbent for free.
        """
        best = math.inf
        for pos, nu in enumerate(verts):
            s = svecs[pos] if svecs is not None else None
            if self._budget is None:
                key = self._vkey(nu, s)
                hit = self._exact_cache.get(key)
                if hit is None:
                    hit, amask = structure_max(self.f, nu, shift=s)
                    self._exact_cache[key] = hit
                    self._consider(amask)
                    self._consider(self._polish_sweep(amask))
                best = min(best, hit)
            else:
                shift = np.full(self.f.n, lam) if lam != 0.0 else None
                val, amask = structure_max(self.f, nu, shift=shift)
                self._consider(amask)
                best = min(best, val + lam * self._budget)
        return best

    # -- outer loop ----------------------------------------------------

    def run(self):
        cfg, ws = self.cfg, self.ws
        t_start = time.perf_counter()
        nu1, s1 = self._init_vertex()
        verts = [nu1]
        svecs = [s1] if self.h is not None else None
        cvecs = [self._cfull(nu1, s1)]
        seen = {self._vkey(nu1, s1)}
        eta = np.array([1.0])
        z = np.zeros(ws.constraints()[0].shape[0])
        lam = 0.0
        dual = math.inf
        trace = []
        stop = "budget"
        ybar = np.zeros(ws.index.dim)
        agap = math.nan
        outer_done = 0
        ywarm = None
        for t in range(1, cfg.max_outer + 1):
            outer_done = t
            cmat = np.column_stack(cvecs)
            q, eta, z, lam, ybar, steps, ywarm = _minimize_hull(
                ws, cmat, cfg, eta, z, lam, self._budget,
                self.best_primal, self._on_round, ywarm)
            dual = min(dual, q, self._exact_dual(verts, svecs, lam))
            self._round_outer(ybar)
            nu_new, s_new, oval = self._oracle(ybar)
            pbar = float((cmat @ eta) @ ybar)
            agap = pbar - oval
            trace.append(TraceRow(t, (time.perf_counter() - t_start) * 1000.0,
                                  dual, oval, self.best_primal, len(verts), steps))
            if oval >= pbar - cfg.tol * (1.0 + abs(pbar)):
                stop = "converged"
                break
            if dual <= self.best_primal + cfg.tol * (1.0 + abs(dual)):
                stop = "optimal"
                break
            if t == cfg.max_outer:
                break
            key = self._vkey(nu_new, s_new)
            if key not in seen:
                seen.add(key)
                verts.append(nu_new)
                if svecs is not None:
                    svecs.append(s_new)
                cvecs.append(self._cfull(nu_new, s_new))
                eta = np.append(eta, 0.0)
        return SaddleState(
            n=self.f.n, k=self.k, config=cfg, vertices=verts, svecs=svecs,
            eta=eta, z=z, lam=lam, ybar=ybar, dual_bound=dual,
            best_primal=self.best_primal, best_set=self.best_set, trace=trace,
            oracle_exact=(self.k == 1), stop_reason=stop, approx_gap=agap,
            outer_iters=outer_done)


def solve(f, config=None):
    """Tightest width-k bound on max_A F(A) the simplicial loop can certify.

    Returns (dual_bound, best_set, state): dual_bound >= max F always (any
    feasible dual point certifies it, converged or not); best_set is the
    incumbent from threshold rounding plus a single-element polish sweep.
    """
    if config is None:
        config = SolverConfig()
    state = _Engine(f, config).run()
    return state.dual_bound, state.best_set, state
