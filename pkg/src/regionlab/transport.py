"""Discrete optimal transport with Mulholland generator functions.

A generator psi must be continuous, strictly increasing, unbounded, have
psi(0) = 0, and satisfy Mulholland's inequality so that
  d(x, y) = psi_inv( sum_i psi(|x_i - y_i|) )
is a metric on tuples.  Convex increasing psi with log-convex derivative
(all powers x**p, p >= 1) qualify; sqrt does not.

Solvers:
  brute_force_ot       all n! bijections, n <= 8; the unit-test oracle
  solve_exact          Hungarian assignment for equal-count uniform weights,
                       transportation LP otherwise
  wasserstein_discrete psi_inv(optimal mean transported psi-cost)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import BadParams, SizeLimitExceeded, UnbalancedMass

ASSIGNMENT_CAP = 4096
LP_CELL_CAP = 40_000
BRUTE_CAP = 8
_MASS_RTOL = 1e-9


@dataclass(frozen=True)
class MulhollandFn:
    """Generator with an explicit inverse; both vectorize over numpy arrays."""

    name: str
    psi: object
    psi_inv: object
    power: float | None = None

    def __call__(self, x):
        return self.psi(x)

    def inverse(self, y):
        return self.psi_inv(y)


def power_fn(p: float) -> MulhollandFn:
    if not p >= 1.0:
        raise BadParams("power generators need p >= 1")
    if p == 1.0:
        name = "x"
    elif float(p).is_integer():
        name = f"x^{int(p)}"
    else:
        name = f"x^{p:g}"
    return MulhollandFn(name, lambda x, _p=p: np.power(x, _p),
                        lambda y, _p=p: np.power(y, 1.0 / _p), power=p)


def sqrt_fn() -> MulhollandFn:
    """Concave generator; violates the tuple inequality.  Kept as a negative control."""
    return MulhollandFn("sqrt_x", np.sqrt, lambda y: np.square(y), power=0.5)


def from_callable(name: str, psi, hi: float = 1e9) -> MulhollandFn:
    """Wrap a strictly increasing psi with a bisection inverse on [0, hi]."""

    def inv(y):
        y = np.asarray(y, dtype=float)
        lo = np.zeros_like(y)
        up = np.full_like(y, hi)
        for _ in range(200):
            mid = 0.5 * (lo + up)
            below = psi(mid) < y
            lo = np.where(below, mid, lo)
            up = np.where(below, up, mid)
        return 0.5 * (lo + up)

    return MulhollandFn(name, psi, inv)


def parse_generator(token: str) -> MulhollandFn:
    """Parse W1 / W2 / Wp:<p> style suffixes and plain power names."""
    t = token.strip().lower()
    if t in ("x", "w1", "1"):
        return power_fn(1.0)
    if t in ("x^2", "w2", "2"):
        return power_fn(2.0)
    for prefix in ("x^", "wp:"):
        if t.startswith(prefix):
            try:
                p = float(t[len(prefix):])
            except ValueError:
                raise BadParams(f"unknown generator spec: {token!r}") from None
            return power_fn(p)
    raise BadParams(f"unknown generator spec: {token!r}")


def check_mulholland(f: MulhollandFn, trials: int = 200, seed: int = 0,
                     max_len: int = 8, tol: float = 1e-9) -> dict:
    """Search random nonnegative tuples for a violation of
    psi_inv(sum psi(x_i + y_i)) <= psi_inv(sum psi(x_i)) + psi_inv(sum psi(y_i)).

    Returns {"ok": bool, "counterexample": (x, y) | None, "trials": int}.
    """
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(1, max_len + 1))
        x = rng.uniform(0.0, 4.0, n)
        y = rng.uniform(0.0, 4.0, n)
        # sparse tuples stress the inequality hardest
        if rng.random() < 0.5:
            x[rng.random(n) < 0.5] = 0.0
            y[rng.random(n) < 0.5] = 0.0
        lhs = float(f.inverse(f(x + y).sum()))
        rhs = float(f.inverse(f(x).sum())) + float(f.inverse(f(y).sum()))
        if lhs > rhs + tol * max(1.0, rhs):
            return {"ok": False, "counterexample": (x.tolist(), y.tolist()),
                    "trials": trials}
    return {"ok": True, "counterexample": None, "trials": trials}


@dataclass(frozen=True)
class WeightedPoints:
    """Finite measure: support points (n, 2) with positive weights (n,)."""

    points: np.ndarray
    weights: np.ndarray

    @staticmethod
    def uniform(points) -> "WeightedPoints":
        pts = np.asarray(points, dtype=float)
        n = pts.shape[0]
        return WeightedPoints(pts, np.full(n, 1.0 / n))

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if self.points.ndim != 2 or self.points.shape[1] != 2:
            raise BadParams("points must have shape (n, 2)")
        if self.weights.shape != (self.points.shape[0],):
            raise BadParams("weights must match points")
        if np.any(self.weights <= 0):
            raise BadParams("weights must be positive")

    @property
    def mass(self) -> float:
        return float(self.weights.sum())


@dataclass(frozen=True)
class TransportPlan:
    """Sparse optimal coupling: rows (i, j, mass) plus the total psi-cost."""

    pairs: np.ndarray       # (k, 2) int indices into source/target
    masses: np.ndarray      # (k,)
    total_cost: float
    generator: str

    def marginals(self, n_src: int, n_tgt: int):
        ms = np.zeros(n_src)
        mt = np.zeros(n_tgt)
        np.add.at(ms, self.pairs[:, 0], self.masses)
        np.add.at(mt, self.pairs[:, 1], self.masses)
        return ms, mt


def _cost_matrix(src: WeightedPoints, tgt: WeightedPoints, f: MulhollandFn) -> np.ndarray:
    from scipy.spatial.distance import cdist
    return f(cdist(src.points, tgt.points))


def brute_force_ot(src: WeightedPoints, tgt: WeightedPoints, f: MulhollandFn) -> TransportPlan:
    """Minimum-cost bijection by enumeration.  n <= 8, uniform equal weights."""
    n, m = src.points.shape[0], tgt.points.shape[0]
    if n != m or n > BRUTE_CAP:
        raise SizeLimitExceeded(f"brute force handles equal counts up to {BRUTE_CAP}")
    if (np.ptp(src.weights) > _MASS_RTOL * src.weights[0]
            or np.ptp(tgt.weights) > _MASS_RTOL * tgt.weights[0]):
        raise BadParams("brute force expects uniform weights")
    if abs(src.mass - tgt.mass) > _MASS_RTOL * max(src.mass, tgt.mass):
        raise UnbalancedMass("source and target masses differ")
    cost = _cost_matrix(src, tgt, f)
    w = src.weights[0]
    best = None
    best_perm = None
    for perm in permutations(range(n)):
        c = cost[np.arange(n), perm].sum()
        if best is None or c < best - 1e-15:
            best = c
            best_perm = perm
    pairs = np.stack([np.arange(n), np.asarray(best_perm)], axis=1)
    return TransportPlan(pairs, np.full(n, w), float(best * w), f.name)


def solve_exact(src: WeightedPoints, tgt: WeightedPoints, f: MulhollandFn) -> TransportPlan:
    """Exact balanced transport plan.

    Equal-count uniform weights go through the Hungarian assignment solver
    (up to 4096 points); general weighted instances go through the
    transportation LP and are capped at 40000 cost-matrix cells.
    """
    if abs(src.mass - tgt.mass) > _MASS_RTOL * max(src.mass, tgt.mass):
        raise UnbalancedMass(f"masses differ: {src.mass:.12g} vs {tgt.mass:.12g}")
    n, m = src.points.shape[0], tgt.points.shape[0]
    uniform = (n == m
               and np.ptp(src.weights) <= _MASS_RTOL * src.weights[0]
               and np.ptp(tgt.weights) <= _MASS_RTOL * tgt.weights[0])
    if uniform:
        if n > ASSIGNMENT_CAP:
            raise SizeLimitExceeded(f"assignment instances capped at {ASSIGNMENT_CAP} points")
        from scipy.optimize import linear_sum_assignment
        cost = _cost_matrix(src, tgt, f)
        rows, cols = linear_sum_assignment(cost)
        w = src.weights[0]
        pairs = np.stack([rows, cols], axis=1)
        total = float(cost[rows, cols].sum() * w)
        return TransportPlan(pairs, np.full(n, w), total, f.name)
    if n * m > LP_CELL_CAP:
        raise SizeLimitExceeded(
            f"weighted LP instances capped at {LP_CELL_CAP} cells, got {n}x{m}")
    return _solve_lp(src, tgt, f)


def _solve_lp(src: WeightedPoints, tgt: WeightedPoints, f: MulhollandFn) -> TransportPlan:
    from scipy.optimize import linprog
    from scipy.sparse import lil_matrix
    n, m = src.points.shape[0], tgt.points.shape[0]
    cost = _cost_matrix(src, tgt, f).ravel()
    a_eq = lil_matrix((n + m, n * m))
    for i in range(n):
        a_eq[i, i * m:(i + 1) * m] = 1.0
    for j in range(m):
        a_eq[n + j, j::m] = 1.0
    b_eq = np.concatenate([src.weights, tgt.weights * (src.mass / tgt.mass)])
    res = linprog(cost, A_eq=a_eq.tocsr(), b_eq=b_eq,
                  bounds=(0, None), method="highs")
    if not res.success:
        raise BadParams(f"transport LP failed: {res.message}")
    x = res.x.reshape(n, m)
    ii, jj = np.nonzero(x > 1e-12 * src.mass)
    pairs = np.stack([ii, jj], axis=1)
    return TransportPlan(pairs, x[ii, jj], float((cost.reshape(n, m) * x).sum()), f.name)


def wasserstein_discrete(src: WeightedPoints, tgt: WeightedPoints, f: MulhollandFn) -> float:
    """psi_inv of the mean transported psi-cost under the optimal plan."""
    plan = solve_exact(src, tgt, f)
    return float(f.inverse(plan.total_cost / src.mass))
