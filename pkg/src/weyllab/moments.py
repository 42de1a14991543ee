"""Moment machinery: arc-restricted moments of |g|^u by trapezoid
quadrature with Richardson error estimates, exact even moments by solution
counting, the Upsilon-weighted arc mean value, oscillatory integrals with
an explicit decay bound, Waring representation counts, and two auxiliary
numeric inequality checks.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from . import arithmetic
from .arcs import IntervalSet, arc_list
from .errors import ResourceBudgetError
from .expsums import exponential_sum_grid, weyl_sum_grid
from .reports import CheckResult
from .smooth import SmoothSet

DEFAULT_SAMPLE_BUDGET = 30_000_000
DEFAULT_TUPLE_BUDGET = 10_000_000


@dataclass(frozen=True)
class MomentResult:
    value: float
    u: float
    arcs: str
    samples: int
    estimated_quadrature_error: float


def _interval_subdivisions(lo: float, hi: float, degree_scale: float,
                           min_samples: int) -> int:
    """Number of trapezoid subintervals: spacing <= min(1/(8*degree_scale),
    length/min_samples)."""
    length = hi - lo
    n = max(min_samples, math.ceil(length * 8.0 * degree_scale))
    return n


def _trapezoid_with_refinement(f: Callable[[np.ndarray], np.ndarray],
                               lo: float, hi: float, n: int) -> tuple[float, float, int]:
    """Composite trapezoid at n and 2n subintervals.

    Returns (value at half spacing, |I_2n - I_n|/3, samples used).  Node
    placement is deterministic; sums reduce pairwise (numpy order).
    """
    h = (hi - lo) / n
    nodes = lo + h * np.arange(n + 1)
    vals = f(nodes)
    coarse = h * (float(np.sum(vals)) - 0.5 * (float(vals[0]) + float(vals[-1])))
    mids = lo + h * (np.arange(n) + 0.5)
    mvals = f(mids)
    fine = 0.5 * coarse + 0.5 * h * float(np.sum(mvals))
    return fine, abs(fine - coarse) / 3.0, 2 * n + 1


def _quad_over_intervals(f, intervals, degree_scale: float, min_samples: int,
                         max_samples: int) -> tuple[float, float, int]:
    plan = []
    total = 0
    for lo, hi in intervals:
        flo, fhi = float(lo), float(hi)
        if fhi <= flo:
            continue
        n = _interval_subdivisions(flo, fhi, degree_scale, min_samples)
        plan.append((flo, fhi, n))
        total += 2 * n + 1
    if total > max_samples:
        raise ResourceBudgetError(
            f"quadrature would need about {total} samples over "
            f"{len(plan)} intervals; budget is {max_samples}"
        )
    pieces = []
    errors = []
    used = 0
    for flo, fhi, n in plan:
        v, e, m = _trapezoid_with_refinement(f, flo, fhi, n)
        pieces.append(v)
        errors.append(e)
        used += m
    value = float(np.sum(np.array(pieces))) if pieces else 0.0
    err = float(np.sum(np.array(errors))) if errors else 0.0
    return value, err, used


def quad_moment(k: int, s: SmoothSet, arcs: IntervalSet, u: float, *,
                min_samples: int = 64,
                max_samples: int = DEFAULT_SAMPLE_BUDGET) -> MomentResult:
    """Integral of |g(alpha)|^u over the given interval set.

    Composite trapezoid per interval with spacing at most
    min(1/(8 P^k), length/min_samples); the error estimate compares against
    half spacing (Richardson).  Exceeding the sample budget raises
    ResourceBudgetError up front, never silently truncating.
    """
    if u < 1:
        raise ValueError(f"u must be >= 1, got {u}")

    def f(alphas: np.ndarray) -> np.ndarray:
        return np.abs(weyl_sum_grid(k, alphas, s)) ** u

    degree_scale = float(s.P) ** k
    value, err, used = _quad_over_intervals(
        f, arcs.intervals, degree_scale, min_samples, max_samples)
    desc = f"{len(arcs.intervals)} intervals, measure={float(arcs.measure()):.6g}"
    return MomentResult(value=value, u=float(u), arcs=desc, samples=used,
                        estimated_quadrature_error=err)


# ---------------------------------------------------------------------------
# exact even moments


def _sum_counts(powers: Sequence[int], t: int, budget: int) -> Counter:
    """Counts of t-fold sums of the given k-th powers (hash-join
    convolution)."""
    if len(powers) ** t > budget:
        raise ResourceBudgetError(
            f"{len(powers)}^{t} t-fold sums exceed the budget {budget}")
    counts = Counter({0: 1})
    for _ in range(t):
        nxt: Counter = Counter()
        for v, c in counts.items():
            for p in powers:
                nxt[v + p] += c
        counts = nxt
    return counts


def exact_even_moment(k: int, s: SmoothSet, t: int, *,
                      budget: int = DEFAULT_TUPLE_BUDGET) -> int:
    """The 2t-th moment of g over [0,1) as an exact integer: the number of
    ordered 2t-tuples from s with x_1^k+...+x_t^k = x_{t+1}^k+...+x_{2t}^k
    (orthogonality)."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    counts = _sum_counts([x**k for x in s.elements], t, budget)
    return sum(c * c for c in counts.values())


def exact_even_moment_exhaustive(k: int, s: SmoothSet, t: int) -> int:
    """Second oracle: direct enumeration of all 2t-tuples (cardinality <= 30)."""
    if len(s.elements) > 30:
        raise ResourceBudgetError("exhaustive oracle is limited to 30 elements")
    powers = [x**k for x in s.elements]
    count = 0
    for tup in product(powers, repeat=2 * t):
        if sum(tup[:t]) == sum(tup[t:]):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Upsilon-weighted mean value over arcs


@dataclass(frozen=True)
class WeightedMeanValue:
    lhs: float
    bound_terms: tuple[float, float]  # (X^(2t-k), X^-k Q^(t+1))
    ratio: float
    samples: int
    estimated_quadrature_error: float
    n_arcs: int


def weighted_arc_mean_value(k: int, t: int, X: float, Q: float, Y: float,
                            delta: float, zset: Sequence[int], *,
                            min_samples: int = 64,
                            max_samples: int = DEFAULT_SAMPLE_BUDGET) -> WeightedMeanValue:
    """Quadrature of the weighted mean value

        integral over the arcs |q alpha - a| <= Y X^-k (q <= Q) of
        kappa_k(q)^2 (1 + X^k|alpha - a/q|)^(-delta) |sum_{x in Z} e(alpha x^k)|^(2t)

    against the two bound terms X^(2t-k) and X^-k Q^(t+1) (epsilon = 0).
    Parameters must satisfy delta > 1, Q >= 1, X >= 1, Y > 0 and
    Q Y <= X^k / 4 (which keeps the arcs disjoint).
    """
    if not (delta > 1 and Q >= 1 and X >= 1 and Y > 0):
        raise ValueError("need delta > 1, Q >= 1, X >= 1, Y > 0")
    if Q * Y > X**k / 4:
        raise ValueError(f"need Q*Y <= X^k/4, got QY={Q * Y}, X^k/4={X**k / 4}")
    if any(not 1 <= x <= X for x in zset):
        raise ValueError("zset must lie in [1, X]")
    xk = float(X) ** k
    arcs = arc_list(k, X, Q, width=Fraction(Y) / Fraction(X) ** k)
    powers = [int(x) ** k for x in zset]
    lhs = 0.0
    err = 0.0
    used = 0
    plan = []
    for frac, lo, hi in arcs:
        flo, fhi = float(lo), float(hi)
        if fhi <= flo:
            continue
        n = _interval_subdivisions(flo, fhi, xk, min_samples)
        plan.append((frac, flo, fhi, n))
        used += 2 * n + 1
    if used > max_samples:
        raise ResourceBudgetError(
            f"mean value needs about {used} samples; budget {max_samples}")
    used = 0
    for frac, flo, fhi, n in plan:
        k2 = float(arithmetic.kappa_squared(k, arithmetic.factorize(frac.q)))
        centre = frac.a / frac.q

        def f(alphas: np.ndarray, _k2=k2, _c=centre) -> np.ndarray:
            w = _k2 * (1.0 + xk * np.abs(alphas - _c)) ** (-delta)
            if not powers:
                return w * 0.0
            g = exponential_sum_grid(k, alphas, zset)
            return w * np.abs(g) ** (2 * t)

        v, e, m = _trapezoid_with_refinement(f, flo, fhi, n)
        lhs += v
        err += e
        used += m
    term1 = float(X) ** (2 * t - k)
    term2 = float(X) ** (-k) * float(Q) ** (t + 1)
    return WeightedMeanValue(
        lhs=lhs,
        bound_terms=(term1, term2),
        ratio=lhs / (term1 + term2),
        samples=used,
        estimated_quadrature_error=err,
        n_arcs=len(arcs),
    )


# ---------------------------------------------------------------------------
# oscillatory integrals with an explicit bound


@dataclass(frozen=True)
class FShape:
    """A monotonic amplitude on (0, infinity) from a small library:
    a constant, a power w^sigma, a slow logarithmic decay, or a tabulated
    piecewise-linear profile (rejected unless monotonic)."""

    kind: str
    c: float = 1.0
    sigma: float = 0.0
    knots: tuple[tuple[float, float], ...] = ()

    @staticmethod
    def constant(c: float = 1.0) -> "FShape":
        return FShape(kind="constant", c=c)

    @staticmethod
    def power(sigma: float) -> "FShape":
        if sigma == 0:
            raise ValueError("use FShape.constant for sigma = 0")
        return FShape(kind="power", sigma=sigma)

    @staticmethod
    def log_decay() -> "FShape":
        """f(w) = 1 / (1 + log(1 + w)), positive and decreasing."""
        return FShape(kind="log_decay")

    @staticmethod
    def tabulated(ws: Sequence[float], vals: Sequence[float]) -> "FShape":
        ws = [float(w) for w in ws]
        vals = [float(v) for v in vals]
        if len(ws) != len(vals) or len(ws) < 2 or sorted(ws) != ws:
            raise ValueError("need increasing abscissae matching the values")
        diffs = [b - a for a, b in zip(vals, vals[1:])]
        if not (all(d >= 0 for d in diffs) or all(d <= 0 for d in diffs)):
            raise ValueError("tabulated shape is not monotonic")
        return FShape(kind="tabulated", knots=tuple(zip(ws, vals)))

    def __call__(self, w):
        if self.kind == "constant":
            return self.c if np.isscalar(w) else np.full_like(np.asarray(w, float), self.c)
        if self.kind == "power":
            return np.asarray(w, float) ** self.sigma if not np.isscalar(w) else w**self.sigma
        if self.kind == "log_decay":
            return 1.0 / (1.0 + np.log1p(w))
        xs = [a for a, _ in self.knots]
        ys = [b for _, b in self.knots]
        return np.interp(w, xs, ys)

    def breakpoints(self, lo: float, hi: float) -> list[float]:
        if self.kind != "tabulated":
            return []
        return [a for a, _ in self.knots if lo < a < hi]


@dataclass(frozen=True)
class OscillatoryResult:
    value: float  # |integral|
    bound: float
    holds: bool
    estimated_error: float


def oscillatory_integral(shape: FShape, k: int, gamma: float, Y: float, X: float,
                         *, tol: float = 1e-8) -> OscillatoryResult:
    """|integral_Y^X f(w) e(gamma w^k) dw| against the decay bound
    (|f(X-)| + |f(Y+)|) * 2X / (1 + Y^k |gamma|).

    The substitution u = w^k makes the phase linear, and the oscillatory
    parts integrate with QUADPACK's cos/sin-weighted adaptive rule, so the
    cost stays modest even for many oscillations.
    """
    if not 0 < Y < X:
        raise ValueError(f"need 0 < Y < X, got Y={Y}, X={X}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")

    def h(u: float) -> float:
        w = u ** (1.0 / k)
        return float(shape(w)) * w / (k * u)  # f(w) * u^(1/k - 1) / k

    w_ang = 2 * math.pi * abs(gamma)
    lo, hi = Y**k, X**k
    cuts = [lo] + [b**k for b in shape.breakpoints(Y, X)] + [hi]
    re = im = err = 0.0
    for a, b in zip(cuts, cuts[1:]):
        if w_ang * (b - a) < 1e-6:  # effectively unweighted
            v, e = quad(h, a, b, epsabs=tol / 10, limit=200)
            re += v * math.cos(w_ang * (a + b) / 2)
            im += v * math.sin(w_ang * (a + b) / 2)
            err += e
            continue
        cycles = int(w_ang * (b - a) / (2 * math.pi)) + 1
        limit = max(100, min(10_000, cycles + 50))
        vc, ec = quad(h, a, b, weight="cos", wvar=w_ang, epsabs=tol / 10, limit=limit)
        vs, es = quad(h, a, b, weight="sin", wvar=w_ang, epsabs=tol / 10, limit=limit)
        re += vc
        im += vs
        err += ec + es
    if gamma < 0:
        im = -im
    value = math.hypot(re, im)
    fy = abs(float(shape(Y)))
    fx = abs(float(shape(X)))
    bound = (fx + fy) * 2 * X / (1 + Y**k * abs(gamma))
    return OscillatoryResult(value=value, bound=bound,
                             holds=value <= bound + 1e-6, estimated_error=err)


# ---------------------------------------------------------------------------
# Waring representation counts


def _nth_root_floor(n: int, k: int) -> int:
    if n < 1:
        return 0
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def representation_counts_upto(k: int, s_vars: int, n_max: int, *,
                               op_budget: int = 2_000_000_000) -> np.ndarray:
    """counts[n] = number of x in N^s with x_1^k+...+x_s^k = n, for all
    n <= n_max, by repeated shifted addition (exact int64)."""
    if s_vars < 1:
        raise ValueError("s must be >= 1")
    if n_max < 1:
        raise ValueError("n must be >= 1")
    r = _nth_root_floor(n_max, k)
    if s_vars * (n_max + 1) * max(1, r) > op_budget:
        raise ResourceBudgetError(
            f"representation count needs ~{s_vars * (n_max + 1) * r} operations; "
            f"budget {op_budget}")
    dp = np.zeros(n_max + 1, dtype=np.int64)
    dp[0] = 1
    for _ in range(s_vars):
        nxt = np.zeros_like(dp)
        for x in range(1, r + 1):
            xk = x**k
            nxt[xk:] += dp[: n_max + 1 - xk]
        dp = nxt
    return dp


def representation_count(k: int, s_vars: int, n: int, *,
                         op_budget: int = 2_000_000_000) -> int:
    """Ordered representations of n as a sum of s positive k-th powers."""
    return int(representation_counts_upto(k, s_vars, n, op_budget=op_budget)[n])


def lattice_count_leq(k: int, s_vars: int, n_max: int) -> int:
    """Direct lattice-point count of {x in N^s : x_1^k+...+x_s^k <= n_max}
    by nested enumeration (independent of the convolution route)."""
    if s_vars == 0:
        return 1
    total = 0
    x = 1
    while x**k <= n_max:
        total += lattice_count_leq(k, s_vars - 1, n_max - x**k)
        x += 1
    return total


# ---------------------------------------------------------------------------
# auxiliary numeric inequalities


def verify_reciprocal_sum_bound(X: float, J: float) -> CheckResult:
    """Check sum_{1<=j<=J} (1+jX)^(-1) <= 2J (1+XJ)^(-1) (1 + log(1+JX))
    for positive X, J (explicit constant 2)."""
    if X <= 0 or J <= 0:
        raise ValueError("X and J must be positive")
    j = np.arange(1, math.floor(J) + 1, dtype=np.float64)
    lhs = float(np.sum(1.0 / (1.0 + j * X))) if len(j) else 0.0
    rhs = 2 * J / (1 + X * J) * (1 + math.log1p(J * X))
    return CheckResult(
        name=f"reciprocal_sum_bound(X={X:.6g},J={J:.6g})",
        holds=lhs <= rhs,
        lhs=lhs,
        rhs=rhs,
        margin=rhs - lhs,
        detail="sum (1+jX)^-1 <= 2J(1+XJ)^-1 (1+log(1+JX))",
    )


@dataclass(frozen=True)
class DyadicEnvelopeRatio:
    lhs: float
    envelope: float
    ratio: float


def dyadic_envelope_ratio(k: int, J: int, lam: float, beta: float,
                          P: float) -> DyadicEnvelopeRatio:
    """Ratio of sum_{0<=j<=J} X_j (1 + X_j^k |beta|)^(-lam), X_j = 2^-j P,
    to the envelope P (1 + P^k |beta|)^(-1/k).

    Requires 1/k < lam <= 1 and 2^J <= P; the implicit constant is
    reported as this ratio, never asserted.
    """
    if not (1.0 / k < lam <= 1.0):
        raise ValueError(f"need 1/k < lambda <= 1, got {lam}")
    if J < 0 or 2**J > P:
        raise ValueError(f"need 0 <= J with 2^J <= P, got J={J}, P={P}")
    xs = P * 0.5 ** np.arange(J + 1)
    lhs = float(np.sum(xs * (1.0 + xs**k * abs(beta)) ** (-lam)))
    env = P * (1.0 + P**k * abs(beta)) ** (-1.0 / k)
    return DyadicEnvelopeRatio(lhs=lhs, envelope=env, ratio=lhs / env)


def dyadic_envelope_scan(k: int, J: int, lam: float, P: float,
                         n_grid: int = 200) -> np.ndarray:
    """Ratios over a log-spaced beta grid in [P^-k, P^k] (stability scan)."""
    betas = np.exp(np.linspace(math.log(P ** (-k)), math.log(P**k), n_grid))
    return np.array([
        dyadic_envelope_ratio(k, J, lam, float(b), P).ratio for b in betas
    ])
