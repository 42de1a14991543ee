"""Hardy-Littlewood dissection: arc construction around rationals a/q,
point classification through continued-fraction best approximations, the
arc-local weight Upsilon, and evaluable envelope functions for smooth
Weyl sums on major arcs.

Arc endpoints are kept as exact rationals (floats enter as their exact
binary values), so measures, set differences and containment tests carry
no rounding.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import arithmetic


@dataclass(frozen=True)
class ReducedFraction:
    """A reduced rational a/q with 0 <= a <= q locating an arc centre."""

    a: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")
        if not 0 <= self.a <= self.q:
            raise ValueError(f"need 0 <= a <= q, got a={self.a}, q={self.q}")
        if gcd(self.a, self.q) != 1:
            raise ValueError(f"{self.a}/{self.q} is not reduced")

    def as_fraction(self) -> Fraction:
        return Fraction(self.a, self.q)


@dataclass(frozen=True)
class IntervalSet:
    """A finite union of disjoint closed subintervals of [0, 1)."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    @staticmethod
    def from_intervals(items) -> "IntervalSet":
        """Sort, clip to [0,1) and merge overlapping or touching intervals."""
        one = Fraction(1)
        cleaned = []
        for lo, hi in items:
            lo, hi = Fraction(lo), Fraction(hi)
            lo = max(lo, Fraction(0))
            hi = min(hi, one)
            if lo <= hi and lo < one:
                cleaned.append((lo, hi))
        cleaned.sort()
        merged: list[list[Fraction]] = []
        for lo, hi in cleaned:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return IntervalSet(tuple((lo, hi) for lo, hi in merged))

    @staticmethod
    def full() -> "IntervalSet":
        return IntervalSet(((Fraction(0), Fraction(1)),))

    @staticmethod
    def empty() -> "IntervalSet":
        return IntervalSet(())

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def __contains__(self, alpha) -> bool:
        x = Fraction(alpha)
        los = [lo for lo, _ in self.intervals]
        i = bisect_right(los, x) - 1
        return i >= 0 and x <= self.intervals[i][1]

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.from_intervals(list(self.intervals) + list(other.intervals))

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        """Set difference, up to the measure-zero endpoints of the removed
        intervals (pieces are kept closed; degenerate points are dropped)."""
        out = []
        for lo, hi in self.intervals:
            pieces = [(lo, hi)]
            for blo, bhi in other.intervals:
                nxt = []
                for plo, phi in pieces:
                    if bhi <= plo or blo >= phi:
                        nxt.append((plo, phi))
                        continue
                    if blo > plo:
                        nxt.append((plo, blo))
                    if bhi < phi:
                        nxt.append((bhi, phi))
                pieces = nxt
                if not pieces:
                    break
            out.extend(p for p in pieces if p[0] < p[1])
        return IntervalSet(tuple(out))

    def contains_set(self, other: "IntervalSet") -> bool:
        """True when every interval of `other` lies inside one of ours."""
        for lo, hi in other.intervals:
            los = [l for l, _ in self.intervals]
            i = bisect_right(los, lo) - 1
            if i < 0 or hi > self.intervals[i][1]:
                return False
        return True


def _validate_dissection(k: int, P, Q) -> tuple[Fraction, Fraction]:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    Pf, Qf = Fraction(P), Fraction(Q)
    if Pf <= 0:
        raise ValueError(f"P must be positive, got {P}")
    if not (1 <= Qf and Qf * Qf <= Pf**k):
        raise ValueError(f"Q must lie in [1, P^(k/2)], got Q={Q}, P={P}, k={k}")
    return Pf, Qf


def classify(alpha, k: int, P, Q) -> ReducedFraction | None:
    """Locate alpha in the dissection of level Q: return the fraction a/q of
    minimal q with q <= Q, gcd(a,q) = 1 and |q*alpha - a| <= Q*P^(-k), or
    None when alpha is a minor-arc point.

    Walks the continued-fraction convergents of alpha; by the law of best
    approximation every q' below a convergent denominator q_j satisfies
    |q' alpha - a'| >= |q_{j-1} alpha - p_{j-1}|, so the first convergent
    meeting the threshold has minimal denominator.  All comparisons are in
    exact integer arithmetic.
    """
    Pf, Qf = _validate_dissection(k, P, Q)
    af = Fraction(alpha)
    if not 0 <= af < 1:
        raise ValueError(f"alpha must lie in [0,1), got {alpha}")
    delta = Qf / Pf**k
    q_limit = math.floor(Qf)
    num, den = af.numerator, af.denominator
    # convergents p/q of num/den; remainder r = q*alpha - p = rnum/den
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1  # zeroth convergent floor(alpha)/1 = 0/1
    n, d = den, num  # Euclid state: the next partial quotient is n // d
    while True:
        if q_cur > q_limit:
            return None
        rnum = q_cur * num - p_cur * den  # signed, alternating
        if abs(rnum) * delta.denominator <= delta.numerator * den:
            return ReducedFraction(a=p_cur, q=q_cur)
        if d == 0:  # alpha exactly rational and already emitted
            return None
        a_i = n // d
        n, d = d, n - a_i * d
        p_prev, p_cur = p_cur, a_i * p_cur + p_prev
        q_prev, q_cur = q_cur, a_i * q_cur + q_prev


def classify_brute(alpha, k: int, P, Q) -> ReducedFraction | None:
    """Oracle classifier: scan q = 1..Q ascending with a = round(q*alpha)."""
    Pf, Qf = _validate_dissection(k, P, Q)
    af = Fraction(alpha)
    if not 0 <= af < 1:
        raise ValueError(f"alpha must lie in [0,1), got {alpha}")
    delta = Qf / Pf**k
    for q in range(1, math.floor(Qf) + 1):
        a = math.floor(q * af + Fraction(1, 2))
        if abs(q * af - a) <= delta:
            g = gcd(a, q)
            return ReducedFraction(a=a // g, q=q // g)
    return None


def arc_list(k: int, P, Q, *, width=None) -> list[tuple[ReducedFraction, Fraction, Fraction]]:
    """All arcs (centre fraction, lo, hi) with |q*alpha - a| <= width,
    0 <= a <= q <= Q, gcd(a,q) = 1, clipped to [0,1).

    width defaults to Q*P^(-k).  Arcs are emitted sorted by centre; they
    may overlap when Q is large relative to P^k.
    """
    Pf, Qf = _validate_dissection(k, P, Q)
    delta = Fraction(width) if width is not None else Qf / Pf**k
    one = Fraction(1)
    arcs = []
    for q in range(1, math.floor(Qf) + 1):
        half = delta / q
        a_vals = (0, 1) if q == 1 else (a for a in range(1, q) if gcd(a, q) == 1)
        for a in a_vals:
            c = Fraction(a, q)
            lo = max(c - half, Fraction(0))
            hi = min(c + half, one)
            if lo < one:
                arcs.append((ReducedFraction(a=a, q=q), lo, hi))
    arcs.sort(key=lambda t: (t[1], t[2]))
    return arcs


def major_arcs(k: int, P, Q) -> IntervalSet:
    """The union over q <= Q, (a,q)=1 of {alpha in [0,1): |q alpha - a| <= Q P^-k},
    as a merged interval set with exact endpoints."""
    return IntervalSet.from_intervals((lo, hi) for _, lo, hi in arc_list(k, P, Q))


def narrow_arcs(k: int, P, Q) -> IntervalSet:
    """Dissection ring at level Q: arcs of level Q minus arcs of level Q/2
    (exact set difference; empty lower level when Q/2 < 1)."""
    outer = major_arcs(k, P, Q)
    half = Fraction(Q) / 2
    if half < 1:
        return outer
    return outer.difference(major_arcs(k, P, half))


def minor_arcs(k: int, P, Q) -> IntervalSet:
    """The complement [0,1) minus the level-Q arcs."""
    return IntervalSet.full().difference(major_arcs(k, P, Q))


def arc_measure_formula(k: int, P, Q) -> Fraction:
    """Analytic total arc length: 2*delta for the two boundary half-arcs at
    0/1 and 1/1, plus phi(q)*2*delta/q for 2 <= q <= Q, delta = Q P^-k.

    Equals the merged-union measure exactly whenever the arcs are disjoint
    (guaranteed by 2 Q^2 < P^k).
    """
    Pf, Qf = _validate_dissection(k, P, Q)
    delta = Qf / Pf**k
    total = 2 * delta
    for q in range(2, math.floor(Qf) + 1):
        total += arithmetic.euler_phi(arithmetic.factorize(q)) * 2 * delta / q
    return total


def upsilon(alpha, frac: ReducedFraction, k: int, delta: float, X: float) -> float:
    """Arc-local weight kappa_k(q)^2 * (1 + X^k |alpha - a/q|)^(-delta).

    Implemented exactly as defined; the value can exceed 1 near centres
    with small q since kappa(q)^2 may exceed 1 (for instance q = 2).
    """
    k2 = arithmetic.kappa_squared(k, arithmetic.factorize(frac.q))
    offset = abs(float(alpha) - frac.a / frac.q)
    return float(k2) * (1.0 + float(X) ** k * offset) ** (-delta)


@dataclass(frozen=True)
class EnvelopeParams:
    """Shared envelope inputs; L = log P and L2 = log log (3R) are derived.

    epsilon enters as q^epsilon; c scales the exp(-c sqrt(log P)) error
    term of the small-q envelope and is a configuration knob, not a value
    the theory fixes.
    """

    k: int
    P: float
    R: float
    epsilon: float = 0.01
    c: float = 1.0

    def __post_init__(self) -> None:
        if not (2 <= self.R <= self.P):
            raise ValueError(f"need 2 <= R <= P, got R={self.R}, P={self.P}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")

    @property
    def L(self) -> float:
        return math.log(self.P)

    @property
    def L2(self) -> float:
        return math.log(math.log(3 * self.R))


def _offsets(alpha, frac: ReducedFraction, params: EnvelopeParams) -> tuple[float, float, float]:
    pk = float(params.P) ** params.k
    off = abs(float(alpha) - frac.a / frac.q)
    script_l = math.log(2 + pk * off)
    return pk, off, script_l


def envelope_general(alpha, frac: ReducedFraction, params: EnvelopeParams,
                     variant: str = "gnu") -> float:
    """Wide-range major-arc envelope, implicit constant 1.

    variant "gnu" (truncated sum):
        q^eps kappa(q)^(1/2) P L (L2 scrL)^(1/2) (1+P^k|alpha-a/q|)^(-1/2)
        + q^eps P^(3/4) R^(1/2) (L L2)^(1/4) (q + P^k|q alpha - a|)^(1/8)
    variant "g" (full sum): the first term carries exponent -1/k and drops
    the scrL^(1/2) factor for k >= 3; for k = 2 it carries scrL^(3/2) with
    exponent -1/2.
    """
    k = params.k
    pk, off, script_l = _offsets(alpha, frac, params)
    qe = frac.q**params.epsilon
    kap_half = float(arithmetic.kappa_squared(k, arithmetic.factorize(frac.q))) ** 0.25
    second = (qe * params.P**0.75 * params.R**0.5 * (params.L * params.L2) ** 0.25
              * (frac.q + pk * frac.q * off) ** 0.125)
    if variant == "gnu":
        first = (qe * kap_half * params.P * params.L * (params.L2 * script_l) ** 0.5
                 * (1 + pk * off) ** -0.5)
    elif variant == "g":
        if k >= 3:
            first = (qe * kap_half * params.P * params.L * params.L2**0.5
                     * (1 + pk * off) ** (-1.0 / k))
        else:
            first = (qe * kap_half * params.P * params.L * params.L2**0.5
                     * script_l**1.5 * (1 + pk * off) ** -0.5)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return first + second


def envelope_small_q(alpha, frac: ReducedFraction, params: EnvelopeParams,
                     variant: str = "gnu") -> float:
    """Envelope for small q (q bounded by a power of log P), implicit
    constant 1:

        kappa(q) psi(q) P (1+P^k|alpha-a/q|)^(-e)
        + P exp(-c sqrt(log P)) (1+P^k|alpha-a/q|)

    with e = 1 for the truncated sum ("gnu") and e = 1/k for the full sum
    ("g").
    """
    k = params.k
    pk, off, _ = _offsets(alpha, frac, params)
    f = arithmetic.factorize(frac.q)
    kap = float(arithmetic.kappa_squared(k, f)) ** 0.5
    psi_q = float(arithmetic.psi(f))
    expo = 1.0 if variant == "gnu" else 1.0 / k
    if variant not in ("gnu", "g"):
        raise ValueError(f"unknown variant {variant!r}")
    first = kap * psi_q * params.P * (1 + pk * off) ** (-expo)
    second = params.P * math.exp(-params.c * params.L**0.5) * (1 + pk * off)
    return first + second
