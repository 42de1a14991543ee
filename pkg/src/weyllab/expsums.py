"""Exponential sums over k-th powers: smooth Weyl sums, the complete sum
S(q,a) over all residues, the reduced-residue sum W(q,a), and the
psi-weighted divisor convolution scriptS(q,a) = q^-1 sum_{d|q} psi(d) |W(d, a(q/d)^(k-1))|.

Rational phases a*r^k/q are reduced modulo 1 in exact integer arithmetic
(modular exponentiation) before any trigonometric call, so evaluation
error is independent of |a|.  Scalar Weyl sums use math.fsum, which is
exactly rounded and hence independent of element order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import gcd, tau
from typing import Iterable, Sequence

import numpy as np

from . import arithmetic
from .reports import CheckResult
from .smooth import SmoothSet

# evaluating e(alpha x^k) on numpy grids keeps phase error below ~x^k * 2^-52;
# scalar paths are exact in the phase


def _phase_fraction(alpha, n: int) -> float:
    """frac(alpha * n) computed exactly through integer arithmetic.

    Works for float, int and Fraction alpha: every such value is an exact
    rational m/d, and frac(alpha*n) = ((m*n) mod d)/d.
    """
    m, d = alpha.as_integer_ratio() if hasattr(alpha, "as_integer_ratio") \
        else float(alpha).as_integer_ratio()
    return ((m * n) % d) / d


def exponential_sum(k: int, alpha, xs: Iterable[int]) -> complex:
    """sum over x in xs of e(alpha * x^k), compensated (exactly rounded)."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    cos_terms = []
    sin_terms = []
    for x in xs:
        t = _phase_fraction(alpha, x**k)
        cos_terms.append(math.cos(tau * t))
        sin_terms.append(math.sin(tau * t))
    return complex(math.fsum(cos_terms), math.fsum(sin_terms))


def weyl_sum(k: int, alpha, s: SmoothSet) -> complex:
    """Smooth Weyl sum g(alpha) = sum_{x in s} e(alpha x^k)."""
    return exponential_sum(k, alpha, s.elements)


def exponential_sum_grid(k: int, alphas: np.ndarray, xs: Sequence[int],
                         chunk: int = 1 << 16) -> np.ndarray:
    """Vectorised sum_{x in xs} e(alpha x^k) for an array of alpha values.

    Phases are reduced mod 1 in float64, so per-term phase error is about
    max(x)^k * 2^-52 * 2pi; fine for quadrature at desk scale.  Summation
    over xs uses numpy pairwise reduction in a fixed order.
    """
    alphas = np.asarray(alphas, dtype=np.float64)
    if len(xs) == 0:
        return np.zeros(alphas.shape, dtype=np.complex128)
    powers = np.array([float(x) ** k for x in xs], dtype=np.float64)
    out = np.empty(alphas.shape, dtype=np.complex128)
    rows = max(1, chunk // max(1, len(xs)))
    for i in range(0, len(alphas), rows):
        block = alphas[i: i + rows, None] * powers[None, :]
        np.mod(block, 1.0, out=block)
        out[i: i + rows] = np.exp(2j * np.pi * block).sum(axis=1)
    return out


def weyl_sum_grid(k: int, alphas: np.ndarray, s: SmoothSet) -> np.ndarray:
    return exponential_sum_grid(k, alphas, s.elements)


# ---------------------------------------------------------------------------
# complete and reduced sums at rational points


def _pow_mod_vec(base: np.ndarray, e: int, mod: int) -> np.ndarray:
    """base**e mod `mod`, elementwise, int64-safe for mod <= ~3e9."""
    result = np.ones_like(base)
    b = base % mod
    while e:
        if e & 1:
            result = result * b % mod
        b = b * b % mod
        e >>= 1
    return result


@lru_cache(maxsize=4096)
def _trig_tables(q: int) -> tuple[np.ndarray, np.ndarray]:
    ang = (2 * np.pi / q) * np.arange(q)
    return np.cos(ang), np.sin(ang)


@lru_cache(maxsize=4096)
def _reduced_residue_counts(k: int, q: int) -> np.ndarray:
    """counts[j] = #{r in [1,q] : gcd(r,q)=1, r^k = j (mod q)}."""
    if q == 1:
        return np.array([1], dtype=np.int64)
    r = np.arange(q, dtype=np.int64)
    mask = np.gcd(r, q) == 1
    rk = _pow_mod_vec(r[mask], k, q)
    return np.bincount(rk, minlength=q).astype(np.int64)


@lru_cache(maxsize=4096)
def _all_residue_counts(k: int, q: int) -> np.ndarray:
    """counts[j] = #{r in [1,q] : r^k = j (mod q)}."""
    if q == 1:
        return np.array([1], dtype=np.int64)
    r = np.arange(1, q + 1, dtype=np.int64)
    rk = _pow_mod_vec(r, k, q)
    return np.bincount(rk, minlength=q).astype(np.int64)


def _counts_sum(counts: np.ndarray, a: int, q: int) -> complex:
    idx = (a % q) * np.arange(q, dtype=np.int64) % q
    cos_t, sin_t = _trig_tables(q)
    c = counts.astype(np.float64)
    return complex(np.dot(c, cos_t[idx]), np.dot(c, sin_t[idx]))


def complete_sum_S(k: int, q: int, a: int) -> complex:
    """S(q,a) = sum_{r=1}^{q} e(a r^k / q), phases exact mod q."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    return _counts_sum(_all_residue_counts(k, q), a, q)


@lru_cache(maxsize=1 << 18)
def _w_cached(k: int, q: int, a_mod: int) -> complex:
    return _counts_sum(_reduced_residue_counts(k, q), a_mod, q)


def reduced_sum_W(k: int, q: int, a: int) -> complex:
    """W(q,a) = sum over r in [1,q] coprime to q of e(a r^k / q)."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    return _w_cached(k, q, a % q)


@lru_cache(maxsize=4096)
def _w_abs_table(k: int, q: int) -> np.ndarray:
    """|W(q, b)| for all residues b mod q at once, via an FFT of the
    residue-count vector (the DFT index runs over b)."""
    counts = _reduced_residue_counts(k, q).astype(np.float64)
    return np.abs(np.fft.fft(counts))


def clear_caches() -> None:
    for fn in (_trig_tables, _reduced_residue_counts, _all_residue_counts,
               _w_cached, _w_abs_table):
        fn.cache_clear()


def script_S(k: int, q: int, a: int) -> float:
    """scriptS(q,a) = q^-1 sum_{d|q} psi(d) |W(d, a*(q/d)^(k-1))| for
    gcd(a,q) = 1."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if gcd(a, q) != 1:
        raise ValueError(f"a and q must be coprime, got a={a}, q={q}")
    total = 0.0
    for d in arithmetic.divisors(q):
        if d == 1:
            total += 1.0
            continue
        b = a * pow(q // d, k - 1, d) % d
        total += float(arithmetic.psi(d)) * abs(reduced_sum_W(k, d, b))
    return total / q


# ---------------------------------------------------------------------------
# verification scans


def verify_w_properties(
    k_values: Sequence[int] = (2, 3, 4, 6),
    *,
    vanish_p_max: int = 31,
    vanish_pt_max: int = 10**5,
    weil_p_max: int = 499,
    n_identity: int = 500,
    seed: int = 1,
) -> list[CheckResult]:
    """Structural checks on W(q,a):

    vanishing     W(p^t, a) = 0 for (a,p)=1 once t >= theta+2 (p >= 3)
                  or t >= theta+3 (p = 2), where p^theta || k;
                  tested as |W| <= 1e-6 * p^t.
    weil_bound    |W(p,a)| <= 1 + ((k,p-1)-1) sqrt(p) for (a,p)=1.
    scaling       W(p^t, a p^tau) = p^tau W(p^(t-tau), a) for 1 <= tau < t.
    splitting     W(r1 r2, c) = W(r1, c r2^(k-1)) W(r2, c r1^(k-1)) for
                  coprime r1, r2 and any integer c.
    """
    import random

    rng = random.Random(seed)
    results: list[CheckResult] = []
    primes = [p for p in arithmetic.primes_upto(max(vanish_p_max, weil_p_max))]

    # clause: vanishing
    worst = 0.0
    worst_case = ""
    cases = 0
    for k in k_values:
        for p in primes:
            if p > vanish_p_max:
                break
            theta = 0
            kk = k
            while kk % p == 0:
                theta += 1
                kk //= p
            t_min = theta + 3 if p == 2 else theta + 2
            t = t_min
            while p**t <= vanish_pt_max:
                q = p**t
                wabs = _w_abs_table(k, q)
                mask = np.arange(q) % p != 0  # coprime a only
                m = float(wabs[mask].max() / q)
                cases += int(mask.sum())
                if m > worst:
                    worst = m
                    worst_case = f"k={k},p={p},t={t}"
                t += 1
    results.append(CheckResult(
        name="w_vanishing",
        holds=worst <= 1e-6,
        lhs=worst,
        rhs=1e-6,
        margin=1e-6 - worst,
        detail=f"max |W(p^t,a)|/p^t over {cases} coprime a ({worst_case})",
    ))

    # clause: Weil-type bound at prime modulus
    worst_excess = -math.inf
    worst_case = ""
    for k in k_values:
        for p in primes:
            if p > weil_p_max:
                break
            wabs = _w_abs_table(k, p)
            bound = 1 + (gcd(k, p - 1) - 1) * math.sqrt(p)
            excess = float(wabs[1:].max()) - bound
            if excess > worst_excess:
                worst_excess = excess
                worst_case = f"k={k},p={p}"
    results.append(CheckResult(
        name="w_weil_bound",
        holds=worst_excess <= 1e-9,
        lhs=worst_excess,
        rhs=1e-9,
        margin=1e-9 - worst_excess,
        detail=f"max |W(p,a)| - (1+((k,p-1)-1)sqrt(p)) ({worst_case})",
    ))

    # clause: prime-power scaling identity
    worst = 0.0
    small_primes = [p for p in primes if p <= 31]
    for _ in range(n_identity):
        k = rng.choice(list(k_values))
        p = rng.choice(small_primes)
        t_max = 2
        while p ** (t_max + 1) <= 10**4:
            t_max += 1
        t = rng.randint(2, t_max)
        tau_ = rng.randint(1, t - 1)
        a = rng.randrange(1, p ** (t - tau_))
        while a % p == 0:
            a = rng.randrange(1, p ** (t - tau_))
        lhs = reduced_sum_W(k, p**t, a * p**tau_)
        rhs = p**tau_ * reduced_sum_W(k, p ** (t - tau_), a)
        err = abs(lhs - rhs) / max(1.0, abs(rhs))
        worst = max(worst, err)
    results.append(CheckResult(
        name="w_prime_power_scaling",
        holds=worst <= 1e-9,
        lhs=worst,
        rhs=1e-9,
        margin=1e-9 - worst,
        detail=f"max rel. error of W(p^t, a p^tau) = p^tau W(p^(t-tau), a) over {n_identity} draws",
    ))

    # clause: coprime splitting
    worst = 0.0
    for _ in range(n_identity):
        k = rng.choice(list(k_values))
        while True:
            r1 = rng.randint(2, 140)
            r2 = rng.randint(2, 140)
            if gcd(r1, r2) == 1:
                break
        c = rng.randrange(0, r1 * r2)
        lhs = reduced_sum_W(k, r1 * r2, c)
        rhs = reduced_sum_W(k, r1, c * r2 ** (k - 1)) * reduced_sum_W(k, r2, c * r1 ** (k - 1))
        err = abs(lhs - rhs) / max(1.0, abs(rhs))
        worst = max(worst, err)
    results.append(CheckResult(
        name="w_coprime_splitting",
        holds=worst <= 1e-9,
        lhs=worst,
        rhs=1e-9,
        margin=1e-9 - worst,
        detail=f"max rel. error of the coprime factorisation over {n_identity} draws",
    ))
    return results


def verify_script_s_bound(
    k_values: Sequence[int] = (2, 3, 4, 5),
    *,
    q_max: int = 300,
    n_random: int = 1000,
    random_q_max: int = 5000,
    slack: float = 1e-9,
    seed: int = 1,
) -> list[CheckResult]:
    """Scan scriptS(q,a) <= 6k * kappa_k(q) * psi(q) + slack.

    Covers every coprime pair (q,a) with q <= q_max, plus seeded random
    coprime pairs with q <= random_q_max, for each k.  The scan runs
    vectorised over a: |W(d, .)| for all residues comes from one FFT per
    (k, d).
    """
    import random

    rng = random.Random(seed)
    results: list[CheckResult] = []
    for k in k_values:
        worst_margin = math.inf
        worst_case = ""
        checked = 0
        for q in range(1, q_max + 1):
            a_all = np.arange(1, q + 1, dtype=np.int64)
            a_cop = a_all[np.gcd(a_all, q) == 1]
            svals = np.zeros(len(a_cop))
            for d in arithmetic.divisors(q):
                if d == 1:
                    svals += 1.0
                    continue
                b = a_cop % d * pow(q // d, k - 1, d) % d
                svals += float(arithmetic.psi(d)) * _w_abs_table(k, d)[b]
            svals /= q
            f = arithmetic.factorize(q)
            bound = 6 * k * arithmetic.kappa(k, f) * float(arithmetic.psi(f))
            margin = bound + slack - float(svals.max())
            checked += len(a_cop)
            if margin < worst_margin:
                worst_margin = margin
                amax = int(a_cop[int(svals.argmax())])
                worst_case = f"q={q},a={amax}"
        for _ in range(n_random):
            q = rng.randint(1, random_q_max)
            a = rng.randint(1, q)
            while gcd(a, q) != 1:
                a = rng.randint(1, q)
            val = script_S(k, q, a)
            f = arithmetic.factorize(q)
            bound = 6 * k * arithmetic.kappa(k, f) * float(arithmetic.psi(f))
            margin = bound + slack - val
            checked += 1
            if margin < worst_margin:
                worst_margin = margin
                worst_case = f"q={q},a={a}"
        results.append(CheckResult(
            name=f"script_s_bound(k={k})",
            holds=worst_margin >= 0,
            lhs=float(-worst_margin),
            rhs=0.0,
            margin=float(worst_margin),
            detail=f"min of 6k*kappa*psi + {slack} - scriptS over {checked} pairs ({worst_case})",
        ))
    return results


def verify_s_partition_identity(k: int, q_max: int = 200, tol: float = 1e-9) -> CheckResult:
    """Check S(q,a) = sum_{d|q} W(d, a*(q/d)^(k-1)) for all a, q <= q_max.

    The right side groups residues r by gcd(r,q) = q/d, so the identity is
    a partition of the complete sum, exact by construction.
    """
    worst = 0.0
    worst_case = ""
    for q in range(1, q_max + 1):
        divs = arithmetic.divisors(q)
        for a in range(q):
            lhs = complete_sum_S(k, q, a)
            rhs = sum(
                reduced_sum_W(k, d, a * pow(q // d, k - 1, d) % d if d > 1 else 0)
                for d in divs
            )
            err = abs(lhs - rhs) / max(1.0, abs(rhs))
            if err > worst:
                worst = err
                worst_case = f"q={q},a={a}"
    return CheckResult(
        name=f"s_partition_identity(k={k})",
        holds=worst <= tol,
        lhs=worst,
        rhs=tol,
        margin=tol - worst,
        detail=f"max rel. deviation of S(q,a) from its gcd-partition ({worst_case})",
    )
