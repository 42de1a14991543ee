"""Exact multiplicative arithmetic: factorization, phi/omega/psi, the
weight kappa_k attached to complete k-th power exponential sums, the
canonical k-full decomposition, and exact verification of the inequalities
these functions satisfy.

kappa_k involves sqrt(p) factors, so it is stored through its square,
which is always rational; every inequality about kappa is decided by
comparing squares in exact integer/rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterator

import numpy as np

from .errors import ConsistencyError
from .reports import CheckResult

_PRIME_TABLE_LIMIT = 10**6
_prime_table: list[int] | None = None

# witnesses proving primality for every n < 3.3e24 (covers 64-bit inputs)
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def primes_upto(limit: int) -> list[int]:
    """All primes <= limit by an Eratosthenes byte sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i in range(limit + 1) if sieve[i]]


def _primes() -> list[int]:
    global _prime_table
    if _prime_table is None:
        _prime_table = primes_upto(_PRIME_TABLE_LIMIT)
    return _prime_table


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant).

    The parameters are swept deterministically, so repeated calls always
    split n the same way.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += m
                g = gcd(q, n)
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization: primes strictly increasing, exponents >= 1.

    The empty factor list represents 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        ps = [p for p, _ in self.factors]
        if ps != sorted(set(ps)):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be >= 1")
        if prod(p**e for p, e in self.factors) != self.value:
            raise ValueError("factors do not multiply to value")


def factorize(n: int) -> Factorization:
    """Prime factorization of n >= 1 (trial division, then Pollard-Brent)."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    value = n
    factors: dict[int, int] = {}
    for p in _primes():
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                factors[m] = factors.get(m, 0) + 1
            else:
                d = _pollard_brent(m)
                stack.extend((d, m // d))
    return Factorization(value, tuple(sorted(factors.items())))


def _as_factorization(q: "int | Factorization") -> Factorization:
    return q if isinstance(q, Factorization) else factorize(q)


def divisors(f: "int | Factorization") -> list[int]:
    """Sorted list of all divisors."""
    f = _as_factorization(f)
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def divisor_factorizations(f: "int | Factorization") -> Iterator[Factorization]:
    """All divisors, each with its factorization, in no particular order."""
    f = _as_factorization(f)
    items = f.factors

    def rec(i: int, val: int, fac: list[tuple[int, int]]) -> Iterator[Factorization]:
        if i == len(items):
            yield Factorization(val, tuple(fac))
            return
        p, e = items[i]
        yield from rec(i + 1, val, fac)
        pe = 1
        for j in range(1, e + 1):
            pe *= p
            yield from rec(i + 1, val * pe, fac + [(p, j)])

    return rec(0, 1, [])


def euler_phi(f: "int | Factorization") -> int:
    """Euler totient."""
    f = _as_factorization(f)
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def omega(f: "int | Factorization") -> int:
    """Number of distinct prime divisors."""
    return len(_as_factorization(f).factors)


def psi(f: "int | Factorization") -> Fraction:
    """psi(q) = q/phi(q) = prod_{p|q} (1 - 1/p)^(-1), exact."""
    f = _as_factorization(f)
    out = Fraction(1)
    for p, _ in f.factors:
        out *= Fraction(p, p - 1)
    return out


def _kappa_sq_prime_power(k: int, p: int, e: int) -> Fraction:
    # e = u*k + v with u >= 0, 1 <= v <= k
    if e == 0:
        return Fraction(1)
    u, v = divmod(e - 1, k)
    v += 1
    if v == 1:
        return Fraction(k * k, p ** (2 * u + 1))
    return Fraction(1, p ** (2 * u + 2))


def kappa_squared(k: int, f: "int | Factorization") -> Fraction:
    """kappa_k(q)^2 as an exact fraction in lowest terms.

    kappa_k is multiplicative with kappa(p^(uk+v)) = k*p^(-u-1/2) when v=1
    and p^(-u-1) when 2 <= v <= k, so its square is rational.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    f = _as_factorization(f)
    out = Fraction(1)
    for p, e in f.factors:
        out *= _kappa_sq_prime_power(k, p, e)
    return out


def kappa(k: int, f: "int | Factorization") -> float:
    """kappa_k(q) in double precision (square root of the exact square)."""
    k2 = kappa_squared(k, f)
    return (k2.numerator / k2.denominator) ** 0.5


@dataclass(frozen=True)
class KFullDecomposition:
    """Parts d_1..d_k with d_1*d_2^2*...*d_k^k = n, the first k-1 parts
    squarefree and pairwise coprime."""

    parts: tuple[int, ...]

    def recompose(self) -> int:
        return prod(d ** (i + 1) for i, d in enumerate(self.parts))


def kfull_decompose(k: int, n: "int | Factorization") -> KFullDecomposition:
    """Canonical decomposition by exponent division: a prime with exponent
    e = k*m + r (0 <= r <= k-1) contributes p to d_r (when r >= 1) and p^m
    to d_k."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    f = _as_factorization(n)
    parts = [1] * k
    for p, e in f.factors:
        m, r = divmod(e, k)
        if r:
            parts[r - 1] *= p
        if m:
            parts[k - 1] *= p**m
    return KFullDecomposition(tuple(parts))


def verify_kappa_submult(k: int, p: int, a: int, b: int) -> CheckResult:
    """Check kappa(p^a)*kappa(p^b) <= k^2 * kappa(p^(a+b)) on squares.

    Compares kappa^2(p^a)*kappa^2(p^b) against k^4*kappa^2(p^(a+b)) in
    exact rationals; requires a, b >= 0 with a + b >= 1.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if a < 0 or b < 0 or a + b < 1:
        raise ValueError("need non-negative a, b with a+b >= 1")
    lhs = _kappa_sq_prime_power(k, p, a) * _kappa_sq_prime_power(k, p, b)
    rhs = k**4 * _kappa_sq_prime_power(k, p, a + b)
    return CheckResult(
        name=f"kappa_submult(k={k},p={p},a={a},b={b})",
        holds=lhs <= rhs,
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(rhs - lhs),
        detail="kappa^2(p^a)*kappa^2(p^b) <= k^4*kappa^2(p^(a+b)), exact rationals",
    )


def verify_kappa_divisor_bound(k: int, q: "int | Factorization") -> CheckResult:
    """Exhaustive check of kappa(q/d) <= k^(4*omega(q)) * kappa(q) * e0*d_1*...*d_k
    over every divisor d of q and every divisor e0 of d, where d/e0 is
    canonically decomposed as d_1*d_2^2*...*d_k^k.

    The comparison is made on squares in exact rationals; reports the
    worst-case ratio lhs/rhs over all (d, e0).
    """
    f = _as_factorization(q)
    om = omega(f)
    kq_sq = kappa_squared(k, f)
    scale = Fraction(k ** (8 * om)) * kq_sq
    worst = Fraction(0)
    worst_case = (1, 1)
    for dfac in divisor_factorizations(f):
        d = dfac.value
        qd = f.value // d
        lhs = kappa_squared(k, factorize(qd))
        for e0 in divisors(dfac):
            dec = kfull_decompose(k, d // e0)
            w = e0 * prod(dec.parts)
            rhs = scale * w * w
            ratio = lhs / rhs
            if ratio > worst:
                worst = ratio
                worst_case = (d, e0)
    return CheckResult(
        name=f"kappa_divisor_bound(k={k},q={f.value})",
        holds=worst <= 1,
        lhs=float(worst),
        rhs=1.0,
        margin=float(1 - worst),
        detail=(
            "worst ratio kappa^2(q/d) / (k^(8w)kappa^2(q)(e0*d1...dk)^2) "
            f"at (d,e0)={worst_case}"
        ),
    )


def kappa_weighted_series(k: int, p: int, s: int, terms: int) -> Fraction:
    """Partial sum sum_{l=1}^{terms} p^l * kappa_k(p^l)^s, exact.

    s must be even so every term is rational; terms = 0 gives the empty sum.
    """
    if s < 2 or s % 2:
        raise ValueError(f"s must be a positive even integer, got {s}")
    if terms < 0:
        raise ValueError("terms must be >= 0")
    total = Fraction(0)
    for l in range(1, terms + 1):
        total += p**l * _kappa_sq_prime_power(k, p, l) ** (s // 2)
    return total


def kappa_weighted_series_closed(k: int, p: int, s: int) -> Fraction:
    """Closed form of sum_{l>=1} p^l * kappa_k(p^l)^s, exact.

    Grouping l = u*k + v by residue class v makes the series geometric in
    u with ratio p^(k-s); convergence requires s > k.
    """
    if s < 2 or s % 2:
        raise ValueError(f"s must be a positive even integer, got {s}")
    if s <= k:
        raise ValueError(f"series diverges unless s > k (got k={k}, s={s})")
    pf = Fraction(p)
    block = Fraction(k**s) * pf ** (1 - s // 2)  # v = 1
    for v in range(2, k + 1):
        block += pf ** (v - s)
    return block / (1 - pf ** (k - s))


def sigma_kappa(k: int, t: int, q: "int | Factorization") -> Fraction:
    """sigma(q) = sum_{r|q} r * kappa_k(r)^(2t), exact, via multiplicativity."""
    f = _as_factorization(q)
    out = Fraction(1)
    for p, e in f.factors:
        out *= sum(
            (p**j * _kappa_sq_prime_power(k, p, j) ** t for j in range(e + 1)),
            Fraction(0),
        )
    return out


def _sigma_kappa_divisor_enum(k: int, t: int, f: Factorization) -> float:
    total = 0.0
    for rfac in divisor_factorizations(f):
        k2 = 1.0
        for p, e in rfac.factors:
            frac = _kappa_sq_prime_power(k, p, e)
            k2 *= frac.numerator / frac.denominator
        total += rfac.value * k2**t
    return total


def vw_sum(k: int, t: int, q_max: int) -> float:
    """The double sum sum_{q<=Q} kappa_k(q)^2 * sigma(q) with
    sigma(q) = sum_{r|q} r*kappa(r)^(2t).

    sigma is evaluated both by divisor enumeration and by its
    multiplicative prime-power product; a relative disagreement beyond
    1e-9 raises ConsistencyError.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if not 1 <= q_max <= 10**7:
        raise ValueError(f"Q must lie in [1, 1e7], got {q_max}")
    spf = smallest_prime_factor_sieve(q_max)
    total = 0.0
    for q in range(1, q_max + 1):
        f = _factorization_from_spf(q, spf)
        sig_mult = float(sigma_kappa(k, t, f))
        sig_div = _sigma_kappa_divisor_enum(k, t, f)
        if abs(sig_mult - sig_div) > 1e-9 * max(1.0, abs(sig_mult)):
            raise ConsistencyError(
                f"sigma({q}) disagrees: multiplicative {sig_mult!r} "
                f"vs divisor enumeration {sig_div!r}"
            )
        k2 = kappa_squared(k, f)
        total += (k2.numerator / k2.denominator) * sig_mult
    return total


def smallest_prime_factor_sieve(limit: int) -> np.ndarray:
    """spf[n] = smallest prime factor of n for 2 <= n <= limit (spf[1] = 1)."""
    spf = np.zeros(limit + 1, dtype=np.int32)
    if limit >= 1:
        spf[1] = 1
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    return spf


def _factorization_from_spf(n: int, spf: np.ndarray) -> Factorization:
    value = n
    factors = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors.append((p, e))
    return Factorization(value, tuple(sorted(factors)))


def kappa_bounds_scan(k: int, q_limit: int) -> CheckResult:
    """Exact scan of the lower bound kappa_k(q)^2 >= 1/q for all q <= q_limit.

    Runs on integers only: with kappa^2 = num/den the bound is
    q*num >= den.  For k = 2 the upper bound kappa^2 <= 4^omega(q)/q,
    i.e. q*num <= 4^omega * den, is checked as well.
    """
    spf = smallest_prime_factor_sieve(q_limit)
    worst_ratio = 0.0  # max of den/(q*num); must stay <= 1
    worst_q = 1
    upper_ok = True
    upper_worst = 0.0
    for q in range(1, q_limit + 1):
        n = q
        num = 1
        den = 1
        nprimes = 0
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            nprimes += 1
            u, v = divmod(e - 1, k)
            if v == 0:  # v = 1 branch
                num *= k * k
                den *= p ** (2 * u + 1)
            else:
                den *= p ** (2 * u + 2)
        if den > q * num:
            return CheckResult(
                name=f"kappa_lower_bound(k={k})",
                holds=False,
                lhs=float(Fraction(1, q)),
                rhs=num / den,
                margin=num / den - 1.0 / q,
                detail=f"kappa^2({q}) < 1/{q}",
            )
        r = den / (q * num)
        if r > worst_ratio:
            worst_ratio, worst_q = r, q
        if k == 2 and q * num > 4**nprimes * den:
            upper_ok = False
            upper_worst = max(upper_worst, q * num / (4**nprimes * den))
    detail = f"min_q q*kappa^2(q) = {1/worst_ratio:.6g} at q={worst_q}"
    if k == 2:
        detail += "; upper bound kappa^2 <= 4^omega/q " + ("held", "FAILED")[not upper_ok]
    return CheckResult(
        name=f"kappa_lower_bound(k={k},q<={q_limit})",
        holds=upper_ok,
        lhs=worst_ratio,
        rhs=1.0,
        margin=1.0 - worst_ratio,
        detail=detail,
    )


def kappa_decay_report(k: int, q_limit: int) -> dict[str, float]:
    """Report max over q <= q_limit of q^(1/k) * kappa_k(q).

    The decay kappa(q) << q^(-1/k) carries a huge implicit constant, so the
    observed maximum is reported rather than asserted against a bound.
    """
    spf = smallest_prime_factor_sieve(q_limit)
    best = 0.0
    best_q = 1
    for q in range(1, q_limit + 1):
        f = _factorization_from_spf(q, spf)
        k2 = kappa_squared(k, f)
        val = q ** (1 / k) * (k2.numerator / k2.denominator) ** 0.5
        if val > best:
            best, best_q = val, q
    return {"k": k, "q_limit": q_limit, "max_q1k_kappa": best, "argmax_q": float(best_q)}
