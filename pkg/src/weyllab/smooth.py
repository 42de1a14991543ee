"""Generation of smooth (friable) sets: integers in [1, P] whose prime
factors all lie below a bound R, plus the truncation to (P/nu, P].
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

DEFAULT_SIEVE_CAP = 10**7

_gpf_lock = threading.Lock()
_gpf: np.ndarray | None = None  # gpf[n] = greatest prime factor of n, gpf[1] = 1


@dataclass(frozen=True)
class SmoothSet:
    """The set {n in [1, P] : p | n => p <= R}, optionally truncated to
    (P/nu, P].  Elements are strictly increasing with no duplicates."""

    P: float
    R: float
    nu: float | None
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, n: int) -> bool:
        i = np.searchsorted(np.asarray(self.elements), n)
        return i < len(self.elements) and self.elements[i] == n

    @property
    def cardinality(self) -> int:
        return len(self.elements)


def greatest_prime_factor_sieve(limit: int) -> np.ndarray:
    """gpf[n] for 0 <= n <= limit; gpf[0] = 0, gpf[1] = 1.

    The sieve is cached module-wide and only regrown, never shrunk; after
    construction it is read-only, so concurrent sieving calls are safe.
    """
    global _gpf
    with _gpf_lock:
        if _gpf is None or len(_gpf) <= limit:
            gpf = np.zeros(limit + 1, dtype=np.int32)
            if limit >= 1:
                gpf[1] = 1
            for p in range(2, limit + 1):
                if gpf[p] == 0:  # p prime: ascending writes leave the largest
                    gpf[p::p] = p
            _gpf = gpf
        return _gpf


def sieve_smooth(P: float, R: float, *, sieve_cap: int = DEFAULT_SIEVE_CAP) -> SmoothSet:
    """Enumerate the R-smooth integers in [1, P] with a largest-prime-factor
    sieve.  Requires 2 <= R <= P <= sieve_cap."""
    if not (2 <= R <= P):
        raise ValueError(f"need 2 <= R <= P, got R={R}, P={P}")
    n_max = math.floor(P)
    if n_max > sieve_cap:
        raise ValueError(f"P={P} exceeds the sieve cap {sieve_cap}")
    gpf = greatest_prime_factor_sieve(n_max)
    r_int = math.floor(R)
    hits = np.nonzero(gpf[1: n_max + 1] <= r_int)[0] + 1
    return SmoothSet(P=float(P), R=float(R), nu=None,
                     elements=tuple(int(n) for n in hits))


def truncate(s: SmoothSet, nu: float) -> SmoothSet:
    """Restrict s to the top segment P/nu < n <= P; requires nu > 1 and an
    untruncated input."""
    if s.nu is not None:
        raise ValueError("smooth set is already truncated")
    if not nu > 1:
        raise ValueError(f"nu must exceed 1, got {nu}")
    lo = s.P / nu
    return SmoothSet(P=s.P, R=s.R, nu=float(nu),
                     elements=tuple(n for n in s.elements if n > lo))
