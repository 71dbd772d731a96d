"""Linear sieve and bounded multiplicative weight tables.

Provides:
- Smallest-prime-factor sieve (per-query prime factor counts in O(log n))
- Completely multiplicative parity weight (-1)**Omega(n) and its
  squarefree restriction, tabulated as int8 arrays
- WeightSequence: a bounded weight nu on 1..N_max with prefix sums and
  the even extension nu(-n) = nu(n), nu(0) = 0
- A little-endian binary cache for the two signed tables
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CacheFormatError, ValidationError

MAX_SIEVE_LIMIT = 2**31

WEIGHT_KINDS = ("liouville", "moebius", "constant_one", "custom")

CACHE_MAGIC = b"EWL1"


@dataclass(frozen=True, eq=False)
class FactorSieve:
    """Smallest-prime-factor table for 2..limit plus the prime list.

    Attributes:
        limit: Upper bound N_max (inclusive).
        spf: int32 array of length limit+1; spf[n] is the smallest prime
            factor of n for n >= 2.  Entries 0 and 1 are unused (0).
        primes: int64 array of all primes <= limit, ascending.
    """

    limit: int
    spf: np.ndarray
    primes: np.ndarray


def _check_index(n: int, limit: int, name: str = "n") -> None:
    if not 1 <= n <= limit:
        raise ValidationError(f"{name} must be in [1, {limit}], got {n}")


def build_sieve(n_max: int) -> FactorSieve:
    """Sieve smallest prime factors up to n_max.

    Args:
        n_max: Upper bound, 2 <= n_max <= 2**31.

    Returns:
        FactorSieve with spf and primes filled.
    """
    if not 2 <= n_max <= MAX_SIEVE_LIMIT:
        raise ValidationError(f"n_max must be in [2, 2^31], got {n_max}")
    spf = np.zeros(n_max + 1, dtype=np.int32)
    for i in range(2, math.isqrt(n_max) + 1):
        if spf[i] == 0:
            spf[i] = i
            block = spf[i * i :: i]
            block[block == 0] = i
    # everything still unmarked above sqrt(n_max) is prime
    rest = np.nonzero(spf[2:] == 0)[0] + 2
    spf[rest] = rest
    primes = np.nonzero(spf[2:] == np.arange(2, n_max + 1, dtype=np.int32))[0] + 2
    return FactorSieve(limit=n_max, spf=spf, primes=primes.astype(np.int64))


def big_omega(sieve: FactorSieve, n: int) -> int:
    """Number of prime factors of n counted with multiplicity; 0 for n=1."""
    _check_index(n, sieve.limit)
    spf = sieve.spf
    m = int(n)
    count = 0
    while m > 1:
        m //= int(spf[m])
        count += 1
    return count


def liouville(sieve: FactorSieve, n: int) -> int:
    """Parity weight (-1)**Omega(n), always +1 or -1."""
    return -1 if big_omega(sieve, n) & 1 else 1


def moebius(sieve: FactorSieve, n: int) -> int:
    """Squarefree-restricted parity weight: 0 on non-squarefree n."""
    _check_index(n, sieve.limit)
    spf = sieve.spf
    m = int(n)
    sign = 1
    while m > 1:
        p = int(spf[m])
        m //= p
        if m % p == 0:
            return 0
        sign = -sign
    return sign


def _prime_mask(n_max: int) -> np.ndarray:
    mask = np.ones(n_max + 1, dtype=bool)
    mask[:2] = False
    for i in range(2, math.isqrt(n_max) + 1):
        if mask[i]:
            mask[i * i :: i] = False
    return mask


def _omega_table(n_max: int) -> np.ndarray:
    """Omega(n) for all n <= n_max, one pass per prime power."""
    omega = np.zeros(n_max + 1, dtype=np.uint8)
    for p in np.nonzero(_prime_mask(n_max))[0]:
        pk = int(p)
        while pk <= n_max:
            omega[pk::pk] += 1
            pk *= int(p)
    return omega


def _moebius_table(n_max: int) -> np.ndarray:
    mu = np.ones(n_max + 1, dtype=np.int8)
    mu[0] = 0
    for p in np.nonzero(_prime_mask(n_max))[0]:
        p = int(p)
        mu[p::p] *= -1
        if p * p <= n_max:
            mu[p * p :: p * p] = 0
    return mu


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """Tabulated bounded weight nu on 1..limit.

    Attributes:
        kind: one of WEIGHT_KINDS.
        values: array of length limit+1 with values[n] = nu(n) for
            1 <= n <= limit and values[0] = 0.  int8 for the builtin
            kinds, complex128 for custom weights.
    """

    kind: str
    values: np.ndarray

    @property
    def limit(self) -> int:
        return len(self.values) - 1

    @property
    def sup(self) -> float:
        return float(np.abs(self.values).max())


def weight_table(kind: str, n_max: int, custom_values=None) -> WeightSequence:
    """Build the weight table nu(1..n_max) for the requested kind.

    custom kind expects a complex sequence of length n_max with
    sup |nu| <= 1 (validated); the other kinds ignore custom_values.
    """
    if kind not in WEIGHT_KINDS:
        raise ValidationError(f"kind must be one of {WEIGHT_KINDS}, got {kind!r}")
    if n_max < 1:
        raise ValidationError(f"n_max must be >= 1, got {n_max}")
    if kind == "liouville":
        omega = _omega_table(n_max)
        values = np.where(omega & 1, -1, 1).astype(np.int8)
        values[0] = 0
    elif kind == "moebius":
        values = _moebius_table(n_max)
    elif kind == "constant_one":
        values = np.ones(n_max + 1, dtype=np.int8)
        values[0] = 0
    else:
        if custom_values is None:
            raise ValidationError("custom kind requires custom_values")
        arr = np.asarray(custom_values, dtype=np.complex128)
        if arr.shape != (n_max,):
            raise ValidationError(
                f"custom_values must have length n_max={n_max}, got shape {arr.shape}"
            )
        sup = float(np.abs(arr).max()) if n_max else 0.0
        if sup > 1.0 + 1e-12:
            raise ValidationError(f"custom_values must satisfy |nu| <= 1, sup is {sup}")
        values = np.concatenate([np.zeros(1, dtype=np.complex128), arr])
    values.flags.writeable = False
    return WeightSequence(kind=kind, values=values)


def partial_sum(w: WeightSequence, n: int) -> complex:
    """Prefix sum of nu over 1..n."""
    _check_index(n, w.limit, "N")
    return complex(w.values[1 : n + 1].sum())


def extend(w: WeightSequence, n: int) -> complex:
    """Weight at any integer under the even extension: nu(-n)=nu(n), nu(0)=0."""
    if abs(n) > w.limit:
        raise ValidationError(f"|n| must be <= limit={w.limit}, got {n}")
    if n == 0:
        return 0j
    return complex(w.values[abs(n)])


def save_weight_cache(path, lam: WeightSequence, mu: WeightSequence) -> None:
    """Write the two int8 tables to a little-endian binary cache file.

    Layout: magic "EWL1", u64 N_max, lambda table (N_max bytes, i8),
    mu table (N_max bytes, i8).
    """
    if lam.kind != "liouville" or mu.kind != "moebius":
        raise ValidationError("cache stores the liouville and moebius tables")
    if lam.limit != mu.limit:
        raise ValidationError(
            f"table limits differ: {lam.limit} vs {mu.limit}"
        )
    n_max = lam.limit
    payload = (
        CACHE_MAGIC
        + struct.pack("<Q", n_max)
        + lam.values[1:].astype(np.int8).tobytes()
        + mu.values[1:].astype(np.int8).tobytes()
    )
    Path(path).write_bytes(payload)


def load_weight_cache(path) -> tuple[WeightSequence, WeightSequence]:
    """Read a cache file back into (liouville, moebius) weight tables."""
    raw = Path(path).read_bytes()
    if raw[:4] != CACHE_MAGIC:
        raise CacheFormatError(f"bad cache magic in {path}: {raw[:4]!r}")
    if len(raw) < 12:
        raise CacheFormatError(f"cache file {path} truncated before header")
    (n_max,) = struct.unpack("<Q", raw[4:12])
    expected = 12 + 2 * n_max
    if len(raw) != expected:
        raise CacheFormatError(
            f"cache file {path} has {len(raw)} bytes, expected {expected}"
        )
    lam_vals = np.zeros(n_max + 1, dtype=np.int8)
    mu_vals = np.zeros(n_max + 1, dtype=np.int8)
    lam_vals[1:] = np.frombuffer(raw, dtype=np.int8, count=n_max, offset=12)
    mu_vals[1:] = np.frombuffer(raw, dtype=np.int8, count=n_max, offset=12 + n_max)
    lam_vals.flags.writeable = False
    mu_vals.flags.writeable = False
    return (
        WeightSequence(kind="liouville", values=lam_vals),
        WeightSequence(kind="moebius", values=mu_vals),
    )
