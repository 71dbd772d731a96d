"""Desk-scale measure-preserving systems with exact state arithmetic.

Three families:
- circle rotation, state a 64-bit fixed-point fraction (numerator of
  x over 2**64), so the group law T^(m+n) = T^m T^n is bit-exact
- the doubling map on the same fixed-point circle (not invertible)
- the cyclic shift j -> j+1 on Z_J

Observables are characters e(k x), interval indicators, or value tables
on Z_J.  Orbit evaluation is a pure function of (system, observable,
start, power, length).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NonInvertibleError, ValidationError

FIXED_ONE = 1 << 64  # the unit interval in 64-bit fixed point
_MASK = FIXED_ONE - 1

SYSTEM_KINDS = ("rotation", "doubling", "cyclic_shift")
OBSERVABLE_KINDS = ("character", "interval_indicator", "table")


def fixed_point(x: float) -> int:
    """Nearest 64-bit fixed-point approximant of the fractional part of x."""
    frac = x - math.floor(x)
    return round(frac * FIXED_ONE) & _MASK


def fixed_to_float(x_fp: int) -> float:
    return (x_fp & _MASK) / FIXED_ONE


@dataclass(frozen=True)
class SystemSpec:
    """One of the three concrete systems; immutable and hashable."""

    kind: str
    alpha_fp: int = 0  # rotation angle as numerator over 2**64
    modulus: int = 0  # cyclic shift modulus J
    description: str = ""

    def __post_init__(self):
        if self.kind not in SYSTEM_KINDS:
            raise ValidationError(f"system kind must be one of {SYSTEM_KINDS}, got {self.kind!r}")
        if self.kind == "rotation" and not 0 <= self.alpha_fp < FIXED_ONE:
            raise ValidationError(f"alpha_fp must be in [0, 2^64), got {self.alpha_fp}")
        if self.kind == "cyclic_shift" and self.modulus < 1:
            raise ValidationError(f"cyclic modulus J must be >= 1, got {self.modulus}")

    @classmethod
    def rotation(cls, alpha_fp: int, description: str = "") -> "SystemSpec":
        return cls(
            kind="rotation",
            alpha_fp=alpha_fp,
            description=description or f"rotation(alpha_fp={alpha_fp})",
        )

    @classmethod
    def doubling(cls) -> "SystemSpec":
        return cls(kind="doubling", description="doubling")

    @classmethod
    def cyclic_shift(cls, modulus: int) -> "SystemSpec":
        return cls(
            kind="cyclic_shift",
            modulus=modulus,
            description=f"cyclic_shift(J={modulus})",
        )


@dataclass(frozen=True, eq=False)
class Observable:
    """Complex observable on a system's state space, with recorded sup."""

    kind: str
    k: int = 0  # character frequency
    lo: float = 0.0  # indicator interval [lo, hi)
    hi: float = 1.0
    table: np.ndarray | None = None  # complex values on Z_J

    def __post_init__(self):
        if self.kind not in OBSERVABLE_KINDS:
            raise ValidationError(
                f"observable kind must be one of {OBSERVABLE_KINDS}, got {self.kind!r}"
            )
        if self.kind == "interval_indicator" and not 0.0 <= self.lo < self.hi <= 1.0:
            raise ValidationError(
                f"indicator needs 0 <= lo < hi <= 1, got lo={self.lo}, hi={self.hi}"
            )

    @classmethod
    def character(cls, k: int) -> "Observable":
        return cls(kind="character", k=k)

    @classmethod
    def interval_indicator(cls, lo: float, hi: float) -> "Observable":
        return cls(kind="interval_indicator", lo=lo, hi=hi)

    @classmethod
    def from_table(cls, values) -> "Observable":
        arr = np.asarray(values, dtype=np.complex128)
        if arr.ndim != 1 or len(arr) < 1:
            raise ValidationError("table observable needs a nonempty 1-d value array")
        return cls(kind="table", table=arr)

    @property
    def sup(self) -> float:
        if self.kind == "table":
            return float(np.abs(self.table).max())
        return 1.0

    def describe(self) -> str:
        if self.kind == "character":
            return f"character(k={self.k})"
        if self.kind == "interval_indicator":
            return f"indicator([{self.lo},{self.hi}))"
        return f"table(J={len(self.table)})"


@dataclass(frozen=True, eq=False)
class OrbitSequence:
    """values[n-1] = obs(T^(a*n) x) for n = 1..N."""

    values: np.ndarray
    system: SystemSpec
    observable: Observable
    start: int
    power: int

    @property
    def sup_bound(self) -> float:
        return self.observable.sup


def iterate(sys: SystemSpec, x: int, n: int) -> int:
    """Apply T^n to the state x, exactly.

    Rotation: fixed-point addition of n*alpha mod 2**64.  Doubling:
    n left-shifts of the fraction (n >= 0 only).  Cyclic shift:
    (x + n) mod J.
    """
    if abs(n) > 2**62:
        raise ValidationError(f"|n| must be <= 2^62, got {n}")
    if sys.kind == "rotation":
        return (x + n * sys.alpha_fp) & _MASK
    if sys.kind == "cyclic_shift":
        return (x + n) % sys.modulus
    if n < 0:
        raise NonInvertibleError(f"doubling map is not invertible, got n={n}")
    if n >= 64:
        return 0  # the whole fraction has been shifted out
    return (x << n) & _MASK


def _check_compatible(sys: SystemSpec, obs: Observable) -> None:
    if obs.kind == "table":
        if sys.kind != "cyclic_shift":
            raise ValidationError("table observables require a cyclic_shift system")
        if len(obs.table) != sys.modulus:
            raise ValidationError(
                f"table length {len(obs.table)} does not match modulus J={sys.modulus}"
            )
    elif sys.kind == "cyclic_shift":
        raise ValidationError(
            f"{obs.kind} observables require a rotation or doubling system"
        )


def _indicator_thresholds(obs: Observable) -> tuple[int, int]:
    # x/2**64 >= lo  <=>  x >= ceil(lo * 2**64); same for the open right end
    lo_thr = math.ceil(Fraction(obs.lo) * FIXED_ONE)
    hi_thr = math.ceil(Fraction(obs.hi) * FIXED_ONE)
    return lo_thr, hi_thr


def evaluate_observable(sys: SystemSpec, obs: Observable, points: np.ndarray) -> np.ndarray:
    """Evaluate obs at an array of states (uint64 fractions or Z_J indices)."""
    _check_compatible(sys, obs)
    if obs.kind == "table":
        return obs.table[points]
    if obs.kind == "character":
        kx = points.astype(np.uint64) * np.uint64(obs.k % FIXED_ONE)  # wraps mod 2**64
        return np.exp((2j * np.pi / FIXED_ONE) * kx.astype(np.float64))
    lo_thr, hi_thr = _indicator_thresholds(obs)
    pts = points.astype(np.uint64)
    inside = pts >= np.uint64(lo_thr & _MASK) if lo_thr < FIXED_ONE else np.zeros(len(pts), bool)
    if hi_thr < FIXED_ONE:
        inside = inside & (pts < np.uint64(hi_thr))
    return inside.astype(np.complex128)


def orbit_points(sys: SystemSpec, x: int, a: int, n_len: int) -> np.ndarray:
    """States T^(a*n) x for n = 1..n_len, as one array."""
    if n_len < 1:
        raise ValidationError(f"orbit length N must be >= 1, got {n_len}")
    if abs(a) * n_len > 2**62:
        raise ValidationError(f"|a|*N must be <= 2^62, got a={a}, N={n_len}")
    if sys.kind == "rotation":
        step = (a * sys.alpha_fp) % FIXED_ONE
        ns = np.arange(1, n_len + 1, dtype=np.uint64)
        return ns * np.uint64(step) + np.uint64(x & _MASK)  # wraps mod 2**64
    if sys.kind == "cyclic_shift":
        ns = np.arange(1, n_len + 1, dtype=np.int64)
        return (ns * a + (x % sys.modulus)) % sys.modulus
    if a < 0:
        raise NonInvertibleError(f"doubling map is not invertible, got power a={a}")
    pts = np.zeros(n_len, dtype=np.uint64)
    x0 = x & _MASK
    for i in range(n_len):
        shift = a * (i + 1)
        if shift >= 64 or x0 == 0:
            break  # orbit is 0 from here on
        pts[i] = (x0 << shift) & _MASK
    return pts


def orbit_observable(
    sys: SystemSpec, obs: Observable, x: int, a: int, n_len: int
) -> OrbitSequence:
    """Stream obs(T^(a*n) x) for n = 1..n_len in one pass."""
    _check_compatible(sys, obs)
    pts = orbit_points(sys, x, a, n_len)
    values = evaluate_observable(sys, obs, pts)
    return OrbitSequence(values=values, system=sys, observable=obs, start=x, power=a)
