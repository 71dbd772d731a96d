"""Evaluation grids for prefix averages: lacunary point sets and the
default dyadic-plus-lacunary grid."""

from __future__ import annotations

import math

from .errors import ValidationError


def lacunary_points(rho: float, n_max: int) -> list[int]:
    """Integer round-ups of rho**n that land in [1, n_max], deduplicated.

    The first point is always 1 (rho**0).  Round-up (ceiling) is the
    recorded convention for turning the geometric sequence into integers.
    """
    if not rho > 1.0:
        raise ValidationError(f"rho must be > 1, got {rho}")
    if n_max < 1:
        raise ValidationError(f"n_max must be >= 1, got {n_max}")
    points: list[int] = []
    power = 1.0
    while True:
        value = math.ceil(power)
        if value > n_max:
            break
        if not points or value > points[-1]:
            points.append(value)
        power *= rho
    return points


def dyadic_points(n_max: int) -> list[int]:
    """Powers of two in [1, n_max], plus n_max itself."""
    if n_max < 1:
        raise ValidationError(f"n_max must be >= 1, got {n_max}")
    points = [1 << e for e in range(n_max.bit_length()) if (1 << e) <= n_max]
    if points[-1] != n_max:
        points.append(n_max)
    return points


def default_grid(n_max: int, rho: float = 1.5) -> list[int]:
    """Dyadic points merged with the lacunary rho-grid, ascending."""
    merged = sorted(set(dyadic_points(n_max)) | set(lacunary_points(rho, n_max)))
    return merged
