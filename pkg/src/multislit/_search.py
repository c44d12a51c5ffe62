"""Scalar extremum refinement used by the fringe scans."""

from __future__ import annotations

import math

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, a: float, b: float, iterations: int = 48) -> float:
    """Largest value of ``f`` on [a, b], assuming one interior maximum.

    A fixed iteration count keeps the search deterministic; 48 steps shrink
    the bracket by ~1e-10 of its width, far below the 1e-6 visibility
    tolerance the scans promise.
    """
    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iterations):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = f(x1)
    return max(f1, f2)


def golden_section_argmax(f, a: float, b: float, iterations: int = 48) -> tuple[float, float]:
    """Like golden_section_max but also returns the abscissa of the best point."""
    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iterations):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def refine_grid_extrema(f, grid, values) -> tuple[float, float]:
    """Refine the max and min of ``f`` around the best points of a uniform scan.

    Returns (maximum, minimum).  The refined values can only improve on the
    grid values; both are folded in so the result never regresses.
    """
    step = grid[1] - grid[0]
    i_hi = int(values.argmax())
    i_lo = int(values.argmin())
    hi = golden_section_max(f, grid[i_hi] - step, grid[i_hi] + step)
    lo = -golden_section_max(lambda x: -f(x), grid[i_lo] - step, grid[i_lo] + step)
    return max(hi, float(values.max())), min(lo, float(values.min()))
