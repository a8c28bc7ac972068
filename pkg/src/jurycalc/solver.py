"""Bracketed root finding shared by the estimation and approximation layers."""

from __future__ import annotations

import math
from typing import Callable

__all__ = ["bisect_root", "scan_bracket", "NoBracketError"]


class NoBracketError(ValueError):
    """No sign change found while scanning for a root bracket."""

    def __init__(self, message: str, scan_table: list[tuple[float, float]] | None = None):
        super().__init__(message)
        self.scan_table = scan_table or []


def bisect_root(f: Callable[[float], float], lo: float, hi: float,
                tol: float = 1e-12, max_iter: int = 200) -> float:
    """Root of f on [lo, hi] by bisection; endpoints must bracket a sign change."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise NoBracketError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0 or (hi - lo) < tol:
            return mid
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def scan_bracket(f: Callable[[float], float], lo: float, hi: float,
                 points: int = 64, log_spaced: bool = True) -> tuple[float, float]:
    """Coarse scan for the first sign change of f on [lo, hi].

    Returns the bracketing pair; raises NoBracketError carrying the scan
    table (x, f(x)) as a diagnostic when no sign change exists.
    """
    if points < 2:
        raise ValueError("need at least two scan points")
    if log_spaced:
        if lo <= 0:
            raise ValueError("log spacing needs positive lo")
        ratio = (hi / lo) ** (1.0 / (points - 1))
        xs = [lo * ratio**i for i in range(points)]
    else:
        step = (hi - lo) / (points - 1)
        xs = [lo + step * i for i in range(points)]
    xs[-1] = hi
    table = []
    prev_x, prev_f = None, None
    for x in xs:
        fx = f(x)
        table.append((x, fx))
        if fx == 0.0:
            return x, x
        if prev_f is not None and not math.isnan(fx) and prev_f * fx < 0:
            return prev_x, x
        prev_x, prev_f = x, fx
    raise NoBracketError("no sign change found in scan", table)
