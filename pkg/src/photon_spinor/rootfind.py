"""Bracketed scalar root finding: sign-change scan, bisection, Newton polish.

The heavy lifting is delegated to :mod:`scipy.optimize`; this module adds
the scan that locates sign changes and keeps the diagnostics the orbit
solvers report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import optimize

from .errors import RootNotBracketed

__all__ = ["RootResult", "scan_sign_changes", "bracketed_root", "find_roots"]


@dataclass(frozen=True)
class RootResult:
    """A polished root with its provenance.

    Attributes
    ----------
    root : float
    bracket : tuple of float
        Interval with a sign change that contained the root.
    iterations : int
        Bisection plus Newton iterations.
    residual : float
        ``|f(root)|``.
    method : str
        ``"newton"`` when the Newton polish converged inside the bracket,
        ``"brentq"`` when it fell back.
    """

    root: float
    bracket: tuple[float, float]
    iterations: int
    residual: float
    method: str

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "bracket": list(self.bracket),
            "iterations": self.iterations,
            "residual": self.residual,
            "method": self.method,
        }


def scan_sign_changes(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    samples: int = 400,
    geometric: bool = True,
    vectorized: bool = False,
) -> tuple[list[tuple[float, float]], list[tuple[float, float]]]:
    """Sample ``f`` on ``[lo, hi]`` and return the sign-change intervals.

    With ``vectorized=True`` the whole sample array is passed to ``f`` in
    one call.

    Returns
    -------
    brackets : list of (a, b)
    scan : list of (x, f(x))
        The raw samples, kept for error reports.
    """
    if not lo < hi:
        raise ValueError(f"empty scan interval [{lo}, {hi}]")
    xs = np.geomspace(lo, hi, samples) if geometric and lo > 0 else np.linspace(lo, hi, samples)
    if vectorized:
        values = [float(v) for v in np.asarray(f(xs), dtype=float)]
    else:
        values = [float(f(float(x))) for x in xs]
    brackets = []
    for (x0, f0), (x1, f1) in zip(zip(xs, values), zip(xs[1:], values[1:])):
        if not (np.isfinite(f0) and np.isfinite(f1)):
            continue
        if f0 == 0.0:
            brackets.append((float(x0), float(x0)))
        elif f0 * f1 < 0:
            brackets.append((float(x0), float(x1)))
    if values and values[-1] == 0.0:
        brackets.append((float(xs[-1]), float(xs[-1])))
    return brackets, list(zip(map(float, xs), values))


def bracketed_root(
    f: Callable[[float], float],
    fprime: Callable[[float], float],
    a: float,
    b: float,
    xtol: float = 1e-12,
    bisect_tol: float = 1e-6,
) -> RootResult:
    """Root of ``f`` in ``[a, b]``: bisection down to ``bisect_tol``, then Newton.

    Newton must converge to ``|dx| < xtol`` without leaving ``[a, b]``;
    otherwise Brent's method finishes the job.
    """
    if a == b:
        return RootResult(float(a), (float(a), float(b)), 0, abs(float(f(a))), "exact")
    fa, fb = f(a), f(b)
    if fa * fb > 0:
        raise RootNotBracketed(f"no sign change on [{a}, {b}]", scan=[(a, fa), (b, fb)])
    width = abs(b - a)
    x0, info = optimize.bisect(f, a, b, xtol=max(bisect_tol * width, xtol), full_output=True)
    iterations = info.iterations
    try:
        x, info = optimize.newton(f, x0, fprime=fprime, tol=xtol, maxiter=50, full_output=True, disp=False)
        iterations += info.iterations
        ok = info.converged and min(a, b) <= x <= max(a, b)
    except (RuntimeError, ZeroDivisionError, FloatingPointError):
        ok = False
    method = "newton"
    if not ok:
        x, info = optimize.brentq(f, a, b, xtol=xtol, rtol=4 * np.finfo(float).eps, full_output=True)
        iterations += info.iterations
        method = "brentq"
    return RootResult(float(x), (float(a), float(b)), int(iterations), abs(float(f(x))), method)


def find_roots(
    f: Callable[[float], float],
    fprime: Callable[[float], float],
    lo: float,
    hi: float,
    samples: int = 400,
    xtol: float = 1e-12,
    vectorized: bool = False,
) -> list[RootResult]:
    """All sign-change roots of ``f`` on ``[lo, hi]``.

    Raises
    ------
    RootNotBracketed
        When the scan finds no sign change; the exception carries the scan.
    """
    brackets, scan = scan_sign_changes(f, lo, hi, samples, vectorized=vectorized)
    if not brackets:
        raise RootNotBracketed(f"no sign change of the target function on [{lo:.6g}, {hi:.6g}]", scan=scan)
    return [bracketed_root(f, fprime, a, b, xtol=xtol) for a, b in brackets]
