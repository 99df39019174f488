"""Shared numerical kernels: log grids, monotone root finding, quadrature.

These are deliberately small and self-contained; every routine here is
exercised indirectly by the closed-form checks in the test suite.
"""

from __future__ import annotations

import numpy as np

POINTS_PER_DECADE = 100
SCAN_LO = 1e-6
SCAN_HI = 1e6


def log_grid(lo: float = SCAN_LO, hi: float = SCAN_HI,
             per_decade: int = POINTS_PER_DECADE) -> np.ndarray:
    """Geometric grid on [lo, hi]; hits 1.0 exactly when the range allows."""
    if not (0 < lo < hi):
        raise ValueError(f"need 0 < lo < hi, got [{lo}, {hi}]")
    decades = np.log10(hi) - np.log10(lo)
    n = max(int(round(decades * per_decade)), 1) + 1
    grid = 10.0 ** np.linspace(np.log10(lo), np.log10(hi), n)
    # snap near-integers of the exponent so kink points (t = 1) are sampled exactly
    grid[np.abs(grid - 1.0) < 1e-9] = 1.0
    return grid


def bisect_increasing(fn, target: float, lo: float, hi: float,
                      rtol: float = 1e-13, max_iter: int = 200) -> float:
    """Root of fn(x) = target for scalar nondecreasing fn on a bracket."""
    flo, fhi = fn(lo), fn(hi)
    if flo > target or fhi < target:
        raise ValueError("bracket does not contain the target")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if fn(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * max(hi, 1e-300):
            break
    return 0.5 * (lo + hi)


def bisect_increasing_many(fn, targets: np.ndarray, hi0: float = 1.0,
                           n_iter: int = 170) -> np.ndarray:
    """Vectorized bisection: solve fn(x_i) = targets_i, fn nondecreasing, x >= 0.

    Brackets every component at once by doubling the upper end; all targets
    must be >= fn(0).
    """
    targets = np.asarray(targets, dtype=float)
    hi = np.full(targets.shape, hi0, dtype=float)
    for _ in range(2100):
        short = fn(hi) < targets
        if not np.any(short):
            break
        hi[short] *= 2.0
    else:
        raise OverflowError("target beyond representable range")
    lo = np.zeros_like(hi)
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        below = fn(mid) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def simpson_weights(n_nodes: int, h: float) -> np.ndarray:
    """Composite-Simpson weights on a uniform grid with n_nodes points.

    Even interval counts use plain Simpson; odd counts finish with a 3/8 rule
    on the last three intervals so any n_nodes >= 3 is supported.
    """
    n = n_nodes - 1
    if n < 2:
        raise ValueError("need at least 2 intervals")
    w = np.zeros(n_nodes)
    if n % 2 == 0:
        w[0] = w[-1] = 1.0
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        w *= h / 3.0
    else:
        # Simpson on [0, n-3], 3/8 on the final three intervals
        m = n - 3
        if m >= 2:
            w[0] = w[m] = 1.0
            w[1:m:2] = 4.0
            w[2:m:2] = 2.0
            w[: m + 1] *= h / 3.0
        else:  # n == 3: pure 3/8 rule
            m = 0
        w38 = np.array([1.0, 3.0, 3.0, 1.0]) * (3.0 * h / 8.0)
        w[m : m + 4] += w38
    return w


class TailIntegralError(RuntimeError):
    """Improper tail integral failed to converge."""


def tail_integral(fn, lower: float, rel_tol: float = 1e-8,
                  max_panels: int = 400) -> tuple[float, float]:
    """Integrate fn over [lower, inf) for an eventually power-like integrand.

    Adaptive Simpson on dyadic panels [L, 2L] plus a power-tail extrapolation
    from the measured local exponent.  Returns (value, truncation_error).
    The integrand must decay faster than 1/s eventually.
    """
    if lower <= 0:
        raise ValueError("lower limit must be positive")
    total = 0.0
    left = lower
    alpha_prev = None
    for _ in range(max_panels):
        right = 2.0 * left
        total += _panel_simpson(fn, left, right, rel_tol)
        # local log-log slope at the panel edge
        f_r = float(fn(np.array([right]))[0])
        f_m = float(fn(np.array([right / np.sqrt(2.0)]))[0])
        if f_r <= 0.0 or f_m <= 0.0:
            left = right
            continue
        alpha = np.log(f_r / f_m) / np.log(np.sqrt(2.0))
        if alpha < -1.0:
            tail = f_r * right / (-(alpha + 1.0))
            drift = abs(alpha - alpha_prev) if alpha_prev is not None else np.inf
            small = tail <= rel_tol * max(abs(total), 1e-300)
            stable = drift <= 1e-4 * max(abs(alpha + 1.0), 1e-2)
            if small or stable:
                err = tail if small else tail * drift / max(abs(alpha + 1.0), 1e-2)
                return total + (0.0 if small else tail), max(err, 0.0)
        alpha_prev = alpha if alpha < -1.0 else None
        left = right
    raise TailIntegralError(
        f"tail integral from {lower:g} did not converge in {max_panels} panels")


def _panel_simpson(fn, a: float, b: float, rel_tol: float,
                   max_refine: int = 12) -> float:
    prev = None
    n = 8
    for _ in range(max_refine):
        xs = np.linspace(a, b, n + 1)
        val = float(simpson_weights(n + 1, (b - a) / n) @ fn(xs))
        if prev is not None and abs(val - prev) <= 0.1 * rel_tol * max(abs(val), 1e-300):
            return val
        prev = val
        n *= 2
    return prev


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def cumulative_gauss_log(fn, s_lo: float, ts: np.ndarray) -> np.ndarray:
    """Integral of fn from s_lo to each t (t <= s_lo gives 0).

    Gauss-Legendre panels of bounded width in log space; near machine
    precision for smooth power-like integrands.
    """
    ts = np.asarray(ts, dtype=float)
    flat = ts.ravel()
    order = np.argsort(flat)
    xs = np.log(np.maximum(flat[order], s_lo))
    edges = np.concatenate(([np.log(s_lo)], xs))
    out_sorted = np.zeros(flat.shape)
    acc = 0.0
    for j in range(xs.size):
        a, b = edges[j], edges[j + 1]
        if b > a:
            n_sub = max(int(np.ceil((b - a) / 0.25)), 1)
            bounds = np.linspace(a, b, n_sub + 1)
            mids = 0.5 * (bounds[1:] + bounds[:-1])
            half = 0.5 * (bounds[1:] - bounds[:-1])
            pts = mids[:, None] + half[:, None] * _GL_NODES[None, :]
            ss = np.exp(pts)
            vals = fn(ss.ravel()).reshape(ss.shape) * ss
            acc += float(np.sum(vals @ _GL_WEIGHTS * half))
        out_sorted[j] = acc
    out = np.empty_like(out_sorted)
    out[order] = out_sorted
    return out.reshape(ts.shape) if ts.ndim else float(out[0])


def cumulative_log_simpson(fn, s_lo: float, s_hi: float,
                           per_decade: int = POINTS_PER_DECADE) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative integral of fn from s_lo on a geometric grid.

    Uses the substitution s = e^x so panels are uniform in log space;
    returns (nodes, cumulative values) with cumulative[0] = 0.
    """
    x_lo, x_hi = np.log(s_lo), np.log(s_hi)
    n = max(int(np.ceil((x_hi - x_lo) / np.log(10.0) * per_decade)), 4)
    n += n % 2  # even interval count per node pair
    xs = np.linspace(x_lo, x_hi, 2 * n + 1)
    ss = np.exp(xs)
    vals = fn(ss) * ss  # Jacobian of s = e^x
    h = xs[1] - xs[0]
    # Simpson per node pair gives a cumulative table on the odd-index nodes
    chunks = (vals[:-2:2] + 4.0 * vals[1::2] + vals[2::2]) * (h / 3.0)
    cum = np.concatenate(([0.0], np.cumsum(chunks)))
    return ss[::2], cum
