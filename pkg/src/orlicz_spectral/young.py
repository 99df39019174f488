"""Young functions and their calculus.

A Young function is a convex increasing map G on [0, inf) with G(0) = 0,
represented here by the pair (G, g) of callables with g = G'.  This module
provides the builtin families, inverses, convex conjugates, growth indices,
submultiplicativity constants, growth-ordering predicates and the
Sobolev-side objects (tail integral class, critical function, modulus of
continuity, Hardy-type transform).

All scan-based estimates (indices, constants, ordering witnesses) run on
geometric grids over ``domain_hint`` with 100 points per decade; where a
supremum keeps growing at the grid edge this is reported through a flag
rather than an exception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from ._numerics import (
    SCAN_HI,
    SCAN_LO,
    bisect_increasing_many,
    cumulative_gauss_log,
    cumulative_log_simpson,
    log_grid,
    tail_integral,
)

__all__ = [
    "YoungFunction",
    "OrderingWitness",
    "SobolevClass",
    "ConstantEstimate",
    "MonotonicityReport",
    "InvalidParameterError",
    "CapabilityError",
    "BorderlineSobolevError",
    "make_builtin",
    "from_callables",
    "rescaled",
    "inverse",
    "inverse_many",
    "conjugate",
    "index_profile",
    "delta_prime_constant",
    "inverse_product_constant",
    "prec",
    "prec_prec",
    "prec_prec_report",
    "sobolev_classify",
    "critical_function",
    "sigma",
    "hardy_transform",
    "vectorfield_monotonicity_check",
    "check_young",
]


class InvalidParameterError(ValueError):
    """Family parameter outside its admissible range."""


class CapabilityError(RuntimeError):
    """Operation needs data the Young function does not carry."""


class BorderlineSobolevError(RuntimeError):
    """Tail index too close to the dimension to classify safely."""


@dataclass(frozen=True)
class YoungFunction:
    """Young function G with density g = G' (both vectorized callables).

    ``domain_hint`` is the t-range on which numeric scans are reliable;
    builtin families use [1e-6, 1e6].
    """

    label: str
    G: Callable[[np.ndarray], np.ndarray]
    g: Callable[[np.ndarray], np.ndarray]
    params: dict = field(default_factory=dict)
    g_prime: Optional[Callable[[np.ndarray], np.ndarray]] = None
    domain_hint: tuple[float, float] = (SCAN_LO, SCAN_HI)

    def __call__(self, t):
        return self.G(t)

    def inverse(self, y: float, rtol: float = 1e-12) -> float:
        return inverse(self, y, rtol=rtol)

    def scan_grid(self, per_decade: int = 100) -> np.ndarray:
        return log_grid(*self.domain_hint, per_decade=per_decade)


@dataclass(frozen=True)
class OrderingWitness:
    """Scale k certifying H(t) <= G(k t) for sampled t >= t0."""

    k: float
    t0: float


@dataclass(frozen=True)
class SobolevClass:
    """Convergence class of the dimension-n tail integral of G^{-1}."""

    tag: str  # "finite" | "infinite"
    value: Optional[float] = None
    truncation_error: Optional[float] = None

    @property
    def finite(self) -> bool:
        return self.tag == "finite"


@dataclass(frozen=True)
class ConstantEstimate:
    """Grid supremum with an edge-growth diagnostic."""

    value: float
    edge_growing: bool


@dataclass(frozen=True)
class MonotonicityReport:
    samples: int
    dim: int
    min_dot: float
    violations: int
    abs_tol: float


def _scalar_ok(t) -> bool:
    return np.isscalar(t) or (isinstance(t, np.ndarray) and t.ndim == 0)


def _wrap_scalar_fn(fn) -> Callable:
    """Lift a scalar-only callable to accept numpy arrays."""

    def wrapped(t):
        arr = np.asarray(t, dtype=float)
        if arr.ndim == 0:
            return float(fn(float(arr)))
        return np.fromiter((fn(x) for x in arr.ravel()), dtype=float,
                           count=arr.size).reshape(arr.shape)

    return wrapped


def from_callables(label: str, G, g, g_prime=None,
                   domain_hint: tuple[float, float] = (SCAN_LO, SCAN_HI),
                   params: Optional[dict] = None,
                   vectorized: bool = True) -> YoungFunction:
    """Wrap a user-supplied analytic (G, g) pair as a YoungFunction."""
    if not vectorized:
        G = _wrap_scalar_fn(G)
        g = _wrap_scalar_fn(g)
        g_prime = _wrap_scalar_fn(g_prime) if g_prime is not None else None
    return YoungFunction(label=label, G=G, g=g, params=dict(params or {}),
                         g_prime=g_prime, domain_hint=domain_hint)


# ---------------------------------------------------------------------------
# builtin families
# ---------------------------------------------------------------------------

def _power_family(p: float) -> YoungFunction:
    def G(t):
        return np.asarray(t, dtype=float) ** p

    def g(t):
        return p * np.asarray(t, dtype=float) ** (p - 1.0)

    def g_prime(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            out = p * (p - 1.0) * t ** (p - 2.0)
        return np.where(t > 0, out, 0.0) if p < 2 else out

    return YoungFunction(label=f"power(p={p:g})", G=G, g=g,
                         params={"family": "power", "p": p}, g_prime=g_prime)


def _power_log_family(p: float) -> YoungFunction:
    # G(t) = t^p (1 + |log t|); the density has an upward jump at t = 1 and,
    # for p below (3+sqrt(5))/2, a mild dip just left of it.
    def G(t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        return np.where(t > 0, safe ** p * (1.0 + np.abs(np.log(safe))), 0.0)

    def g(t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        lo = safe ** (p - 1.0) * (p - 1.0 - p * np.log(safe))
        hi = safe ** (p - 1.0) * (p + 1.0 + p * np.log(safe))
        return np.where(t > 0, np.where(t < 1.0, lo, hi), 0.0)

    def g_prime(t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        lo = safe ** (p - 2.0) * ((p - 1.0) * (p - 1.0 - p * np.log(safe)) - p)
        hi = safe ** (p - 2.0) * ((p - 1.0) * (p + 1.0 + p * np.log(safe)) + p)
        return np.where(t > 0, np.where(t < 1.0, lo, hi), 0.0)

    return YoungFunction(label=f"power_log(p={p:g})", G=G, g=g,
                         params={"family": "power_log", "p": p},
                         g_prime=g_prime)


def _piecewise_power_family(p: float, q: float) -> YoungFunction:
    # t^p on (0, 1], t^q on (1, inf)
    def G(t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= 1.0, t ** p, t ** q)

    def g(t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= 1.0, p * t ** (p - 1.0), q * t ** (q - 1.0))

    def g_prime(t):
        t = np.asarray(t, dtype=float)
        lo = p * (p - 1.0) * t ** (p - 2.0)
        hi = q * (q - 1.0) * t ** (q - 2.0)
        out = np.where(t <= 1.0, lo, hi)
        if min(p, q) < 2:
            out = np.where(t > 0, out, 0.0)
        return out

    return YoungFunction(label=f"piecewise_power(p={p:g},q={q:g})", G=G, g=g,
                         params={"family": "piecewise_power", "p": p, "q": q},
                         g_prime=g_prime)


def make_builtin(family: str, **params) -> YoungFunction:
    """Construct a builtin family: power(p), power_log(p), piecewise_power(p, q).

    All three satisfy G(1) = 1.  Raises InvalidParameterError when an
    exponent is not > 1.
    """
    if family == "power":
        p = float(params.pop("p"))
        if params:
            raise InvalidParameterError(f"unexpected parameters {params}")
        if not p > 1.0:
            raise InvalidParameterError(f"power family needs p > 1, got {p}")
        return _power_family(p)
    if family == "power_log":
        p = float(params.pop("p"))
        if params:
            raise InvalidParameterError(f"unexpected parameters {params}")
        if not p > 1.0:
            raise InvalidParameterError(f"power_log family needs p > 1, got {p}")
        return _power_log_family(p)
    if family == "piecewise_power":
        p = float(params.pop("p"))
        q = float(params.pop("q"))
        if params:
            raise InvalidParameterError(f"unexpected parameters {params}")
        if not (p > 1.0 and q > 1.0):
            raise InvalidParameterError(
                f"piecewise_power family needs p, q > 1, got p={p}, q={q}")
        return _piecewise_power_family(p, q)
    raise InvalidParameterError(f"unknown family {family!r}")


def rescaled(F: YoungFunction) -> YoungFunction:
    """Normalize to G(1) = 1 (divides G and g by G(1); not applied automatically)."""
    c = float(F.G(1.0))
    if not (np.isfinite(c) and c > 0):
        raise InvalidParameterError("G(1) must be positive and finite")
    if c == 1.0:
        return F
    G0, g0, gp0 = F.G, F.g, F.g_prime
    return replace(
        F,
        label=f"rescaled({F.label})",
        G=lambda t: G0(t) / c,
        g=lambda t: g0(t) / c,
        g_prime=(lambda t: gp0(t) / c) if gp0 is not None else None,
    )


# ---------------------------------------------------------------------------
# inverse and conjugate
# ---------------------------------------------------------------------------

def inverse(F: YoungFunction, y: float, rtol: float = 1e-12) -> float:
    """Solve G(t) = y for t >= 0 (bracketing bisection + safeguarded Newton)."""
    y = float(y)
    if y < 0:
        raise ValueError("inverse needs y >= 0")
    if y == 0.0:
        return 0.0
    lo, hi = 0.0, 1.0
    for _ in range(700):
        if float(F.G(hi)) >= y:
            break
        lo, hi = hi, hi * 2.0
        if hi > 1e200:
            raise OverflowError(f"y = {y:g} beyond representable range of {F.label}")
    else:
        raise OverflowError(f"y = {y:g} beyond representable range of {F.label}")
    t = 0.5 * (lo + hi)
    for _ in range(200):
        Gt = float(F.G(t))
        if abs(Gt - y) <= rtol * max(1.0, y):
            return t
        if Gt < y:
            lo = t
        else:
            hi = t
        gt = float(F.g(t))
        t_new = t - (Gt - y) / gt if gt > 0 else t
        if not (lo < t_new < hi):
            t_new = 0.5 * (lo + hi)  # Newton left the bracket: bisect
        t = t_new
    return t


def inverse_many(F: YoungFunction, ys: np.ndarray) -> np.ndarray:
    """Vectorized G^{-1} on an array of values (shared bracketed bisection)."""
    ys = np.asarray(ys, dtype=float)
    flat = ys.ravel()
    pos = flat > 0
    out = np.zeros(flat.shape)
    if np.any(pos):
        out[pos] = bisect_increasing_many(lambda t: np.asarray(F.G(t), dtype=float),
                                          flat[pos])
    return out.reshape(ys.shape) if ys.ndim else float(out[0])


def conjugate(F: YoungFunction) -> YoungFunction:
    """Convex conjugate sup_a {t a - G(a)}.

    The maximizer a*(t) solves g(a) = t and doubles as the density of the
    conjugate; it is found by vectorized bisection with a coarse-scan
    safeguard for densities that are not globally monotone.
    """
    G0, g0 = F.G, F.g
    scan = log_grid(*F.domain_hint, per_decade=20)

    def argmax(t):
        t = np.asarray(t, dtype=float)
        flat = t.ravel()
        pos = flat > 0
        a = np.zeros(flat.shape)
        if np.any(pos):
            a[pos] = bisect_increasing_many(
                lambda x: np.asarray(g0(x), dtype=float), flat[pos])
            # safeguard: a coarse scan can beat the bisection root when g dips
            vals = flat[pos, None] * scan[None, :] - np.asarray(G0(scan), dtype=float)[None, :]
            best = scan[np.argmax(vals, axis=1)]
            phi = lambda aa: flat[pos] * aa - np.asarray(G0(aa), dtype=float)
            take_scan = phi(best) > phi(a[pos]) * (1 + 1e-12) + 1e-300
            if np.any(take_scan):
                refined = _refine_max(G0, flat[pos][take_scan], best[take_scan])
                sel = a[pos]
                sel[take_scan] = refined
                a[pos] = sel
        return a.reshape(t.shape) if t.ndim else float(a)

    def G_conj(t):
        t = np.asarray(t, dtype=float)
        a = np.asarray(argmax(t), dtype=float)
        val = t * a - np.asarray(G0(a), dtype=float)
        return np.maximum(val, 0.0)

    return YoungFunction(label=f"conjugate({F.label})", G=G_conj, g=argmax,
                         params={"conjugate_of": F.label},
                         domain_hint=F.domain_hint)


def _refine_max(G0, ts: np.ndarray, centers: np.ndarray,
                n_iter: int = 90) -> np.ndarray:
    """Golden-section polish of argmax_a (t a - G(a)) around grid maximizers."""
    lo = centers / 1.3
    hi = centers * 1.3
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - gr * (hi - lo)
    d = lo + gr * (hi - lo)
    phi = lambda a: ts * a - np.asarray(G0(a), dtype=float)
    fc, fd = phi(c), phi(d)
    for _ in range(n_iter):
        move_right = fc < fd
        lo = np.where(move_right, c, lo)
        hi = np.where(move_right, hi, d)
        c = hi - gr * (hi - lo)
        d = lo + gr * (hi - lo)
        fc, fd = phi(c), phi(d)
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# growth indices and Delta' constants
# ---------------------------------------------------------------------------

def index_profile(F: YoungFunction, mode: str = "G_based") -> tuple[float, float]:
    """(inf, sup) over the scan grid of t g/G (G_based) or t g'/g (g_based)."""
    ts = F.scan_grid()
    if mode == "G_based":
        ratio = ts * np.asarray(F.g(ts), dtype=float) / np.asarray(F.G(ts), dtype=float)
    elif mode == "g_based":
        if F.g_prime is None:
            raise CapabilityError(f"{F.label} has no density derivative")
        ratio = ts * np.asarray(F.g_prime(ts), dtype=float) / np.asarray(F.g(ts), dtype=float)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ratio = ratio[np.isfinite(ratio)]
    return float(np.min(ratio)), float(np.max(ratio))


def _edge_sup(ratio_on: Callable[[np.ndarray], float]) -> ConstantEstimate:
    full = ratio_on(log_grid(SCAN_LO, SCAN_HI))
    inner = ratio_on(log_grid(SCAN_LO * 10.0, SCAN_HI / 10.0))
    value = max(full, 1.0)
    growing = full > inner * (1.0 + 1e-3)
    return ConstantEstimate(value=value, edge_growing=bool(growing))


def delta_prime_constant(F: YoungFunction) -> ConstantEstimate:
    """sup G(ab) / (G(a) G(b)) over a grid square, clamped below at 1."""

    def sup_on(grid: np.ndarray) -> float:
        Gv = np.asarray(F.G(grid), dtype=float)
        ab = np.multiply.outer(grid, grid)
        ratios = np.asarray(F.G(ab), dtype=float) / np.multiply.outer(Gv, Gv)
        return float(np.max(ratios[np.isfinite(ratios)]))

    return _edge_sup(sup_on)


def inverse_product_constant(F: YoungFunction) -> ConstantEstimate:
    """sup G^{-1}(s) G^{-1}(t) / G^{-1}(st) over a grid square, >= 1.

    Products of geometric grid points land on the doubled geometric grid, so
    only O(n) inverse evaluations are needed.
    """

    def sup_on(grid: np.ndarray) -> float:
        n = grid.size
        lo, hi = grid[0] ** 2, grid[-1] ** 2
        ext = np.geomspace(lo, hi, 2 * n - 1)
        inv_grid = inverse_many(F, grid)
        inv_ext = inverse_many(F, ext)
        i = np.arange(n)
        ratios = np.multiply.outer(inv_grid, inv_grid) / inv_ext[np.add.outer(i, i)]
        return float(np.max(ratios[np.isfinite(ratios)]))

    return _edge_sup(sup_on)


# ---------------------------------------------------------------------------
# growth ordering
# ---------------------------------------------------------------------------

_PREC_K_GRID = 10.0 ** np.linspace(-4.0, 4.0, 321)
_PREC_K_GRID[np.abs(_PREC_K_GRID - 1.0) < 1e-12] = 1.0


def prec(H: YoungFunction, G: YoungFunction, t0: float = 0.0) -> Optional[OrderingWitness]:
    """Smallest grid k with H(t) <= G(k t) for all sampled t >= t0, else None."""
    if t0 < 0:
        raise ValueError("t0 must be >= 0")
    lo = max(t0, SCAN_LO)
    ts = log_grid(lo, max(SCAN_HI, lo * 1e3))
    if t0 > 0:
        ts = np.unique(np.concatenate(([t0], ts)))
    Hv = np.asarray(H.G(ts), dtype=float)
    for k in _PREC_K_GRID:
        Gv = np.asarray(G.G(k * ts), dtype=float)
        if np.all(Hv <= Gv * (1.0 + 1e-12) + 1e-300):
            return OrderingWitness(k=float(k), t0=float(t0))
    return None


def prec_prec_report(H: YoungFunction, G: YoungFunction) -> dict:
    """Decay diagnostics for H(t)/G(k t) -> 0 along doubling t, per probe k."""
    probes = (0.1, 1.0, 10.0)
    ts = 2.0 ** np.arange(0, 41, dtype=float)
    out = {}
    for k in probes:
        with np.errstate(over="ignore"):
            ratios = np.asarray(H.G(ts), dtype=float) / np.asarray(G.G(k * ts), dtype=float)
        ratios = ratios[np.isfinite(ratios) & (ratios > 0)]
        if ratios.size < 10:
            out[k] = {"decays": False, "reason": "ratio left float range"}
            continue
        tail = ratios[-20:]
        monotone = bool(np.all(np.diff(tail) < 0))
        shrunk = bool(ratios[-1] <= 0.9 * ratios[ratios.size // 2])
        out[k] = {
            "decays": monotone and shrunk,
            "reason": "" if (monotone and shrunk) else
            f"ratio not vanishing (last={ratios[-1]:.3g}, mid={ratios[ratios.size // 2]:.3g})",
        }
    return out


def prec_prec(H: YoungFunction, G: YoungFunction) -> bool:
    """True iff H(t)/G(k t) decays to 0 for every probe scale k."""
    return all(entry["decays"] for entry in prec_prec_report(H, G).values())


# ---------------------------------------------------------------------------
# Sobolev-side objects
# ---------------------------------------------------------------------------

def _tail_index(G: YoungFunction, t_big: float = 1e3) -> float:
    ts = log_grid(t_big, G.domain_hint[1])
    ratio = ts * np.asarray(G.g(ts), dtype=float) / np.asarray(G.G(ts), dtype=float)
    return float(np.median(ratio[np.isfinite(ratio)]))


def _near_zero_index(G: YoungFunction, t_small: float = 1e-3) -> float:
    ts = log_grid(G.domain_hint[0], t_small)
    ratio = ts * np.asarray(G.g(ts), dtype=float) / np.asarray(G.G(ts), dtype=float)
    return float(np.median(ratio[np.isfinite(ratio)]))


def _tail_integrand(G: YoungFunction, n: int) -> Callable[[np.ndarray], np.ndarray]:
    expo = 1.0 + 1.0 / n

    def fn(ss: np.ndarray) -> np.ndarray:
        ss = np.asarray(ss, dtype=float)
        return inverse_many(G, ss) / ss ** expo

    return fn


def sobolev_classify(G: YoungFunction, n: int, index_tol: float = 1e-2) -> SobolevClass:
    """Decide whether the tail integral of G^{-1}(s) s^{-1-1/n} converges.

    Classification runs off the measured tail index of G; an index within
    ``index_tol`` of n is refused (BorderlineSobolevError) instead of guessed.
    """
    if n < 1 or int(n) != n:
        raise ValueError("dimension must be a positive integer")
    p_tail = _tail_index(G)
    if abs(p_tail - n) < index_tol:
        raise BorderlineSobolevError(
            f"tail index {p_tail:.4f} of {G.label} within {index_tol:g} of n={n}")
    if p_tail < n:
        return SobolevClass(tag="infinite")
    value, err = tail_integral(_tail_integrand(G, int(n)), lower=1.0)
    return SobolevClass(tag="finite", value=value, truncation_error=err)


def sigma(G: YoungFunction, n: int, t: float) -> float:
    """Modulus of continuity: the tail integral of G^{-1} from t^{-n}."""
    if t <= 0:
        raise ValueError("t must be positive")
    cls = sobolev_classify(G, n)
    if not cls.finite:
        raise ValueError(f"sigma undefined: tail integral of {G.label} diverges at n={n}")
    value, _ = tail_integral(_tail_integrand(G, int(n)), lower=float(t) ** (-float(n)))
    return value


def _interp_extrap(x: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """np.interp with linear continuation of the boundary slopes.

    Exact for globally linear data (power laws in log-log coordinates).
    """
    out = np.interp(x, xs, ys)
    lo = x < xs[0]
    if np.any(lo):
        slope = (ys[1] - ys[0]) / (xs[1] - xs[0])
        out = np.where(lo, ys[0] + slope * (x - xs[0]), out)
    hi = x > xs[-1]
    if np.any(hi):
        slope = (ys[-1] - ys[-2]) / (xs[-1] - xs[-2])
        out = np.where(hi, ys[-1] + slope * (x - xs[-1]), out)
    return out


def critical_function(G: YoungFunction, n: int) -> YoungFunction:
    """Sobolev-critical Young function G* from the cumulative inverse integral.

    Requires the divergent-tail regime and a near-zero index below n so the
    defining integral converges at 0.  The result carries a log-log
    interpolation table refined to ~1e-9 relative interpolation error.
    """
    cls_infinite = False
    try:
        cls_infinite = not sobolev_classify(G, n).finite
    except BorderlineSobolevError:
        raise
    if not cls_infinite:
        raise ValueError(f"critical function needs the divergent-tail regime "
                         f"({G.label}, n={n})")
    p0 = _near_zero_index(G)
    if p0 >= n:
        raise ValueError(f"near-zero index {p0:.3f} >= n = {n}: "
                         f"the defining integral diverges at 0")
    fn = _tail_integrand(G, int(n))

    s_lo, s_hi = 1e-28, 1e28
    per_decade = 40
    for _ in range(3):
        nodes, cum = cumulative_log_simpson(fn, s_lo, s_hi, per_decade=per_decade)
        nodes2, cum2 = cumulative_log_simpson(fn, s_lo, s_hi, per_decade=2 * per_decade)
        head = float(fn(np.array([s_lo]))[0]) * s_lo / (1.0 + (1.0 / p0 - 1.0 - 1.0 / n))
        table = cum + head
        probe = np.interp(np.log(nodes[1:-1]), np.log(nodes2), cum2 + head)
        err = np.max(np.abs(probe - table[1:-1]) / np.maximum(probe, 1e-300))
        if err < 1e-9:
            break
        per_decade *= 2

    log_s, log_phi = np.log(nodes), np.log(table)

    def phi(t):  # (G*)^{-1}
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        out = np.exp(_interp_extrap(np.log(safe), log_s, log_phi))
        return np.where(t > 0, out, 0.0)

    def gstar_G(y):  # G*(y): invert the table directly
        y = np.asarray(y, dtype=float)
        safe = np.where(y > 0, y, 1.0)
        out = np.exp(_interp_extrap(np.log(safe), log_phi, log_s))
        return np.where(y > 0, out, 0.0)

    def gstar_density(y):  # d G*/dy = 1 / phi'(G*(y)), with phi' analytic
        y = np.asarray(y, dtype=float)
        t = np.asarray(gstar_G(y), dtype=float)
        slope = np.asarray(fn(np.where(t > 0, t, 1.0)), dtype=float)
        with np.errstate(divide="ignore"):
            out = np.where(t > 0, 1.0 / slope, 0.0)
        return out

    hint = (float(np.exp(log_phi[2])), float(np.exp(log_phi[-3])))
    return YoungFunction(
        label=f"critical({G.label},n={n})",
        G=gstar_G,
        g=gstar_density,
        params={"critical_of": G.label, "n": int(n)},
        domain_hint=hint,
    )


def hardy_transform(H: YoungFunction, t0: float = 0.0) -> YoungFunction:
    """The map t -> t * integral_{t0}^{t} H(s)/s^2 ds as a Young-type function.

    With t0 = 0 the near-zero index of H must exceed 1 (integrability of
    H(s)/s^2 at the origin); values at t <= t0 are clamped to 0.
    """
    if t0 < 0:
        raise ValueError("t0 must be >= 0")

    def integrand(ss):
        ss = np.asarray(ss, dtype=float)
        return np.asarray(H.G(ss), dtype=float) / ss ** 2

    if t0 == 0.0:
        p0 = _near_zero_index(H)
        if p0 <= 1.0 + 1e-9:
            raise ValueError(
                f"H(s)/s^2 not integrable at 0 (near-zero index {p0:.3f}); pass t0 > 0")
        s_lo = 1e-14
        head = float(integrand(np.array([s_lo]))[0]) * s_lo / (p0 - 1.0)
    else:
        s_lo = t0
        head = 0.0

    def K(t):
        t = np.asarray(t, dtype=float)
        out = cumulative_gauss_log(integrand, s_lo, t) + head
        return np.where(t > t0, out, 0.0)

    def G_hat(t):
        t = np.asarray(t, dtype=float)
        return np.where(t > t0, t * K(t), 0.0)

    def g_hat(t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        return np.where(t > t0, K(t) + np.asarray(H.G(safe), dtype=float) / safe, 0.0)

    return YoungFunction(
        label=f"hardy({H.label},t0={t0:g})",
        G=G_hat,
        g=g_hat,
        params={"hardy_of": H.label, "t0": float(t0)},
        domain_hint=(max(t0, SCAN_LO), SCAN_HI),
    )


# ---------------------------------------------------------------------------
# vector-field monotonicity
# ---------------------------------------------------------------------------

def vectorfield_monotonicity_check(G: YoungFunction, samples: int = 10 ** 5,
                                   dim: int = 3, seed: int = 0,
                                   abs_tol: float = 1e-12) -> MonotonicityReport:
    """Sample (F(a) - F(b)) . (a - b) for F(x) = g(|x|) x / |x|.

    Requires the density-derivative index bound t g'/g >= 1 (the p- >= 2
    regime where the field is monotone); the field at 0 is the zero vector.
    """
    if G.g_prime is None:
        raise CapabilityError(f"{G.label} has no density derivative")
    lo, _ = index_profile(G, mode="g_based")
    if lo < 1.0 - 1e-9:
        raise CapabilityError(
            f"monotonicity needs t g'/g >= 1 everywhere; {G.label} reaches {lo:.3f}")
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((samples, dim))
    b = rng.standard_normal((samples, dim))

    def field(x):
        r = np.linalg.norm(x, axis=1)
        safe = np.where(r > 0, r, 1.0)
        coef = np.where(r > 0, np.asarray(G.g(safe), dtype=float) / safe, 0.0)
        return coef[:, None] * x

    dots = np.einsum("ij,ij->i", field(a) - field(b), a - b)
    return MonotonicityReport(
        samples=samples,
        dim=dim,
        min_dot=float(np.min(dots)),
        violations=int(np.count_nonzero(dots < -abs_tol)),
        abs_tol=abs_tol,
    )


# ---------------------------------------------------------------------------
# invariant audit
# ---------------------------------------------------------------------------

def check_young(F: YoungFunction, per_decade: int = 20) -> list[str]:
    """Audit the Young-function invariants on a log grid; returns violations."""
    issues: list[str] = []
    ts = F.scan_grid(per_decade=per_decade)
    Gv = np.asarray(F.G(ts), dtype=float)
    gv = np.asarray(F.g(ts), dtype=float)
    if abs(float(F.G(0.0))) > 1e-300:
        issues.append("G(0) != 0")
    if not np.all(np.diff(Gv) > 0):
        issues.append("G not strictly increasing on the grid")
    slopes = np.diff(Gv) / np.diff(ts)
    bad = np.diff(slopes) < -1e-9 * np.abs(slopes[1:])
    if np.any(bad):
        where = ts[1:-1][bad]
        issues.append(f"three-point convexity fails near t in "
                      f"[{where.min():.3g}, {where.max():.3g}]")
    if np.any(gv[ts > 0] <= 0):
        issues.append("g not positive for t > 0")
    if np.any(np.diff(gv) < -1e-9 * np.maximum.reduce([np.abs(gv[:-1]), np.abs(gv[1:])])):
        issues.append("g not nondecreasing on the grid")
    if gv[-1] < 1e3:
        issues.append(f"g({ts[-1]:.3g}) = {gv[-1]:.3g}: density does not blow up")
    # quadrature spot check of G(t) = integral of g
    for t in (ts[len(ts) // 3], ts[2 * len(ts) // 3]):
        xs = np.linspace(0.0, t, 20001)
        quad = np.trapezoid(np.asarray(F.g(xs), dtype=float), xs)
        if abs(quad - float(F.G(t))) > 1e-3 * max(1.0, abs(float(F.G(t)))):
            issues.append(f"G({t:.3g}) deviates from the integral of g")
    return issues
