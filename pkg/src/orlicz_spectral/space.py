"""Discretized Orlicz-space machinery on intervals and radial balls.

Fields are piecewise-linear nodal functions on uniform grids.  Integrals use
composite Simpson on the nodal grid; on balls the radial measure factor
n omega_n r^(n-1) is folded into the quadrature weights so that the gradient
energy stays exact per element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ._numerics import simpson_weights
from .young import YoungFunction, inverse

__all__ = [
    "DomainGeometry",
    "Field",
    "Weight",
    "GridMismatchError",
    "modular",
    "luxemburg_norm",
    "char_fn_norm",
    "tau",
    "holder_defect",
    "gradient_field",
]


class GridMismatchError(ValueError):
    """Operands live on incompatible grids."""


def unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


@dataclass(frozen=True)
class DomainGeometry:
    """Interval (a, b) or radial ball of radius R in dimension n."""

    kind: str  # "interval" | "ball"
    a: float = 0.0
    b: float = 1.0
    radius: float = 1.0
    dim: int = 1

    @staticmethod
    def interval(a: float, b: float) -> "DomainGeometry":
        if not a < b:
            raise ValueError(f"need a < b, got ({a}, {b})")
        return DomainGeometry(kind="interval", a=float(a), b=float(b), dim=1)

    @staticmethod
    def ball(radius: float, dim: int) -> "DomainGeometry":
        if radius <= 0 or dim < 1:
            raise ValueError(f"need radius > 0 and dim >= 1, got ({radius}, {dim})")
        return DomainGeometry(kind="ball", radius=float(radius), dim=int(dim))

    @property
    def measure(self) -> float:
        if self.kind == "interval":
            return self.b - self.a
        return unit_ball_volume(self.dim) * self.radius ** self.dim

    @property
    def inradius(self) -> float:
        if self.kind == "interval":
            return 0.5 * (self.b - self.a)
        return self.radius

    def grid(self, n_elems: int) -> np.ndarray:
        if self.kind == "interval":
            return np.linspace(self.a, self.b, n_elems + 1)
        return np.linspace(0.0, self.radius, n_elems + 1)

    def node_measure_factor(self, x: np.ndarray) -> np.ndarray:
        """Density of the volume measure at the given coordinates."""
        if self.kind == "interval":
            return np.ones_like(x)
        n = self.dim
        return n * unit_ball_volume(n) * x ** (n - 1)

    def element_measures(self, x: np.ndarray) -> np.ndarray:
        """Exact measure of each grid element."""
        if self.kind == "interval":
            return np.diff(x)
        n = self.dim
        return unit_ball_volume(n) * np.diff(x ** n)


@dataclass(frozen=True)
class Field:
    """Piecewise-linear scalar function given by nodal values on a uniform grid.

    Interval fields vanish at both ends; ball fields are radial profiles
    vanishing at r = R (the center value is free).
    """

    domain: DomainGeometry
    values: np.ndarray

    def __post_init__(self):
        vals = np.ascontiguousarray(np.asarray(self.values, dtype=float))
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1 or vals.size < 3:
            raise ValueError("a field needs at least 3 nodes (N >= 2 elements)")

    @property
    def n_elems(self) -> int:
        return self.values.size - 1

    @property
    def grid(self) -> np.ndarray:
        return self.domain.grid(self.n_elems)

    @property
    def h(self) -> float:
        g = self.grid
        return float(g[1] - g[0])

    def boundary_ok(self, tol: float = 0.0) -> bool:
        v = self.values
        if self.domain.kind == "interval":
            return abs(v[0]) <= tol and abs(v[-1]) <= tol
        return abs(v[-1]) <= tol

    @staticmethod
    def from_function(domain: DomainGeometry, n_elems: int,
                      fn: Callable[[np.ndarray], np.ndarray]) -> "Field":
        x = domain.grid(n_elems)
        return Field(domain=domain, values=np.asarray(fn(x), dtype=float))

    def with_values(self, values: np.ndarray) -> "Field":
        return Field(domain=self.domain, values=values)

    def scaled(self, s: float) -> "Field":
        return Field(domain=self.domain, values=s * self.values)


@dataclass(frozen=True)
class Weight:
    """Nonnegative weight with cached L-inf and L1 norms on the domain.

    Closed-form families carry exact norms where available; sampled and bump
    weights estimate the L1 norm by fine quadrature at construction.
    """

    kind: str
    fn: Callable[[np.ndarray], np.ndarray]
    domain: DomainGeometry
    linf_norm: float
    l1_norm: float
    params: dict = field(default_factory=dict)

    def __call__(self, x):
        out = np.asarray(self.fn(np.asarray(x, dtype=float)), dtype=float)
        if np.any(out < 0):
            raise ValueError("weight evaluated negative")
        return out

    @staticmethod
    def constant(domain: DomainGeometry, value: float = 1.0) -> "Weight":
        if value < 0:
            raise ValueError("weight must be nonnegative")
        return Weight(kind="constant", fn=lambda x: np.full_like(x, float(value)),
                      domain=domain, linf_norm=float(value),
                      l1_norm=float(value) * domain.measure,
                      params={"value": float(value)})

    @staticmethod
    def step(domain: DomainGeometry, breakpoint: float, left: float,
             right: float) -> "Weight":
        if left < 0 or right < 0:
            raise ValueError("weight must be nonnegative")
        lo = domain.a if domain.kind == "interval" else 0.0
        hi = domain.b if domain.kind == "interval" else domain.radius
        if not lo < breakpoint < hi:
            raise ValueError("breakpoint outside the domain")
        fn = lambda x: np.where(x < breakpoint, float(left), float(right))
        if domain.kind == "interval":
            l1 = left * (breakpoint - lo) + right * (hi - breakpoint)
        else:
            vol = unit_ball_volume(domain.dim)
            inner = vol * breakpoint ** domain.dim
            l1 = left * inner + right * (domain.measure - inner)
        return Weight(kind="step", fn=fn, domain=domain,
                      linf_norm=float(max(left, right)), l1_norm=float(l1),
                      params={"breakpoint": float(breakpoint),
                              "left": float(left), "right": float(right)})

    @staticmethod
    def bump(domain: DomainGeometry, center: float, width: float,
             amplitude: float, base: float = 1.0) -> "Weight":
        if base < 0 or base + amplitude < 0:
            raise ValueError("weight must be nonnegative")

        def fn(x):
            return base + amplitude * np.exp(-(((x - center) / width) ** 2))

        w = Weight(kind="bump", fn=fn, domain=domain,
                   linf_norm=float(base + max(amplitude, 0.0)),
                   l1_norm=1.0,
                   params={"center": float(center), "width": float(width),
                           "amplitude": float(amplitude), "base": float(base)})
        object.__setattr__(w, "l1_norm", _quad_l1(w))
        return w

    @staticmethod
    def from_samples(domain: DomainGeometry, values: np.ndarray) -> "Weight":
        vals = np.asarray(values, dtype=float)
        if np.any(vals < 0):
            raise ValueError("weight samples must be nonnegative")
        grid = domain.grid(vals.size - 1)

        def fn(x):
            return np.interp(x, grid, vals)

        w = Weight(kind="samples", fn=fn, domain=domain,
                   linf_norm=float(np.max(vals)), l1_norm=1.0,
                   params={"n_nodes": int(vals.size)})
        object.__setattr__(w, "l1_norm", _quad_l1(w))
        return w


def _quad_l1(w: Weight, n: int = 4096) -> float:
    x = w.domain.grid(n)
    vals = w(x) * w.domain.node_measure_factor(x)
    return float(simpson_weights(n + 1, x[1] - x[0]) @ vals)


def _quad_nodes(u: Field, w: Weight) -> tuple[np.ndarray, np.ndarray]:
    if w.domain != u.domain:
        raise GridMismatchError("field and weight live on different domains")
    x = u.grid
    quad = simpson_weights(x.size, x[1] - x[0]) * u.domain.node_measure_factor(x)
    return x, quad


def modular(F: YoungFunction, w: Weight, u: Field) -> float:
    """Simpson value of the weighted modular of |u|."""
    x, quad = _quad_nodes(u, w)
    return float(quad @ (np.asarray(F.G(np.abs(u.values)), dtype=float) * w(x)))


def luxemburg_norm(F: YoungFunction, w: Weight, u: Field,
                   rel_tol: float = 1e-10, max_iter: int = 200) -> float:
    """The unique delta with modular(F, w, u / delta) = 1 (0 for u == 0).

    Bisection on the strictly decreasing map delta -> modular(u / delta).
    """
    umax = float(np.max(np.abs(u.values)))
    if umax == 0.0 or modular(F, w, u) == 0.0:
        return 0.0
    x, quad = _quad_nodes(u, w)
    wx = w(x)
    au = np.abs(u.values)

    def phi(delta: float) -> float:
        return float(quad @ (np.asarray(F.G(au / delta), dtype=float) * wx))

    lo = hi = umax
    for _ in range(700):
        if phi(hi) <= 1.0:
            break
        hi *= 2.0
    for _ in range(700):
        if phi(lo) >= 1.0:
            break
        lo *= 0.5
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if phi(mid) > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rel_tol * hi:
            break
    return 0.5 * (lo + hi)


def char_fn_norm(F: YoungFunction, m: float) -> float:
    """Exact Luxemburg norm 1 / F^{-1}(1/m) of an indicator of measure m."""
    if m <= 0:
        raise ValueError("measure must be positive")
    return 1.0 / inverse(F, 1.0 / m)


def tau(F: YoungFunction, m: float) -> float:
    """The norm bound m * F^{-1}(1/m) for indicators of measure m."""
    if m <= 0:
        raise ValueError("measure must be positive")
    return m * inverse(F, 1.0 / m)


def holder_defect(u: Field, v: Field, F: YoungFunction, w: Weight) -> float:
    """RHS minus LHS of the Orlicz Hoelder inequality (contract: >= 0).

    LHS = integral of |u v| w; RHS = 2 ||u||_{F,w} ||v||_{F~,w} with F~ the
    conjugate of F.
    """
    from .young import conjugate  # local import to keep module load light

    if u.domain != v.domain or u.values.size != v.values.size:
        raise GridMismatchError("fields live on different grids")
    x, quad = _quad_nodes(u, w)
    lhs = float(quad @ (np.abs(u.values * v.values) * w(x)))
    rhs = 2.0 * luxemburg_norm(F, w, u) * luxemburg_norm(conjugate(F), w, v)
    return rhs - lhs


def gradient_field(u: Field) -> np.ndarray:
    """Element-wise constant derivative (exact for piecewise-linear fields)."""
    return np.diff(u.values) / u.h
