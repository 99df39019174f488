"""First eigenvalue of the Dirichlet g-Laplacian at a prescribed energy level.

The eigenvalue lambda_{1,mu} is the infimum of I(u)/J(u) over fields with
J(u) = mu, where I is the gradient energy sum G(|u'|) and J the weighted
modular of H.  The discrete minimization runs projected descent: a
preconditioned descent step on the nodal values of I, Armijo backtracking,
then rescaling back onto the level set.  On the level set J = mu the
quotient equals I/mu, so enforcing monotone decrease of I after projection
enforces monotone decrease of lambda.

Ball domains are handled through radial profiles; the resulting value is a
radial Ritz upper estimate of the true eigenvalue, which is exactly the side
needed when verifying lower-bound formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal, solveh_banded

from ._numerics import simpson_weights
from .space import DomainGeometry, Field, Weight
from .young import YoungFunction, index_profile, inverse_many

__all__ = [
    "EigenProblem",
    "EigenResult",
    "SolveOptions",
    "DegenerateFieldError",
    "NonConvergenceError",
    "level_project",
    "energy",
    "rayleigh",
    "grad_luxemburg_norm",
    "solve_first",
    "weak_residual",
    "mu_sweep",
    "MuSweepResult",
    "refine_study",
    "RefineStudy",
]

LEVEL_TOL = 1e-10
SLOPE_CUTOFF = 1e-14
SOLVER_TOL = 1e-4  # relative tolerance for property verdicts


class DegenerateFieldError(ValueError):
    """Field vanishes on the support of the weight."""


class NonConvergenceError(RuntimeError):
    def __init__(self, msg: str, history: list[float]):
        super().__init__(msg)
        self.history = history


@dataclass(frozen=True)
class EigenProblem:
    G: YoungFunction
    H: YoungFunction
    w: Weight
    domain: DomainGeometry
    mu: float = 1.0

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        if self.w.linf_norm <= 0:
            raise ValueError("weight vanishes identically")
        if self.w.domain != self.domain:
            raise ValueError("weight defined on a different domain")
        # record doubling indices; finiteness is what the theory needs
        object.__setattr__(self, "_indices", {
            "G": index_profile(self.G), "H": index_profile(self.H)})

    @property
    def indices(self) -> dict:
        return self._indices


@dataclass
class SolveOptions:
    N: int = 512
    max_iters: int = 600
    seed: int = 0
    restarts: int = 3
    lam_rel_tol: float = 1e-8
    lam_stall_iters: int = 10
    kkt_tol: float = 1e-6


@dataclass(frozen=True)
class EigenResult:
    lam: float
    u: Field
    mu: float
    iterations: int
    kkt_residual: float
    history: tuple
    grid_N: int
    restart: int = 0

    @property
    def label(self) -> str:
        return ("radial-ritz-upper" if self.u.domain.kind == "ball"
                else "interval-ritz")


# ---------------------------------------------------------------------------
# discrete functionals
# ---------------------------------------------------------------------------

def _geometry(problem: EigenProblem, N: int):
    x = problem.domain.grid(N)
    h = x[1] - x[0]
    elem = problem.domain.element_measures(x)            # exact element measures
    quad = simpson_weights(N + 1, h) * problem.domain.node_measure_factor(x)
    wq = quad * problem.w(x)                             # J quadrature weights
    return x, h, elem, wq


def energy(G: YoungFunction, u: Field) -> float:
    """Gradient energy: exact per element for piecewise-linear fields."""
    slopes = np.diff(u.values) / u.h
    elem = u.domain.element_measures(u.grid)
    return float(elem @ np.asarray(G.G(np.abs(slopes)), dtype=float))


def _level_value(H: YoungFunction, wq: np.ndarray, values: np.ndarray) -> float:
    return float(wq @ np.asarray(H.G(np.abs(values)), dtype=float))


def level_value(problem: EigenProblem, u: Field) -> float:
    """J(u): Simpson value of the weighted H-modular."""
    _, _, _, wq = _geometry(problem, u.n_elems)
    return _level_value(problem.H, wq, u.values)


def level_project(H: YoungFunction, w: Weight, u: Field, mu: float,
                  rel_tol: float = LEVEL_TOL) -> Field:
    """Scale u onto the level set J(s u) = mu (J is strictly increasing in s)."""
    x = u.grid
    quad = simpson_weights(x.size, x[1] - x[0]) * u.domain.node_measure_factor(x)
    wq = quad * w(x)
    J0 = _level_value(H, wq, u.values)
    if J0 <= 0.0:
        raise DegenerateFieldError("J(u) = 0: field vanishes on supp(w)")
    s = _project_scale(H, wq, u.values, mu, rel_tol)
    return u.scaled(s)


def _project_scale(H, wq, values, mu, rel_tol=LEVEL_TOL) -> float:
    lo = hi = 1.0
    for _ in range(700):
        if _level_value(H, wq, hi * values) >= mu:
            break
        hi *= 2.0
    for _ in range(700):
        if _level_value(H, wq, lo * values) <= mu:
            break
        lo *= 0.5
    for _ in range(220):
        mid = 0.5 * (lo + hi)
        if _level_value(H, wq, mid * values) < mu:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 0.25 * rel_tol * hi:
            break
    return 0.5 * (lo + hi)


def rayleigh(problem: EigenProblem, u: Field) -> float:
    """I(u) / J(u)."""
    J = level_value(problem, u)
    if J <= 0.0:
        raise DegenerateFieldError("J(u) = 0: field vanishes on supp(w)")
    return energy(problem.G, u) / J


def grad_luxemburg_norm(G: YoungFunction, u: Field, rel_tol: float = 1e-12) -> float:
    """Luxemburg norm of |grad u|: the delta with sum G(|slope|/delta) m_e = 1.

    Exact on piecewise-linear fields because the slopes are element constants.
    """
    slopes = np.abs(np.diff(u.values) / u.h)
    elem = u.domain.element_measures(u.grid)
    smax = float(np.max(slopes))
    if smax == 0.0:
        return 0.0

    def phi(delta: float) -> float:
        return float(elem @ np.asarray(G.G(slopes / delta), dtype=float))

    lo = hi = smax
    for _ in range(700):
        if phi(hi) <= 1.0:
            break
        hi *= 2.0
    for _ in range(700):
        if phi(lo) >= 1.0:
            break
        lo *= 0.5
    for _ in range(220):
        mid = 0.5 * (lo + hi)
        if phi(mid) > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rel_tol * hi:
            break
    return 0.5 * (lo + hi)


def _free_nodes(domain: DomainGeometry, N: int) -> slice:
    # interval: both ends pinned; ball: center free, r = R pinned
    return slice(1, N) if domain.kind == "interval" else slice(0, N)


def _flux(G: YoungFunction, slopes: np.ndarray) -> np.ndarray:
    """g(|s|) sign(s) with the zero-slope limit regularized."""
    a = np.abs(slopes)
    out = np.where(a > SLOPE_CUTOFF,
                   np.asarray(G.g(np.where(a > 0, a, 1.0)), dtype=float) * np.sign(slopes),
                   0.0)
    return out


def grad_energy(G: YoungFunction, u: Field) -> np.ndarray:
    """Nodal gradient of I; row i equals the weak form against hat function i."""
    slopes = np.diff(u.values) / u.h
    elem = u.domain.element_measures(u.grid)
    f = _flux(G, slopes) * elem / u.h
    grad = np.zeros_like(u.values)
    grad[:-1] -= f
    grad[1:] += f
    return grad


def grad_level(problem: EigenProblem, u: Field) -> np.ndarray:
    """Nodal gradient of J."""
    _, _, _, wq = _geometry(problem, u.n_elems)
    av = np.abs(u.values)
    hv = np.asarray(problem.H.g(np.where(av > 0, av, 1.0)), dtype=float)
    return wq * np.where(av > 0, hv * np.sign(u.values), 0.0)


# ---------------------------------------------------------------------------
# preconditioner and initial mode
# ---------------------------------------------------------------------------

def _p2_stiffness_banded(problem: EigenProblem, N: int):
    """Dirichlet quadratic-energy stiffness on the free nodes, banded SPD form."""
    x = problem.domain.grid(N)
    h = x[1] - x[0]
    elem = problem.domain.element_measures(x) / h ** 2
    free = _free_nodes(problem.domain, N)
    lo, hi = free.start, free.stop
    diag = np.zeros(N + 1)
    diag[:-1] += elem
    diag[1:] += elem
    off = -elem
    d = diag[lo:hi]
    e = off[lo:hi - 1] if hi - 1 > lo else np.array([])
    ab = np.zeros((2, d.size))
    ab[0, 1:] = e
    ab[1, :] = d
    return ab, d, e


def _principal_mode(problem: EigenProblem, N: int) -> Field:
    """Positive principal mode of the discrete quadratic pencil (init guess)."""
    x = problem.domain.grid(N)
    _, d, e = _p2_stiffness_banded(problem, N)
    quad = simpson_weights(N + 1, x[1] - x[0]) * problem.domain.node_measure_factor(x)
    wvals = problem.w(x)
    m = quad * np.maximum(wvals, 1e-8 * max(problem.w.linf_norm, 1.0))
    free = _free_nodes(problem.domain, N)
    mf = np.maximum(m[free], 1e-10 * float(np.max(m)))  # center node lumps to 0 on balls
    scale = 1.0 / np.sqrt(mf)
    dd = d * scale ** 2
    ee = e * scale[:-1] * scale[1:] if e.size else e
    _, vecs = eigh_tridiagonal(dd, ee, select="i", select_range=(0, 0))
    mode = vecs[:, 0] * scale
    vals = np.zeros(N + 1)
    vals[free] = np.abs(mode)
    return Field(domain=problem.domain, values=vals)


# ---------------------------------------------------------------------------
# residuals
# ---------------------------------------------------------------------------

def _hat_norms(problem: EigenProblem, u: Field) -> np.ndarray:
    """Luxemburg norm of the gradient of each interior hat function (closed form)."""
    x = u.grid
    elem = u.domain.element_measures(x)
    N = u.n_elems
    free = _free_nodes(u.domain, N)
    idx = np.arange(N + 1)[free]
    mass = np.zeros(N + 1)
    mass[:-1] += elem
    mass[1:] += elem
    targets = 1.0 / mass[idx]
    vals = inverse_many(problem.G, targets)
    return 1.0 / (u.h * np.maximum(vals, 1e-300))


def _kkt_residual(problem: EigenProblem, u: Field, lam: float) -> float:
    gI = grad_energy(problem.G, u)
    gJ = grad_level(problem, u)
    free = _free_nodes(u.domain, u.n_elems)
    res = np.abs(gI[free] - lam * gJ[free]) / _hat_norms(problem, u)
    return float(np.max(res))


def weak_residual(problem: EigenProblem, result: EigenResult) -> float:
    """max_i |<I'(u), e_i> - lambda <J'(u), e_i>| / ||grad e_i||_G."""
    return _kkt_residual(problem, result.u, result.lam)


# ---------------------------------------------------------------------------
# solver
# ---------------------------------------------------------------------------

def solve_first(problem: EigenProblem, opts: Optional[SolveOptions] = None) -> EigenResult:
    """Minimize I over the discrete level set J = mu; returns the best restart.

    Descent direction: the quadratic-stiffness preconditioned gradient of the
    Rayleigh quotient (a descent direction for I on the level set), with
    Armijo backtracking on I after reprojection; nodal positivity is enforced
    by taking |u| before every projection, which never increases I.
    """
    opts = opts or SolveOptions()
    if opts.N < 16:
        raise ValueError("need N >= 16")
    best: Optional[EigenResult] = None
    base = _principal_mode(problem, opts.N)
    rng = np.random.default_rng(opts.seed)
    for restart in range(max(opts.restarts, 1)):
        vals = base.values.copy()
        if restart > 0:
            bump = 1.0 + 0.3 * rng.random(vals.shape)
            vals = vals * bump
            vals[np.abs(base.values) == 0.0] = 0.0
        start = Field(domain=problem.domain, values=vals)
        try:
            res = _solve_single(problem, start, opts, restart)
        except NonConvergenceError:
            if restart == max(opts.restarts, 1) - 1 and best is None:
                raise
            continue
        if best is None or res.lam < best.lam:
            best = res
    assert best is not None
    return best


def _solve_single(problem: EigenProblem, start: Field, opts: SolveOptions,
                  restart: int) -> EigenResult:
    N = opts.N
    x, h, elem, wq = _geometry(problem, N)
    ab, _, _ = _p2_stiffness_banded(problem, N)
    free = _free_nodes(problem.domain, N)
    H, G = problem.H, problem.G
    mu = problem.mu

    def project(values: np.ndarray) -> np.ndarray:
        v = np.abs(values)
        v[~_free_mask(problem.domain, N)] = 0.0
        s = _project_scale(H, wq, v, mu)
        return s * v

    u = project(start.values.copy())
    fld = lambda v: Field(domain=problem.domain, values=v)
    I_u = energy(G, fld(u))
    lam = I_u / mu
    history = [lam]
    step = 1.0
    kkt = np.inf
    stall = 0
    it = 0
    for it in range(1, opts.max_iters + 1):
        gI = grad_energy(G, fld(u))
        gJ = grad_level(problem, fld(u))
        r = gI[free] - lam * gJ[free]
        d = solveh_banded(ab, r)
        m = float(r @ d)
        kkt = _kkt_from_parts(problem, fld(u), gI, gJ, lam)
        if kkt < opts.kkt_tol:
            break
        if m <= 0.0:
            break
        accepted = False
        t = step
        for _ in range(60):
            trial = u.copy()
            trial[free] = u[free] - t * d
            trial = project(trial)
            I_t = energy(G, fld(trial))
            if I_t <= I_u - 1e-4 * t * m or I_t < I_u * (1.0 - 1e-15):
                u, I_u = trial, I_t
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break  # stagnated: KKT value below decides convergence
        step = min(t * 2.0, 1e6)
        lam_new = I_u / mu
        if abs(lam - lam_new) <= opts.lam_rel_tol * max(lam_new, 1e-300):
            stall += 1
        else:
            stall = 0
        lam = lam_new
        history.append(lam)
        if stall >= opts.lam_stall_iters:
            break
    else:
        raise NonConvergenceError(
            f"no convergence in {opts.max_iters} iterations (kkt={kkt:.3g})",
            history)

    result_field = fld(u)
    J_u = _level_value(H, wq, u)
    lam = energy(G, result_field) / J_u
    kkt = _kkt_residual(problem, result_field, lam)
    return EigenResult(lam=lam, u=result_field, mu=J_u, iterations=it,
                       kkt_residual=kkt, history=tuple(history), grid_N=N,
                       restart=restart)


def _free_mask(domain: DomainGeometry, N: int) -> np.ndarray:
    mask = np.zeros(N + 1, dtype=bool)
    mask[_free_nodes(domain, N)] = True
    return mask


def _kkt_from_parts(problem, u, gI, gJ, lam) -> float:
    free = _free_nodes(u.domain, u.n_elems)
    res = np.abs(gI[free] - lam * gJ[free]) / _hat_norms(problem, u)
    return float(np.max(res))


# ---------------------------------------------------------------------------
# sweeps and refinement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MuSweepResult:
    entries: tuple  # of (mu, EigenResult)
    mu_lambda_nondecreasing: bool
    corollary_ok: Optional[bool]
    tol: float


def mu_sweep(problem: EigenProblem, mu_list: Sequence[float],
             opts: Optional[SolveOptions] = None,
             tol: float = SOLVER_TOL) -> MuSweepResult:
    """Solve per level and check the level-scaling monotonicity properties."""
    mu_list = [float(m) for m in mu_list]
    if any(m2 <= m1 for m1, m2 in zip(mu_list, mu_list[1:])) or any(m <= 0 for m in mu_list):
        raise ValueError("mu_list must be strictly increasing and positive")
    results = []
    for m in mu_list:
        p = EigenProblem(G=problem.G, H=problem.H, w=problem.w,
                         domain=problem.domain, mu=m)
        results.append((m, solve_first(p, opts)))
    prods = [m * r.lam for m, r in results]
    nondec = all(p2 >= p1 * (1.0 - tol) for p1, p2 in zip(prods, prods[1:]))
    lam1 = next((r.lam for m, r in results if abs(m - 1.0) < 1e-12), None)
    corollary = None
    if lam1 is not None:
        corollary = all(r.lam >= lam1 / m - tol * lam1
                        for m, r in results if m >= 1.0)
    return MuSweepResult(entries=tuple(results), mu_lambda_nondecreasing=nondec,
                         corollary_ok=corollary, tol=tol)


@dataclass(frozen=True)
class RefineStudy:
    levels: tuple  # of (N, lambda)
    extrapolated: float
    observed_order: Optional[float]
    monotone: bool


def refine_study(problem: EigenProblem, N_list: Sequence[int],
                 opts: Optional[SolveOptions] = None,
                 tol: float = SOLVER_TOL) -> RefineStudy:
    """lambda per nested grid plus Richardson extrapolation from the last two."""
    N_list = [int(n) for n in N_list]
    for n1, n2 in zip(N_list, N_list[1:]):
        if n2 <= n1 or n2 % n1 != 0:
            raise ValueError("N_list must be increasing and nested")
    base = opts or SolveOptions()
    levels = []
    for n in N_list:
        o = SolveOptions(N=n, max_iters=base.max_iters, seed=base.seed,
                         restarts=base.restarts, lam_rel_tol=base.lam_rel_tol,
                         lam_stall_iters=base.lam_stall_iters, kkt_tol=base.kkt_tol)
        levels.append((n, solve_first(problem, o).lam))
    lams = [l for _, l in levels]
    monotone = all(l2 <= l1 * (1.0 + tol) for l1, l2 in zip(lams, lams[1:]))
    order = None
    if len(lams) >= 3 and abs(lams[-2] - lams[-1]) > 1e-14 * lams[-1]:
        num = abs(lams[-3] - lams[-2])
        den = abs(lams[-2] - lams[-1])
        if den > 0 and num > 0:
            order = float(np.log(num / den) / np.log(N_list[-1] / N_list[-2]))
    diff = lams[-1] - lams[-2] if len(lams) >= 2 else 0.0
    if abs(diff) <= 1e-13 * max(abs(lams[-1]), 1e-300):
        extrap = lams[-1]
    else:
        r = N_list[-1] / N_list[-2]
        p = order if order is not None else 2.0
        extrap = lams[-1] + diff / (r ** p - 1.0)
    return RefineStudy(levels=tuple(levels), extrapolated=float(extrap),
                       observed_order=order, monotone=monotone)
