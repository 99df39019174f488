"""Independent reference computations used to freeze expected test values.

Nothing here touches the solver or quadrature paths of the package: the
interval reference is a shooting integration of the radial ODE system, the
ball reference a finite-volume discretization, and modular references go
through scipy's adaptive quadrature.
"""

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.linalg import eigh_tridiagonal


def plaplace_pi(p: float) -> float:
    """Closed form of the generalized pi constant for the 1-D power case."""
    return 2.0 * np.pi * (p - 1.0) ** (1.0 / p) / (p * np.sin(np.pi / p))


def plaplace_interval_shooting(p: float, length: float = 1.0,
                               rtol: float = 1e-11) -> float:
    """First eigenvalue of -(|u'|^{p-2}u')' = lam |u|^{p-2}u on (0, length).

    Shooting: integrate the flux system at lam = 1 from u(0)=0, u'(0)=1 and
    locate the first zero x1; scaling gives lam = (x1 / length)^p.
    """
    pp = p / (p - 1.0)

    def rhs(_x, y):
        u, phi = y
        du = np.sign(phi) * np.abs(phi) ** (pp - 1.0)
        dphi = -np.sign(u) * np.abs(u) ** (p - 1.0)
        return [du, dphi]

    def hit_zero(_x, y):
        return y[0]

    hit_zero.terminal = True
    hit_zero.direction = -1.0

    sol = solve_ivp(rhs, (0.0, 20.0), [0.0, 1.0], events=hit_zero,
                    rtol=rtol, atol=1e-13, dense_output=False, max_step=0.01)
    assert sol.t_events[0].size == 1, "no zero crossing found"
    x1 = float(sol.t_events[0][0])
    return (x1 / length) ** p


def radial_laplace_fv(radius: float, n: int, N: int = 4000) -> float:
    """First Dirichlet eigenvalue of the radial Laplacian on a ball.

    Finite-volume discretization of -(r^{n-1} u')' = lam r^{n-1} u: fluxes
    through the faces r_{i+1/2}, control-volume masses around the nodes, a
    natural zero-flux face at r = 0 and u(R) = 0.  Independent of the
    package's finite-element path.
    """
    h = radius / N
    faces = (np.arange(N) + 0.5) * h              # r_{i+1/2}, i = 0..N-1
    cond = faces ** (n - 1) / h                   # face conductances
    lo_edge = np.maximum((np.arange(N) - 0.5) * h, 0.0)
    hi_edge = (np.arange(N) + 0.5) * h
    mass = (hi_edge ** n - lo_edge ** n) / n      # control-volume masses
    diag = cond.copy()                            # right-face term for each node
    diag[1:] += cond[:-1]                         # left-face term (absent at r=0)
    off = -cond[:-1]
    d = diag / mass
    e = off / np.sqrt(mass[:-1] * mass[1:])
    vals = eigh_tridiagonal(d, e, select="i", select_range=(0, 0),
                            eigvals_only=True)
    return float(vals[0])


def quad_modular(fn, a: float = 0.0, b: float = 1.0) -> float:
    """Adaptive-quadrature reference for 1-D modular integrals."""
    val, _err = quad(fn, a, b, limit=200, epsabs=1e-12, epsrel=1e-12)
    return val
