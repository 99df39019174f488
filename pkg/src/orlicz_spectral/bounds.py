"""Eigenvalue lower bounds: explicit formulas, hypothesis gates, verification.

Every bound is exposed at the level of its explicit constant composition
(products like c * kappa * kappa0) rather than behind an opaque constant,
because only that form is numerically evaluable.  When a hypothesis fails
the bound is reported inapplicable instead of extrapolated.

Bound semantics: except for the ordered-pair interval bound (valid for every
level mu > 0), the values are lower bounds for mu * lambda_{1,mu} valid for
mu >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from . import young
from .eigen import EigenProblem, SolveOptions, refine_study, solve_first
from .space import DomainGeometry
from .young import (
    BorderlineSobolevError,
    ConstantEstimate,
    OrderingWitness,
    SobolevClass,
    YoungFunction,
)

__all__ = [
    "ConstantLedger",
    "HypothesisReport",
    "BoundResult",
    "BoundCheck",
    "VerificationReport",
    "VerifyOptions",
    "check_hypotheses",
    "bound_volume",
    "bound_dual_weight",
    "bound_hardy",
    "bound_sup_morrey_l1",
    "bound_sup_morrey_linf",
    "bound_1d_general",
    "bound_1d_ordered",
    "verify_case",
    "default_ledger",
]

MU_GE_1 = "mu_lambda_for_mu_ge_1"
ALL_MU = "lambda_for_all_mu"

_BUILTIN_SUBMULTIPLICATIVE = {"power", "power_log", "piecewise_power"}


@dataclass(frozen=True)
class ConstantLedger:
    """Every non-explicit constant of the bound formulas, with provenance.

    C     submultiplicativity constant G(ab) <= C G(a) G(b) (worst of G, H)
    c     inverse-product constant G^-1(s) G^-1(t) <= c G^-1(st) (worst of G, H)
    kappa0  C ** p_plus(G)
    k_hat  ordering witness H(t) <= G(k_hat t)
    kappa  Orlicz-Sobolev embedding constant (1-D: 2 is provable)
    c_H    Hardy constant ||u/d||_H <= c_H ||grad u||_G
    k      ordering witness for the Hardy-transformed H against G
    """

    C: float = 1.0
    c: float = 1.0
    kappa0: float = 1.0
    k_hat: Optional[float] = 1.0
    kappa: float = 2.0
    c_H: Optional[float] = None
    k: Optional[float] = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("C", "c", "kappa0"):
            v = getattr(self, name)
            if not v >= 1.0:
                raise ValueError(f"ledger entry {name} must be >= 1, got {v}")
        if self.k_hat is not None and not self.k_hat >= 1.0:
            raise ValueError(f"ledger entry k_hat must be >= 1, got {self.k_hat}")
        for name in ("kappa", "c_H", "k"):
            v = getattr(self, name)
            if v is not None and not v > 0.0:
                raise ValueError(f"ledger entry {name} must be > 0, got {v}")

    def with_overrides(self, **kwargs) -> "ConstantLedger":
        prov = dict(self.provenance)
        prov.update({k: "user_supplied" for k in kwargs})
        return replace(self, provenance=prov, **kwargs)

    def kappa0_consistent(self, G: YoungFunction, tol: float = 1e-9) -> bool:
        p_plus = young.index_profile(G)[1]
        return abs(self.kappa0 - self.C ** p_plus) <= tol * max(1.0, self.kappa0)


def default_ledger(G: YoungFunction, H: YoungFunction, n: int,
                   hardy_t0: float = 0.0) -> ConstantLedger:
    """Estimate/collect ledger constants for a (G, H, dimension) triple.

    Builtin families are submultiplicative with constant exactly 1, which is
    recorded as exact; anything else falls back to the grid estimators.  The
    embedding constant kappa is provable (= 2) on intervals and a documented
    conservative default (2^n) on balls; the Hardy constant is the vetted
    convex-domain value p' for a matching power pair and absent otherwise.
    """
    prov: dict[str, str] = {}

    def submult(F: YoungFunction) -> tuple[float, str]:
        if F.params.get("family") in _BUILTIN_SUBMULTIPLICATIVE:
            return 1.0, "exact"
        est = young.delta_prime_constant(F)
        return est.value, "estimated" + (" (edge-growing)" if est.edge_growing else "")

    def invprod(F: YoungFunction) -> tuple[float, str]:
        if F.params.get("family") in _BUILTIN_SUBMULTIPLICATIVE:
            return 1.0, "exact"
        est = young.inverse_product_constant(F)
        return est.value, "estimated" + (" (edge-growing)" if est.edge_growing else "")

    CG, pg = submult(G)
    CH, ph = submult(H)
    C = max(CG, CH)
    prov["C"] = pg if CG >= CH else ph
    cG, pg = invprod(G)
    cH_, ph = invprod(H)
    c = max(cG, cH_)
    prov["c"] = pg if cG >= cH_ else ph

    p_plus = young.index_profile(G)[1]
    kappa0 = C ** p_plus
    prov["kappa0"] = "exact" if prov["C"] == "exact" else "estimated"

    if G.label == H.label:
        k_hat, prov["k_hat"] = 1.0, "exact"
    else:
        wit = young.prec(H, G, t0=0.0)
        k_hat = max(wit.k, 1.0) if wit is not None else None
        prov["k_hat"] = "estimated" if wit is not None else "absent"

    if n == 1:
        kappa, prov["kappa"] = 2.0, "exact"
    else:
        kappa, prov["kappa"] = 2.0 ** n, "user_supplied"

    c_H = None
    if (G.params.get("family") == "power" and H.params.get("family") == "power"
            and abs(G.params["p"] - H.params["p"]) < 1e-12):
        p = G.params["p"]
        c_H = p / (p - 1.0)
        prov["c_H"] = "user_supplied"
    else:
        prov["c_H"] = "absent"

    k = None
    try:
        h_hat = young.hardy_transform(H, t0=hardy_t0)
        wit = young.prec(h_hat, G, t0=hardy_t0)
        if wit is not None:
            k = wit.k
            prov["k"] = "estimated"
        else:
            prov["k"] = "absent"
    except ValueError:
        prov["k"] = "absent"

    return ConstantLedger(C=C, c=c, kappa0=max(kappa0, 1.0), k_hat=k_hat,
                          kappa=kappa, c_H=c_H, k=k, provenance=prov)


# ---------------------------------------------------------------------------
# hypothesis report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HypothesisReport:
    delta_prime_G: ConstantEstimate
    delta_prime_H: ConstantEstimate
    sobolev_class: Optional[SobolevClass]   # None when undecidable
    sobolev_undecidable: Optional[str]
    prec_HG: Optional[OrderingWitness]
    prec_prec_G_Gstar: Optional[bool]       # None when G* is unavailable
    hardy_ok: Optional[OrderingWitness]
    weight_class: str
    grids: dict = field(default_factory=dict)

    @property
    def delta_prime_ok(self) -> bool:
        return not (self.delta_prime_G.edge_growing or self.delta_prime_H.edge_growing)


def check_hypotheses(G: YoungFunction, H: YoungFunction, n: int,
                     w=None, domain: Optional[DomainGeometry] = None,
                     hardy_t0: float = 0.0) -> HypothesisReport:
    """Fill every theorem hypothesis verdict; failures are reported, not raised."""
    dG = young.delta_prime_constant(G)
    dH = young.delta_prime_constant(H)
    sobolev: Optional[SobolevClass] = None
    undecidable = None
    try:
        sobolev = young.sobolev_classify(G, n)
    except BorderlineSobolevError as exc:
        undecidable = str(exc)
    prec_HG = young.prec(H, G, t0=0.0)
    ppGG: Optional[bool] = None
    if sobolev is not None and not sobolev.finite:
        try:
            gstar = young.critical_function(G, n)
            ppGG = young.prec_prec(G, gstar)
        except (ValueError, BorderlineSobolevError):
            ppGG = None
    hardy_wit = None
    try:
        h_hat = young.hardy_transform(H, t0=hardy_t0)
        hardy_wit = young.prec(h_hat, G, t0=hardy_t0)
    except ValueError:
        hardy_wit = None
    return HypothesisReport(
        delta_prime_G=dG,
        delta_prime_H=dH,
        sobolev_class=sobolev,
        sobolev_undecidable=undecidable,
        prec_HG=prec_HG,
        prec_prec_G_Gstar=ppGG,
        hardy_ok=hardy_wit,
        weight_class="Linf",
        grids={"domain_hint_G": G.domain_hint, "domain_hint_H": H.domain_hint,
               "points_per_decade": 100, "dimension": n},
    )


# ---------------------------------------------------------------------------
# bound results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundResult:
    theorem_id: str
    value: Optional[float]
    applicable: bool
    mu_semantics: str
    inputs: dict = field(default_factory=dict)
    reason: str = ""

    @staticmethod
    def inapplicable(theorem_id: str, mu_semantics: str, reason: str,
                     inputs: Optional[dict] = None) -> "BoundResult":
        return BoundResult(theorem_id=theorem_id, value=None, applicable=False,
                           mu_semantics=mu_semantics, inputs=inputs or {},
                           reason=reason)


def _finish(theorem_id: str, mu_semantics: str, arg: float,
            G: YoungFunction, inputs: dict) -> BoundResult:
    value = 1.0 / float(G.G(arg))
    if not (np.isfinite(value) and value > 0):
        return BoundResult.inapplicable(theorem_id, mu_semantics,
                                        f"formula left float range (arg={arg:g})",
                                        inputs)
    return BoundResult(theorem_id=theorem_id, value=value, applicable=True,
                       mu_semantics=mu_semantics, inputs=inputs)


def bound_volume(G: YoungFunction, H: YoungFunction, n: int,
                 w_inf_norm: float, measure: float, ledger: ConstantLedger,
                 hypotheses: Optional[HypothesisReport] = None) -> BoundResult:
    """Volume bound in the divergent-tail regime with a bounded weight.

    value = [G( c kappa kappa0 / G^{-1}(1 / (2 k_hat ||w||_inf tau_A)) )]^{-1}
    with A = G* o G^{-1} and tau_A = |Omega| A^{-1}(1/|Omega|); A^{-1} is the
    direct composition G o (G*)^{-1}, no root finding involved.
    """
    tid = "volume_linf"
    hyp = hypotheses or check_hypotheses(G, H, n)
    inputs = {"n": n, "w_inf_norm": w_inf_norm, "measure": measure,
              "composition": "c*kappa*kappa0 / Ginv(1/(2*k_hat*winf*tauA))"}
    if hyp.sobolev_undecidable:
        return BoundResult.inapplicable(tid, MU_GE_1, hyp.sobolev_undecidable, inputs)
    if hyp.sobolev_class is None or hyp.sobolev_class.finite:
        return BoundResult.inapplicable(tid, MU_GE_1, "needs the divergent-tail regime", inputs)
    if hyp.prec_HG is None:
        return BoundResult.inapplicable(tid, MU_GE_1, "H is not dominated by G", inputs)
    if hyp.prec_prec_G_Gstar is not True:
        return BoundResult.inapplicable(tid, MU_GE_1,
                                        "G not strictly dominated by its critical function", inputs)
    if ledger.k_hat is None:
        return BoundResult.inapplicable(tid, MU_GE_1, "ledger incomplete: k_hat", inputs)
    gstar = young.critical_function(G, n)
    # A^{-1}(y) = G((G*)^{-1}(y))
    tau_A = measure * float(G.G(young.inverse(gstar, 1.0 / measure)))
    denom = 2.0 * ledger.k_hat * w_inf_norm * tau_A
    arg = ledger.c * ledger.kappa * ledger.kappa0 / young.inverse(G, 1.0 / denom)
    inputs["tau_A"] = tau_A
    return _finish(tid, MU_GE_1, arg, G, inputs)


def bound_dual_weight(G: YoungFunction, H: YoungFunction, n: int,
                      w_dual_norm: float, B: YoungFunction,
                      ledger: ConstantLedger,
                      hypotheses: Optional[HypothesisReport] = None) -> BoundResult:
    """Divergent-tail bound for weights in the dual Orlicz class of B, B < A.

    value = [G( c kappa kappa0 / G^{-1}(1 / (2 k_hat ||w||_{B~})) )]^{-1}.
    """
    tid = "volume_dual"
    hyp = hypotheses or check_hypotheses(G, H, n)
    inputs = {"n": n, "w_dual_norm": w_dual_norm, "B": B.label,
              "composition": "c*kappa*kappa0 / Ginv(1/(2*k_hat*wdual))"}
    if hyp.sobolev_undecidable:
        return BoundResult.inapplicable(tid, MU_GE_1, hyp.sobolev_undecidable, inputs)
    if hyp.sobolev_class is None or hyp.sobolev_class.finite:
        return BoundResult.inapplicable(tid, MU_GE_1, "needs the divergent-tail regime", inputs)
    if hyp.prec_HG is None or ledger.k_hat is None:
        return BoundResult.inapplicable(tid, MU_GE_1, "H is not dominated by G", inputs)
    gstar = young.critical_function(G, n)

    def A_fn(t):
        t = np.asarray(t, dtype=float)
        return np.asarray(gstar.G(young.inverse_many(G, t)), dtype=float)

    def a_density(t):
        t = np.asarray(t, dtype=float)
        tg = young.inverse_many(G, t)
        safe = np.where(tg > 0, tg, 1.0)
        return np.where(
            tg > 0,
            np.asarray(gstar.g(safe), dtype=float) / np.asarray(G.g(safe), dtype=float),
            0.0)

    A = young.from_callables(f"compose({gstar.label},inverse({G.label}))",
                             A_fn, a_density,
                             domain_hint=(float(G.G(1e-3)), float(G.G(1e3))))
    if young.prec(B, A, t0=0.0) is None:
        return BoundResult.inapplicable(tid, MU_GE_1, "B is not dominated by A", inputs)
    denom = 2.0 * ledger.k_hat * w_dual_norm
    arg = ledger.c * ledger.kappa * ledger.kappa0 / young.inverse(G, 1.0 / denom)
    return _finish(tid, MU_GE_1, arg, G, inputs)


def bound_hardy(G: YoungFunction, H: YoungFunction, r_inradius: float,
                w_inf_norm: float, ledger: ConstantLedger,
                hypotheses: Optional[HypothesisReport] = None,
                n: int = 1) -> BoundResult:
    """Inradius bound from the Hardy inequality (proof-level constants).

    value = [G( c_H kappa0 r / H^{-1}(C^{-1} ||w||_inf^{-1}) )]^{-1}.
    """
    tid = "hardy_inradius"
    hyp = hypotheses or check_hypotheses(G, H, n)
    inputs = {"r_inradius": r_inradius, "w_inf_norm": w_inf_norm,
              "composition": "c_H*kappa0*r / Hinv(1/(C*winf))"}
    if hyp.hardy_ok is None:
        return BoundResult.inapplicable(
            tid, MU_GE_1, "Hardy-transformed H is not dominated by G", inputs)
    if ledger.c_H is None:
        return BoundResult.inapplicable(tid, MU_GE_1, "ledger incomplete: c_H", inputs)
    arg = (ledger.c_H * ledger.kappa0 * r_inradius
           / young.inverse(H, 1.0 / (ledger.C * w_inf_norm)))
    inputs["hardy_witness_k"] = hyp.hardy_ok.k
    return _finish(tid, MU_GE_1, arg, G, inputs)


def bound_sup_morrey_l1(G: YoungFunction, H: YoungFunction, n: int,
                        r_inradius: float, w_l1_norm: float,
                        ledger: ConstantLedger,
                        hypotheses: Optional[HypothesisReport] = None) -> BoundResult:
    """Finite-tail (Morrey regime) bound against the L1 weight norm.

    value = [G( c kappa kappa0 sigma(r) / H^{-1}(1/||w||_1) )]^{-1}.
    """
    tid = "morrey_l1"
    hyp = hypotheses or check_hypotheses(G, H, n)
    inputs = {"n": n, "r_inradius": r_inradius, "w_l1_norm": w_l1_norm,
              "composition": "c*kappa*kappa0*sigma(r) / Hinv(1/w_l1)"}
    if hyp.sobolev_undecidable:
        return BoundResult.inapplicable(tid, MU_GE_1, hyp.sobolev_undecidable, inputs)
    if hyp.sobolev_class is None or not hyp.sobolev_class.finite:
        return BoundResult.inapplicable(tid, MU_GE_1, "needs the finite-tail regime", inputs)
    sig = young.sigma(G, n, r_inradius)
    arg = (ledger.c * ledger.kappa * ledger.kappa0 * sig
           / young.inverse(H, 1.0 / w_l1_norm))
    inputs["sigma"] = sig
    return _finish(tid, MU_GE_1, arg, G, inputs)


def bound_sup_morrey_linf(G: YoungFunction, H: YoungFunction, n: int,
                          r_inradius: float, measure: float, w_inf_norm: float,
                          ledger: ConstantLedger,
                          hypotheses: Optional[HypothesisReport] = None) -> BoundResult:
    """Finite-tail bound against the sup weight norm and the indicator factor.

    value = [G( kappa kappa0 sigma(r) tau_H / H^{-1}(1/||w||_inf) )]^{-1}
    with tau_H = |Omega| (H~)^{-1}(1/|Omega|), H~ the conjugate of H.
    """
    tid = "morrey_linf"
    hyp = hypotheses or check_hypotheses(G, H, n)
    inputs = {"n": n, "r_inradius": r_inradius, "measure": measure,
              "w_inf_norm": w_inf_norm,
              "composition": "kappa*kappa0*sigma(r)*tau_H / Hinv(1/winf)"}
    if hyp.sobolev_undecidable:
        return BoundResult.inapplicable(tid, MU_GE_1, hyp.sobolev_undecidable, inputs)
    if hyp.sobolev_class is None or not hyp.sobolev_class.finite:
        return BoundResult.inapplicable(tid, MU_GE_1, "needs the finite-tail regime", inputs)
    sig = young.sigma(G, n, r_inradius)
    tau_H = measure * young.inverse(young.conjugate(H), 1.0 / measure)
    arg = (ledger.kappa * ledger.kappa0 * sig * tau_H
           / young.inverse(H, 1.0 / w_inf_norm))
    inputs["sigma"] = sig
    inputs["tau_H"] = tau_H
    return _finish(tid, MU_GE_1, arg, G, inputs)


def bound_1d_general(G: YoungFunction, H: YoungFunction, a: float, b: float,
                     w_l1_norm: float, ledger: ConstantLedger,
                     hypotheses: Optional[HypothesisReport] = None) -> BoundResult:
    """Interval bound for any submultiplicative pair.

    value = [G( 2 c kappa0 (b-a) G^{-1}(1/(b-a)) / H^{-1}(1/||w||_1) )]^{-1}.
    """
    tid = "interval_general"
    if not a < b:
        raise ValueError("need a < b")
    hyp = hypotheses or check_hypotheses(G, H, 1)
    inputs = {"a": a, "b": b, "w_l1_norm": w_l1_norm,
              "composition": "2*c*kappa0*(b-a)*Ginv(1/(b-a)) / Hinv(1/w_l1)"}
    if not hyp.delta_prime_ok:
        return BoundResult.inapplicable(
            tid, MU_GE_1, "submultiplicativity constant still growing at the grid edge",
            inputs)
    L = b - a
    arg = (2.0 * ledger.c * ledger.kappa0 * L * young.inverse(G, 1.0 / L)
           / young.inverse(H, 1.0 / w_l1_norm))
    return _finish(tid, MU_GE_1, arg, G, inputs)


def bound_1d_ordered(G: YoungFunction, H: YoungFunction, a: float, b: float,
                     w_l1_norm: float, ledger: ConstantLedger,
                     hypotheses: Optional[HypothesisReport] = None) -> BoundResult:
    """Interval bound for ordered pairs H(t) <= G(k t); valid for every mu > 0.

    value = (b - a) / (C k ||w||_1 G(k (b-a) / 2)).
    """
    tid = "interval_ordered"
    if not a < b:
        raise ValueError("need a < b")
    hyp = hypotheses or check_hypotheses(G, H, 1)
    k = ledger.k_hat if ledger.k_hat is not None else (
        hyp.prec_HG.k if hyp.prec_HG is not None else None)
    inputs = {"a": a, "b": b, "w_l1_norm": w_l1_norm,
              "composition": "(b-a) / (C*k*w_l1*G(k*(b-a)/2))"}
    if hyp.prec_HG is None or k is None:
        return BoundResult.inapplicable(tid, ALL_MU, "H is not dominated by G", inputs)
    L = b - a
    value = L / (ledger.C * k * w_l1_norm * float(G.G(k * L / 2.0)))
    inputs["k"] = k
    if not (np.isfinite(value) and value > 0):
        return BoundResult.inapplicable(tid, ALL_MU, "formula left float range", inputs)
    return BoundResult(theorem_id=tid, value=value, applicable=True,
                       mu_semantics=ALL_MU, inputs=inputs)


# ---------------------------------------------------------------------------
# end-to-end verification
# ---------------------------------------------------------------------------

@dataclass
class VerifyOptions:
    N: int = 512
    mu_list: tuple = (1.0,)
    restarts: int = 2
    seed: int = 0
    max_iters: int = 600
    refine: bool = False
    tol: float = 1e-3


@dataclass(frozen=True)
class BoundCheck:
    theorem_id: str
    mu: float
    bound_value: float
    reference: float       # mu * lambda or lambda, per semantics
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    hypotheses: HypothesisReport
    ledger: ConstantLedger
    bounds: tuple          # of BoundResult
    eigenvalues: tuple     # of (mu, EigenResult)
    checks: tuple          # of BoundCheck
    refine: Optional[object]
    all_passed: bool
    incomplete: bool = False
    failure_reason: str = ""


def collect_bounds(problem: EigenProblem, ledger: ConstantLedger,
                   hypotheses: Optional[HypothesisReport] = None,
                   theorems: Optional[Sequence[str]] = None) -> list[BoundResult]:
    """Evaluate every bound matching the domain geometry (optionally filtered)."""
    G, H, w, dom = problem.G, problem.H, problem.w, problem.domain
    n = dom.dim
    hyp = hypotheses or check_hypotheses(G, H, n)
    out: list[BoundResult] = []
    if dom.kind == "interval":
        out.append(bound_1d_general(G, H, dom.a, dom.b, w.l1_norm, ledger, hyp))
        out.append(bound_1d_ordered(G, H, dom.a, dom.b, w.l1_norm, ledger, hyp))
    out.append(bound_hardy(G, H, dom.inradius, w.linf_norm, ledger, hyp, n=n))
    out.append(bound_volume(G, H, n, w.linf_norm, dom.measure, ledger, hyp))
    out.append(bound_sup_morrey_l1(G, H, n, dom.inradius, w.l1_norm, ledger, hyp))
    out.append(bound_sup_morrey_linf(G, H, n, dom.inradius, dom.measure,
                                     w.linf_norm, ledger, hyp))
    if theorems is not None:
        keep = set(theorems)
        out = [b for b in out if b.theorem_id in keep]
    return out


def verify_case(problem: EigenProblem, ledger: Optional[ConstantLedger] = None,
                opts: Optional[VerifyOptions] = None,
                theorems: Optional[Sequence[str]] = None) -> VerificationReport:
    """Hypotheses + all applicable bounds + solves, asserting bound <= lambda.

    For bounds on mu * lambda_{1,mu} the comparison runs at the mu >= 1
    entries of ``opts.mu_list``; the all-mu bound is compared at every entry.
    A solver failure marks the report incomplete rather than emitting false
    verdicts.
    """
    opts = opts or VerifyOptions()
    dom = problem.domain
    hyp = check_hypotheses(problem.G, problem.H, dom.dim)
    led = ledger or default_ledger(problem.G, problem.H, dom.dim)
    bounds = collect_bounds(problem, led, hyp, theorems)

    eigen = []
    refine = None
    try:
        for m in opts.mu_list:
            p = EigenProblem(G=problem.G, H=problem.H, w=problem.w,
                             domain=dom, mu=float(m))
            sopts = SolveOptions(N=opts.N, restarts=opts.restarts,
                                 seed=opts.seed, max_iters=opts.max_iters)
            eigen.append((float(m), solve_first(p, sopts)))
        if opts.refine:
            refine = refine_study(problem, [opts.N // 4, opts.N // 2, opts.N],
                                  SolveOptions(restarts=1, seed=opts.seed,
                                               max_iters=opts.max_iters))
    except Exception as exc:  # noqa: BLE001 - report, never fake a verdict
        return VerificationReport(hypotheses=hyp, ledger=led, bounds=tuple(bounds),
                                  eigenvalues=tuple(eigen), checks=(),
                                  refine=None, all_passed=False, incomplete=True,
                                  failure_reason=f"solver failure: {exc}")

    checks: list[BoundCheck] = []
    for b in bounds:
        if not b.applicable:
            continue
        for m, res in eigen:
            if b.mu_semantics == MU_GE_1:
                if m < 1.0:
                    continue
                reference = m * res.lam
            else:
                reference = res.lam
            checks.append(BoundCheck(
                theorem_id=b.theorem_id, mu=m, bound_value=b.value,
                reference=reference,
                passed=bool(b.value <= reference * (1.0 + opts.tol))))
    all_passed = all(c.passed for c in checks)
    return VerificationReport(hypotheses=hyp, ledger=led, bounds=tuple(bounds),
                              eigenvalues=tuple(eigen), checks=tuple(checks),
                              refine=refine, all_passed=all_passed)
