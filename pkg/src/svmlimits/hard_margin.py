"""Asymptotic predictions for the hard-margin linear SVM.

Three results are computed from ``ModelParams`` alone:

* the separability threshold ``delta*`` — hard-margin SVM separates the
  training data (asymptotically, almost surely) iff ``delta < delta*``;
* in the separable regime, the limits of the weight norm, of the cosine
  alignment with the class-mean direction, and of the bias;
* the limiting class-conditional and total classification error rates.

Everything reduces to a scalarized objective

    D(q0, rho, eta) = sqrt(delta * (pi1*J(c1) + pi0*J(c0))) - sqrt(1 - rho^2),
    c1 = (rho*mu - 1/q0)/sigma + eta,   c0 = (rho*mu - 1/q0)/sigma - eta,

with J = hinge_sq_moment.  ``D`` is strictly decreasing in ``q0`` and its
minimum over (rho, eta) has a unique zero ``q0*`` which is the limiting
weight norm.  The inner bias minimization is a monotone first-order
condition solved by bisection; the rho section is strictly convex and is
minimized by golden section.
"""

import math
from dataclasses import dataclass
from typing import Tuple

from .errors import NoConvergenceError
from .gaussians import hinge_moment, hinge_sq_moment, q_function
from .params import ModelParams
from .scalar_opt import Bracket, SolverConfig, bisect_root, golden_min

_FOC_CONFIG = SolverConfig(tol_x=1e-12, tol_f=1e-13, max_iter=200)
_RHO_CONFIG = SolverConfig(tol_x=1e-10, tol_f=1e-12, max_iter=200)
_Q0_CONFIG = SolverConfig(tol_x=1e-12, tol_f=1e-10, max_iter=200)

# rho = 1 exactly makes 1/(1 - rho^2) overflow in the threshold criterion
_RHO_MAX = 1.0 - 1e-9


@dataclass(frozen=True)
class HardMarginPrediction:
    """Limits of the fitted hard-margin SVM, plus the phase boundary.

    weight_norm:     limit of ||w_hat|| (inverse margin scale), q0*.
    alignment:       limit of cos(angle(w_hat, mean direction)), rho*.
    normalized_bias: limit of b_hat / (sigma * ||w_hat||), eta*.
    bias:            limit of b_hat itself (= normalized_bias * weight_norm * sigma).
    err0 / err1:     limiting class-conditional error rates; err_total mixes
                     them with the class fractions.
    delta_critical:  separability threshold delta*.
    separable:       True iff delta < delta_critical.  When False the limit
                     and error fields are NaN: the program is infeasible and
                     they carry no meaning.
    """

    weight_norm: float
    alignment: float
    normalized_bias: float
    bias: float
    err0: float
    err1: float
    err_total: float
    delta_critical: float
    separable: bool


def optimal_normalized_bias(rho: float, shift: float, params: ModelParams) -> float:
    """Normalized bias balancing the two classes' expected hinge activity.

    Returns the unique ``eta`` with

        pi1 * E(G - a - eta)_+ = pi0 * E(G - a + eta)_+,
        a = rho * mu / sigma - shift.

    With ``shift = 0`` this is the bias entering the separability criterion;
    with ``shift = 1/(q0*sigma)`` it is the minimizer over ``eta`` of the
    scalarized objective at fixed ``(q0, rho)``.  The left side is strictly
    decreasing and the right side strictly increasing in ``eta``, so plain
    bisection on the difference is globally convergent.
    """
    a = rho * params.mu / params.sigma - shift

    def foc(eta: float) -> float:
        return params.pi1 * hinge_moment(a + eta) - params.pi0 * hinge_moment(a - eta)

    lo, hi = -1.0, 1.0
    for _ in range(200):
        if foc(lo) > 0.0:
            break
        lo *= 2.0
    else:
        raise NoConvergenceError("bias bracket expansion failed on the left")
    for _ in range(200):
        if foc(hi) < 0.0:
            break
        hi *= 2.0
    else:
        raise NoConvergenceError("bias bracket expansion failed on the right")
    return bisect_root(foc, Bracket(lo, hi), _FOC_CONFIG)


def separability_threshold(params: ModelParams) -> float:
    """Critical sample-to-dimension ratio ``delta*`` for linear separability.

    ``delta*`` is the reciprocal of

        min_{0 <= rho < 1}  [pi1*J(a + eta*(rho)) + pi0*J(a - eta*(rho))] / (1 - rho^2)

    with ``a = rho*mu/sigma``, ``J = hinge_sq_moment`` and ``eta*(rho)`` the
    balancing bias at zero shift.  The numerator is an eta-minimized jointly
    convex function, so the ratio against the concave ``1 - rho^2`` is
    quasiconvex on [0, 1): golden section finds its minimum.  ``params.delta``
    is ignored.
    """
    ms = params.mu_over_sigma

    def criterion(rho: float) -> float:
        eta = optimal_normalized_bias(rho, 0.0, params)
        a = rho * ms
        num = params.pi1 * hinge_sq_moment(a + eta) + params.pi0 * hinge_sq_moment(a - eta)
        return num / (1.0 - rho * rho)

    _, gmin = golden_min(criterion, Bracket(0.0, _RHO_MAX), _RHO_CONFIG)
    return 1.0 / gmin


def hard_margin_objective(q0: float, rho: float, eta: float, params: ModelParams) -> float:
    """Scalarized hard-margin objective D(q0, rho, eta); see module docstring.

    Finite for ``q0 > 0`` and strictly decreasing in ``q0`` at fixed
    ``(rho, eta)``.
    """
    if not q0 > 0.0:
        raise ValueError(f"q0 must be > 0, got {q0!r}")
    base = (rho * params.mu - 1.0 / q0) / params.sigma
    c1 = base + eta
    c0 = base - eta
    inner = params.delta * (
        params.pi1 * hinge_sq_moment(c1) + params.pi0 * hinge_sq_moment(c0)
    )
    return math.sqrt(inner) - math.sqrt(max(0.0, 1.0 - rho * rho))


def _min_over_rho_eta(q0: float, params: ModelParams) -> Tuple[float, float, float]:
    """Minimize the objective over (rho, eta) at fixed q0.

    Returns ``(value, rho, eta)``.  The eta section is solved exactly by the
    balancing-bias condition; the resulting rho section is strictly convex
    on [0, 1].
    """
    shift = 1.0 / (q0 * params.sigma)

    def section(rho: float) -> float:
        eta = optimal_normalized_bias(rho, shift, params)
        return hard_margin_objective(q0, rho, eta, params)

    rho_star, value = golden_min(section, Bracket(0.0, 1.0), _RHO_CONFIG)
    eta_star = optimal_normalized_bias(rho_star, shift, params)
    return value, rho_star, eta_star


def hard_margin_gap(q0: float, params: ModelParams) -> float:
    """min over (rho, eta) of the scalarized objective at fixed ``q0``.

    Diverges to +inf as ``q0 -> 0+`` and, below the separability threshold,
    changes sign exactly once on (0, inf); its zero is the limiting weight
    norm.
    """
    return _min_over_rho_eta(q0, params)[0]


def _nan_prediction(delta_critical: float) -> HardMarginPrediction:
    nan = float("nan")
    return HardMarginPrediction(
        weight_norm=nan,
        alignment=nan,
        normalized_bias=nan,
        bias=nan,
        err0=nan,
        err1=nan,
        err_total=nan,
        delta_critical=delta_critical,
        separable=False,
    )


def predict_hard_margin(params: ModelParams) -> HardMarginPrediction:
    """Full hard-margin prediction for ``params``.

    At or above the separability threshold the returned prediction has
    ``separable=False`` and NaN limits (the conservative verdict is also
    taken at exact equality).  Otherwise the weight-norm equation is solved
    by geometric bracket expansion plus bisection and the remaining limits
    are read off the inner minimizers.
    """
    delta_critical = separability_threshold(params)
    if params.delta >= delta_critical:
        return _nan_prediction(delta_critical)

    def gap(q0: float) -> float:
        return hard_margin_gap(q0, params)

    lo, hi = 1e-3, 1.0
    while gap(lo) <= 0.0:
        lo *= 0.1
        if lo < 1e-12:
            raise NoConvergenceError("weight-norm bracket collapsed at zero")
    while gap(hi) >= 0.0:
        hi *= 4.0
        if hi > 1e9:
            raise NoConvergenceError(
                "weight-norm equation appears divergent; ratio too close to the threshold"
            )
    q0_star = bisect_root(gap, Bracket(lo, hi), _Q0_CONFIG)
    _, rho_star, eta_star = _min_over_rho_eta(q0_star, params)

    arg = rho_star * params.mu_over_sigma
    err0 = q_function(arg + eta_star)
    err1 = q_function(arg - eta_star)
    return HardMarginPrediction(
        weight_norm=q0_star,
        alignment=rho_star,
        normalized_bias=eta_star,
        bias=eta_star * q0_star * params.sigma,
        err0=err0,
        err1=err1,
        err_total=params.pi0 * err0 + params.pi1 * err1,
        delta_critical=delta_critical,
        separable=True,
    )
