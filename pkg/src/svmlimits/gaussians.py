"""Closed-form truncated moments of the standard Gaussian measure.

Every expectation used by the prediction engines reduces to integrals of
low-degree polynomials against the standard Gaussian weight

    Dx = exp(-x^2 / 2) dx / sqrt(2*pi),

restricted to a half line or an interval.  This module provides those
primitives in closed form (via ``erfc``; no quadrature anywhere):

    q_function(a)           = int_a^inf Dx
    partial_moment(k, a)    = int_a^inf x^k Dx,               k in {0, 1, 2}
    hinge_moment(a)         = int_a^inf (x - a) Dx            = E (G - a)_+
    hinge_sq_moment(a)      = int_a^inf (x - a)^2 Dx          = E (G - a)_+^2
    interval_shifted_sq(a,b)= int_a^b  (t - a)^2 Dt

All functions are pure and re-entrant.  Arguments beyond ``|a| > 40`` are
short-circuited to their asymptotic limits; the neglected mass is below
the double-precision underflow threshold.
"""

import math

SQRT_2PI = math.sqrt(2.0 * math.pi)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

# beyond this the Gaussian tail underflows double precision
_TAIL_CUTOFF = 40.0


def gauss_pdf(x: float) -> float:
    """Standard Gaussian density exp(-x^2/2)/sqrt(2*pi)."""
    return math.exp(-0.5 * x * x) / SQRT_2PI


def q_function(x: float) -> float:
    """Gaussian upper-tail probability Q(x) = int_x^inf Dt.

    Implemented through the complementary error function, which keeps full
    relative accuracy deep into the tail.  Accepts ``+-inf``.
    """
    return 0.5 * math.erfc(x * _INV_SQRT2)


def partial_moment(k: int, a: float) -> float:
    """Truncated moment M_k(a) = int_a^inf x^k Dx for k in {0, 1, 2}.

    M_0(a) = Q(a),  M_1(a) = pdf(a),  M_2(a) = a*pdf(a) + Q(a).
    """
    if k not in (0, 1, 2):
        raise ValueError(f"k must be 0, 1 or 2, got {k!r}")
    if a > _TAIL_CUTOFF:
        return 0.0
    if a < -_TAIL_CUTOFF:
        # full-line moments of the standard Gaussian
        return (1.0, 0.0, 1.0)[k]
    if k == 0:
        return q_function(a)
    if k == 1:
        return gauss_pdf(a)
    return a * gauss_pdf(a) + q_function(a)


def hinge_moment(a: float) -> float:
    """E (G - a)_+ = int_a^inf (x - a) Dx = pdf(a) - a*Q(a).

    Strictly positive and strictly decreasing in ``a``.
    """
    if a > _TAIL_CUTOFF:
        return 0.0
    if a < -_TAIL_CUTOFF:
        return -a
    return gauss_pdf(a) - a * q_function(a)


def reversed_hinge_moment(a: float) -> float:
    """E (a - G)_+ = int_-inf^a (a - x) Dx = a*Q(-a) + pdf(a).

    Mirror image of ``hinge_moment`` (identity: E(a-G)_+ = a + E(G-a)_+);
    evaluating it directly keeps full relative accuracy in the left tail,
    where the identity's right side cancels catastrophically.
    """
    if a > _TAIL_CUTOFF:
        return a
    if a < -_TAIL_CUTOFF:
        return 0.0
    return a * q_function(-a) + gauss_pdf(a)


def hinge_sq_moment(a: float) -> float:
    """E (G - a)_+^2 = int_a^inf (x - a)^2 Dx = (1 + a^2)*Q(a) - a*pdf(a).

    Positive and strictly decreasing in ``a``; tends to ``1 + a^2`` as
    ``a -> -inf`` and to 0 as ``a -> +inf``.
    """
    if a > _TAIL_CUTOFF:
        return 0.0
    if a < -_TAIL_CUTOFF:
        return 1.0 + a * a
    return (1.0 + a * a) * q_function(a) - a * gauss_pdf(a)


def interval_shifted_sq(a: float, b: float) -> float:
    """int_a^b (t - a)^2 Dt for a <= b; ``b`` may be ``+inf``.

    Computed as J(a) - J(b) - (b-a)^2*Q(b) - 2*(b-a)*E(G-b)_+ with
    J = hinge_sq_moment, i.e. by splitting the upper tail at ``b``.
    """
    if not a <= b:
        raise ValueError(f"interval requires a <= b, got a={a!r}, b={b!r}")
    if math.isinf(b):
        return hinge_sq_moment(a)
    d = b - a
    value = (
        hinge_sq_moment(a)
        - hinge_sq_moment(b)
        - d * d * q_function(b)
        - 2.0 * d * hinge_moment(b)
    )
    # exact formula is nonnegative; clip rounding residue
    return value if value > 0.0 else 0.0
