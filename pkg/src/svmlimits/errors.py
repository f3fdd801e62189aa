"""Semantic exception hierarchy for svmlimits."""


class SvmLimitsError(Exception):
    """Base class for all svmlimits errors."""


class NoSignChangeError(SvmLimitsError):
    """Root bracket does not straddle a sign change."""


class MaxIterError(SvmLimitsError):
    """Iteration budget exhausted before reaching the requested tolerance."""


class NoConvergenceError(SvmLimitsError):
    """Independent solver restarts disagree, or a bracket search diverged.

    Signals an optimization failure in this library, not a property of the
    model regime.
    """


class NotSeparableError(SvmLimitsError):
    """Hard-margin program is infeasible for the given data or regime."""


class DegenerateSplitError(SvmLimitsError):
    """Requested sample counts would leave one class empty."""


class ZeroWeightError(SvmLimitsError):
    """Weight vector is (numerically) zero; direction-based metrics undefined."""


class AllInfeasibleError(SvmLimitsError):
    """Every Monte Carlo replicate was infeasible; no statistics to report."""
