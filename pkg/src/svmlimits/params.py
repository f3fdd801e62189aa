"""Population model parameters shared by the prediction engines and the
finite-size experiments.

The data model is a two-class isotropic Gaussian mixture: class ``k`` has
mean ``+mu_vec`` (label +1) or ``-mu_vec`` (label -1) with ``||mu_vec|| = mu``
and covariance ``sigma^2 * I``.  Samples and features grow together with
``n / p -> delta`` and class fractions ``pi0, pi1``.
"""

import math
from dataclasses import dataclass

_PI_SUM_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Population statistics driving every formula in this package.

    mu:    limiting Euclidean norm of the class-mean vector (>= 0).
    sigma: within-class noise standard deviation (> 0).
    delta: limiting sample-to-dimension ratio n/p (> 0).
    pi0:   fraction of label -1 samples, in (0, 1).
    pi1:   fraction of label +1 samples, in (0, 1); pi0 + pi1 = 1.
    """

    mu: float
    sigma: float
    delta: float
    pi0: float = 0.5
    pi1: float = 0.5

    def __post_init__(self):
        for name in ("mu", "sigma", "delta", "pi0", "pi1"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.mu < 0.0:
            raise ValueError(f"mu must be >= 0, got {self.mu!r}")
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be > 0, got {self.sigma!r}")
        if self.delta <= 0.0:
            raise ValueError(f"delta must be > 0, got {self.delta!r}")
        if not (0.0 < self.pi0 < 1.0 and 0.0 < self.pi1 < 1.0):
            raise ValueError(f"class fractions must lie in (0, 1), got {self}")
        if abs(self.pi0 + self.pi1 - 1.0) > _PI_SUM_TOL:
            raise ValueError(f"pi0 + pi1 must equal 1, got {self.pi0 + self.pi1!r}")

    @property
    def mu_over_sigma(self) -> float:
        return self.mu / self.sigma
