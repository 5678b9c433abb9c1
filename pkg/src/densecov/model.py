"""Network configuration, pathloss models, and derived interference constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import specfun


class PathlossModel(Enum):
    """Distance-to-gain law g(d) applied to every link."""

    UNBOUNDED = "upm"      # d^-alpha, singular at d = 0
    BOUNDED_G1 = "g1"      # (1 + d)^-alpha
    BOUNDED_G2 = "g2"      # 1 / (1 + d^alpha)
    MIN_BOUNDED = "minb"   # min(1, d^-alpha); simulation-only, no analytic coverage

    @classmethod
    def from_tag(cls, tag: str) -> "PathlossModel":
        for member in cls:
            if member.value == tag:
                return member
        raise ValueError(f"unknown pathloss model tag {tag!r}")


@dataclass(frozen=True)
class NetworkConfig:
    """Downlink network parameters.

    lambda_bs  base-station density in BS/m^2
    alpha      pathloss exponent (> 2)
    tau        SIR threshold on linear scale
    p_bs       transmit power in mW; it cancels in every SIR ratio and is
               carried only so that invariance is testable rather than
               silently assumed
    """

    lambda_bs: float
    alpha: float
    tau: float
    p_bs: float = 100.0

    def __post_init__(self):
        if not self.lambda_bs > 0.0:
            raise ValueError(f"lambda_bs must be positive, got {self.lambda_bs}")
        if not self.alpha > 2.0:
            raise ValueError(f"alpha must exceed 2, got {self.alpha}")
        if not self.tau > 0.0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if not self.p_bs > 0.0:
            raise ValueError(f"p_bs must be positive, got {self.p_bs}")


def pathloss_gain(model: PathlossModel, alpha: float, d):
    """Channel gain g(d) for one of the supported laws; d in meters, scalar or array.

    The unbounded law rejects d = 0: its singularity there (gain above one,
    received power exceeding transmitted) is exactly the defect the bounded
    models remove.
    """
    arr = np.asarray(d, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("distance must be >= 0")
    scalar = np.isscalar(d) or getattr(d, "ndim", 0) == 0
    if model is PathlossModel.UNBOUNDED:
        if np.any(arr == 0.0):
            raise ValueError("unbounded pathloss is singular at d = 0")
        out = arr**-alpha
    elif model is PathlossModel.BOUNDED_G1:
        out = (1.0 + arr) ** -alpha
    elif model is PathlossModel.BOUNDED_G2:
        out = 1.0 / (1.0 + arr**alpha)
    elif model is PathlossModel.MIN_BOUNDED:
        out = np.ones_like(arr)
        far = arr > 1.0
        out[far] = arr[far] ** -alpha
    else:  # pragma: no cover
        raise ValueError(f"unhandled model {model}")
    return float(out) if scalar else out


@dataclass(frozen=True)
class DerivedConstants:
    """Interference constants for a given (alpha, tau).

    c1 = 2 tau H1(tau)/(alpha - 2) and c2 = 2 tau H2(tau)/(alpha - 1) with
    H1, H2 the two hypergeometric families; c_hat = c1 - c2 > 0 because
    H2 < H1 and alpha - 1 > alpha - 2.  kappa_upper = pi 2^-alpha c_hat and
    kappa_lower = pi (1 + 2^alpha c1) are the decay rates of the throughput
    envelope lam * exp(-kappa lam).
    """

    delta: float
    c1: float
    c2: float
    c_hat: float
    kappa_upper: float
    kappa_lower: float


def derived_constants(alpha: float, tau: float) -> DerivedConstants:
    if not alpha > 2.0:
        raise ValueError(f"alpha must exceed 2, got {alpha}")
    if not tau > 0.0:
        raise ValueError(f"tau must be positive, got {tau}")
    p = specfun.HypParams.from_alpha(alpha)
    c1 = 2.0 * tau * specfun.hyf1(tau, p) / (alpha - 2.0)
    c2 = 2.0 * tau * specfun.hyf2(tau, p) / (alpha - 1.0)
    c_hat = c1 - c2
    return DerivedConstants(
        delta=p.delta,
        c1=c1,
        c2=c2,
        c_hat=c_hat,
        kappa_upper=math.pi * 2.0**-alpha * c_hat,
        kappa_lower=math.pi * (1.0 + 2.0**alpha * c1),
    )


@dataclass(frozen=True)
class ServingDistanceDist:
    """Distance from the origin to the nearest point of a planar Poisson field.

    PDF f(x) = 2 pi lam x exp(-pi lam x^2) for x >= 0.
    """

    lambda_bs: float

    def __post_init__(self):
        if not self.lambda_bs > 0.0:
            raise ValueError(f"lambda_bs must be positive, got {self.lambda_bs}")

    def pdf(self, x):
        arr = np.asarray(x, dtype=float)
        out = np.where(arr >= 0.0, 2.0 * math.pi * self.lambda_bs * arr
                       * np.exp(-math.pi * self.lambda_bs * arr**2), 0.0)
        return float(out) if np.isscalar(x) or getattr(x, "ndim", 0) == 0 else out

    def cdf(self, x):
        arr = np.asarray(x, dtype=float)
        out = np.where(arr >= 0.0, -np.expm1(-math.pi * self.lambda_bs * arr**2), 0.0)
        return float(out) if np.isscalar(x) or getattr(x, "ndim", 0) == 0 else out
