"""Shared domain types for the layered-BPSK toolkit.

Conventions used throughout the package:

* Amplitudes are dimensionless signal units.  SNRs are always formed as
  power / noise-variance at the point of use and never stored redundantly.
* ``NoiseSpec.sigma2`` is the noise variance **per real dimension**; the
  total noise power of a complex observation is ``2 * sigma2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Bit(enum.IntEnum):
    """Antipodal symbol, restricted to +1 / -1 by construction."""

    PLUS = 1
    MINUS = -1

    def __repr__(self) -> str:  # +1 / -1 reads better than PLUS/MINUS in test output
        return f"Bit({int(self):+d})"


@dataclass(frozen=True)
class WeightPair:
    """Layering weights of one dimension; requires alpha > beta > 0."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite number, got {value!r}")
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.alpha <= self.beta:
            raise ValueError(
                f"alpha must exceed beta, got alpha={self.alpha}, beta={self.beta}"
            )

    @property
    def ratio(self) -> float:
        return self.alpha / self.beta

    def average_power(self) -> float:
        """Mean transmitted power over the four equiprobable amplitudes
        {+alpha, -alpha, +beta/2, -beta/2}."""
        return 0.5 * self.alpha**2 + 0.5 * (0.5 * self.beta) ** 2


def weights_from_ratio(ratio: float, avg_power: float) -> WeightPair:
    """Build the WeightPair with the given alpha/beta ratio and average power.

    Solves alpha/beta = ratio subject to alpha**2/2 + (beta/2)**2/2 = avg_power,
    so sweeps can hold received power fixed while varying the weight split.
    """
    if not math.isfinite(ratio) or ratio <= 1.0:
        raise ValueError(f"ratio must be a finite number > 1, got {ratio!r}")
    if not math.isfinite(avg_power) or avg_power <= 0.0:
        raise ValueError(f"avg_power must be a finite number > 0, got {avg_power!r}")
    beta = math.sqrt(avg_power / (0.5 * ratio**2 + 0.125))
    return WeightPair(alpha=ratio * beta, beta=beta)


@dataclass(frozen=True)
class NoiseSpec:
    """AWGN power; ``sigma2`` is the variance per real dimension."""

    sigma2: float

    def __post_init__(self):
        if not isinstance(self.sigma2, (int, float)) or not math.isfinite(self.sigma2):
            raise ValueError(f"sigma2 must be a finite number, got {self.sigma2!r}")
        if self.sigma2 <= 0:
            raise ValueError(f"sigma2 must be positive, got {self.sigma2}")


@dataclass(frozen=True)
class SymbolFrame:
    """One transmission instant: input bits, transmitted amplitude, received sample.

    ``x_prime`` / ``z_prime`` carry the imaginary-axis bits of a two-dimensional
    frame as their +-1 coefficients; they are None for one-dimensional frames.
    """

    x: Bit
    z: Bit
    tx_amplitude: complex
    rx_sample: complex
    x_prime: Bit | None = None
    z_prime: Bit | None = None


@dataclass(frozen=True)
class RatePoint:
    """One sweep sample: SNR, Eb/N0 and every rate quantity reported by the CLI.

    ``snr_linear`` is the received SNR with the total-noise normalization
    power / (2 * sigma2); ``rho_z`` / ``rho_x`` are the per-stream equivalent
    SNRs under the same normalization.  All rates are in bits/sec/Hz.
    """

    snr_linear: float
    ebn0_db: float
    r_bpsk: float
    r_z: float
    r_x: float
    r_1: float
    r_2: float
    qpsk_rate: float
    capacity: float
    exact_mi: float
    taylor_capacity: float
    taylor_r1: float
    rate_diff: float
    rho_z: float
    rho_x: float


@dataclass(frozen=True)
class SimReport:
    """Monte Carlo outcome; prime fields are filled by 2-D simulations only.

    ``ci_*`` are the 3-sigma binomial confidence radii of the matching BER
    estimates.  ``empirical_entropy`` is the plug-in estimate of the received
    signal entropy in bits with its standard error.
    """

    n_symbols: int
    seed: int
    mode: str
    errors_z: int
    errors_x: int
    ber_z: float
    ber_x: float
    ci_z: float
    ci_x: float
    empirical_entropy: float
    entropy_std_error: float
    errors_z_prime: int | None = None
    errors_x_prime: int | None = None
    ber_z_prime: float | None = None
    ber_x_prime: float | None = None
    ci_z_prime: float | None = None
    ci_x_prime: float | None = None

    def __post_init__(self):
        for name in ("ber_z", "ber_x", "ber_z_prime", "ber_x_prime"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} out of [0, 1]: {value}")
