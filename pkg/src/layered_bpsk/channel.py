"""Seeded AWGN generation for real and complex transmissions.

Samples come from numpy's PCG64 generator (ziggurat normal sampling), seeded
with the pair ``(seed, stream_id)``.  Identical pairs reproduce bit-identical
sequences across runs and machines with the same numpy, and distinct
``stream_id`` values give statistically independent substreams, which is how
parallel workers keep results independent of the worker count.

Noise variance is ``NoiseSpec.sigma2`` per real dimension; a complex sample
receives independent real and imaginary components of that variance each
(total complex noise power ``2 * sigma2``).  The real part of a complex draw
is always generated before the imaginary part.
"""

from __future__ import annotations

import math

import numpy as np

from .core import NoiseSpec

_MAX_SEED = 2**64


class NoiseStream:
    """Single-owner AWGN source; one substream per (seed, stream_id)."""

    def __init__(self, seed: int, stream_id: int, spec: NoiseSpec):
        if not isinstance(seed, int) or not 0 <= seed < _MAX_SEED:
            raise ValueError(f"seed must be an integer in [0, 2**64), got {seed!r}")
        if not isinstance(stream_id, int) or stream_id < 0:
            raise ValueError(f"stream_id must be a non-negative integer, got {stream_id!r}")
        self.seed = seed
        self.stream_id = stream_id
        self.spec = spec
        self.generator = np.random.default_rng((seed, stream_id))

    def __repr__(self) -> str:
        return f"NoiseStream(seed={self.seed}, stream_id={self.stream_id}, spec={self.spec})"


def awgn_real(tx, stream: NoiseStream):
    """Add N(0, sigma2) noise to a real scalar or array; advances the stream."""
    sigma = math.sqrt(stream.spec.sigma2)
    if np.isscalar(tx):
        return float(tx) + stream.generator.normal(0.0, sigma)
    tx = np.asarray(tx, dtype=float)
    return tx + stream.generator.normal(0.0, sigma, size=tx.shape)


def awgn_complex(tx, stream: NoiseStream):
    """Add independent per-axis N(0, sigma2) noise to a complex scalar or array."""
    sigma = math.sqrt(stream.spec.sigma2)
    if np.isscalar(tx):
        n_re = stream.generator.normal(0.0, sigma)
        n_im = stream.generator.normal(0.0, sigma)
        return complex(tx) + complex(n_re, n_im)
    tx = np.asarray(tx, dtype=complex)
    n_re = stream.generator.normal(0.0, sigma, size=tx.shape)
    n_im = stream.generator.normal(0.0, sigma, size=tx.shape)
    return tx + n_re + 1j * n_im
