"""Seeded, counter-based sampling of random states and unitaries.

Every sample is a pure function of ``(seed, index)``: sample ``k`` never
requires generating samples ``0..k-1``, and whole index ranges are drawn in
one vectorised call.

Random bits come from SplitMix64 (Steele, Lea and Flood, 2014). The stream
for a sample starts from the state ``mix64(seed ^ mix64(tag * 2**32 + index))``
and its ``k``-th output is ``mix64(state + (k + 1) * 0x9E3779B97F4A7C15)``, so any
output of any stream can be computed directly. Uniforms use the top 53 bits;
complex Gaussians use the Box-Muller transform on pairs of uniforms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDrawError, InvalidDimensionError

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

TAG_DENSITY = 1
TAG_UNITARY = 2
MAX_REDRAWS = 100


class Measure(str, enum.Enum):
    HILBERT_SCHMIDT = "hilbert_schmidt"
    PURE = "pure"
    RANK_MIXTURE = "rank_mixture"


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    dim: int
    measure: Measure = Measure.RANK_MIXTURE

    def __post_init__(self):
        if not 0 <= int(self.seed) <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise InvalidDimensionError(f"dim must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "measure", Measure(self.measure))


def mix64(z):
    """SplitMix64 output function on a ``uint64`` array (wrapping arithmetic)."""
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def stream_states(seed: int, indices, tag: int) -> np.ndarray:
    """Starting SplitMix64 state of each per-index stream."""
    idx = np.asarray(indices, dtype=np.uint64)
    salt = np.uint64((int(tag) << 32) & _MASK64)
    with np.errstate(over="ignore"):
        keyed = mix64(idx + salt)
    return mix64(np.uint64(int(seed) & _MASK64) ^ keyed)


def uniforms(states, count: int) -> np.ndarray:
    """``count`` uniforms in ``[0, 1)`` per stream; shape ``(len(states), count)``."""
    states = np.asarray(states, dtype=np.uint64)
    k = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        raw = mix64(states[:, None] + k[None, :] * GOLDEN)
    return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def complex_gaussians(u1, u2):
    """Box-Muller: standard complex normals (``E|z|^2 = 1``) from two uniform arrays."""
    radius = np.sqrt(-np.log1p(-u1))
    return radius * np.exp(2j * np.pi * u2)


def _ginibre(seed, indices, dim, tag, redraw=0):
    """One extra uniform followed by a ``dim x dim`` Ginibre matrix per index."""
    n_unif = 1 + 2 * dim * dim
    states = stream_states(seed, indices, tag)
    if redraw:
        states = mix64(states ^ np.uint64(redraw))
    u = uniforms(states, n_unif)
    g = complex_gaussians(u[:, 1:1 + dim * dim], u[:, 1 + dim * dim:])
    return u[:, 0], g.reshape(-1, dim, dim)


def sample_densities(config: SamplerConfig, indices) -> np.ndarray:
    """Density matrices for a range of indices, shape ``(n, d, d)``.

    ``hilbert_schmidt`` returns ``G G* / Tr(G G*)`` for a square Ginibre ``G``;
    ``pure`` uses only its first column; ``rank_mixture`` draws a rank ``r``
    uniformly from ``1..d`` and keeps the first ``r`` columns.
    """
    indices = np.atleast_1d(np.asarray(indices, dtype=np.uint64))
    d = config.dim
    u_rank, g = _ginibre(config.seed, indices, d, TAG_DENSITY)
    if config.measure is Measure.PURE:
        ranks = np.ones(len(indices), dtype=int)
    elif config.measure is Measure.RANK_MIXTURE:
        ranks = 1 + np.minimum((u_rank * d).astype(int), d - 1)
    else:
        ranks = np.full(len(indices), d)
    keep = np.arange(d)[None, None, :] < ranks[:, None, None]
    g = np.where(keep, g, 0.0)
    rho = g @ np.swapaxes(g, -1, -2).conj()
    rho = 0.5 * (rho + np.swapaxes(rho, -1, -2).conj())
    tr = np.trace(rho, axis1=-2, axis2=-1).real
    return rho / tr[:, None, None]


def sample_density(config: SamplerConfig, index: int) -> np.ndarray:
    """The density matrix at position ``index`` of the configured stream."""
    return sample_densities(config, [index])[0]


def sample_unitaries(config: SamplerConfig, indices) -> np.ndarray:
    """Haar-random unitaries: QR of a Ginibre matrix with the phases of ``diag(R)`` divided out."""
    indices = np.atleast_1d(np.asarray(indices, dtype=np.uint64))
    d = config.dim
    out = np.empty((len(indices), d, d), dtype=np.complex128)
    todo = np.arange(len(indices))
    for redraw in range(MAX_REDRAWS):
        _, g = _ginibre(config.seed, indices[todo], d, TAG_UNITARY, redraw)
        q, r = np.linalg.qr(g)
        diag = np.diagonal(r, axis1=-2, axis2=-1)
        mag = np.abs(diag)
        good = np.all(mag >= 1e-300, axis=1)
        phases = np.where(mag > 0, diag / np.where(mag > 0, mag, 1.0), 1.0)
        out[todo[good]] = (q * phases[:, None, :])[good]
        todo = todo[~good]
        if not todo.size:
            return out
    raise DegenerateDrawError(f"{MAX_REDRAWS} consecutive degenerate Ginibre draws")


def sample_unitary(config: SamplerConfig, index: int) -> np.ndarray:
    """The unitary at position ``index`` of the configured stream."""
    return sample_unitaries(config, [index])[0]
