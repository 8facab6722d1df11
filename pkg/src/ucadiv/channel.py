"""Spatially correlated quasi-static fading for circular arrays.

Open-circuit path gains follow the Kronecker model: each delay tap is
R_h^(1/2) w with w standard complex Gaussian, where the receive correlation
R_h comes from a discrete ring of equal-gain plane waves.  Sub-carrier
channel vectors are the DFT of the taps; the spatial DFT Q^H moves them to
the eigen-basis.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ModelError
from .modes import uca_pairwise_distance

# Eigenvalues of the plane-wave correlation matrix below this are treated
# as roundoff and clipped to zero when taking the matrix square root.
PSD_CLIP = -1e-10


def realization_rng(seed, index):
    """Counter-based stream for one channel realization.

    Keyed purely by (seed, index), so any partitioning of realizations over
    workers reproduces the serial draw bit-for-bit.
    """
    key = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(key))


@dataclass
class CorrelationModel:
    """Plane-wave spatial correlation of an N-element ring at spacing d."""

    n: int
    d: float
    k_prime: int
    r_h: np.ndarray
    sqrt_r_h: np.ndarray


def spatial_correlation(n, d, k_prime=32) -> CorrelationModel:
    """Correlation matrix from K' equal-power plane waves on a full circle.

    [R_h]_{nm} = sum_k |g|^2 exp(j 2 pi d_nm cos(phi_k)) with azimuths
    phi_k = 2 pi k / K' and isotropic element gains normalized so the
    diagonal is 1.  Distances d_nm are the ring chord lengths.
    """
    if n < 1:
        raise ValueError("need at least one antenna")
    if d < 0:
        raise ValueError("spacing must be nonnegative")
    if k_prime < 2 * n:
        raise ValueError(f"plane-wave count {k_prime} undersamples N={n}")
    phi = 2.0 * np.pi * np.arange(k_prime) / k_prime
    gain_sq = 1.0 / k_prime
    r_h = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            dist = uca_pairwise_distance(n, d, abs(i - j))
            r_h[i, j] = gain_sq * np.sum(
                np.exp(1j * 2.0 * np.pi * dist * np.cos(phi))
            )
    r_h = 0.5 * (r_h + r_h.conj().T)  # kill roundoff asymmetry

    vals, vecs = np.linalg.eigh(r_h)
    if np.min(vals) < PSD_CLIP:
        raise ModelError(
            f"correlation matrix is not PSD (min eigenvalue {np.min(vals):.3g})"
        )
    # roundoff-scale eigenvalues would turn into sqrt(eps) noise; zero them
    vals[vals < 1e-14 * max(vals.max(), 1.0)] = 0.0
    sqrt_r_h = (vecs * np.sqrt(vals)) @ vecs.conj().T
    return CorrelationModel(n=n, d=float(d), k_prime=int(k_prime),
                            r_h=r_h, sqrt_r_h=sqrt_r_h)


def equal_power_profile(l):
    """Normalized flat delay profile over L taps."""
    if l < 1:
        raise ValueError("need at least one tap")
    return np.full(l, 1.0 / l)


def draw_taps(model: CorrelationModel, l, profile, rng):
    """One quasi-static realization: L correlated tap vectors, shape (L, N).

    Tap l is sqrt(p_l) R_h^(1/2) w_l with w_l standard complex Gaussian.
    """
    profile = np.asarray(profile, dtype=float)
    if profile.shape != (l,):
        raise ValueError("profile length must equal the tap count")
    if abs(profile.sum() - 1.0) > 1e-9:
        raise ValueError("tap powers must sum to 1")
    w = (
        rng.standard_normal((l, model.n)) + 1j * rng.standard_normal((l, model.n))
    ) / np.sqrt(2.0)
    return np.sqrt(profile)[:, None] * (w @ model.sqrt_r_h.T)


def taps_to_subcarriers(taps, k):
    """Per-sub-carrier channel vectors h_k = sum_l taps[l] e^(-j 2 pi k l / K).

    Returns shape (K, N); requires the tap count (cyclic prefix length) not
    to exceed K.
    """
    taps = np.asarray(taps, dtype=complex)
    l = taps.shape[0]
    if l > k:
        raise ModelError(f"tap count {l} exceeds sub-carrier count {k}")
    return np.fft.fft(taps, n=k, axis=0)


def to_eigenbasis(h, q):
    """Effective path gains Q^H h per sub-carrier (rows of h)."""
    h = np.asarray(h, dtype=complex)
    return h @ q.conj()
