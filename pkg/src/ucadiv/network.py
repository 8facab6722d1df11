"""Multiport network algebra on swept complex matrices.

All spectral quantities live on a shared :class:`FrequencyGrid` of relative
frequencies f/fc.  A "sweep" is a complex ndarray of shape (F, N, N): one
N x N matrix per grid sample.  Scattering descriptions of 2N-port networks
are held in N x N block form by :class:`MultiportS`.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ModelMismatchError, SingularSampleError

# Condition estimate above which a per-sample solve is treated as singular;
# separates physical open/short limits from ordinary roundoff.
COND_LIMIT = 1e12


@dataclass(frozen=True)
class FrequencyGrid:
    """Shared frequency axis, relative to the carrier (f/fc).

    ``band`` marks the signal band (f_lo, f_hi); both endpoints must lie
    inside the sampled range.
    """

    samples: np.ndarray
    band: tuple = (None, None)

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size < 1:
            raise ValueError("frequency grid needs at least one sample")
        if np.any(samples <= 0):
            raise ValueError("relative frequencies must be positive")
        if np.any(np.diff(samples) <= 0):
            raise ValueError("frequency samples must be strictly increasing")
        lo, hi = self.band
        if lo is None or hi is None:
            object.__setattr__(self, "band", (samples[0], samples[-1]))
            return
        if not (samples[0] <= lo <= hi <= samples[-1]):
            raise ValueError("band endpoints must lie within the sampled range")

    @property
    def size(self):
        return self.samples.size

    def band_mask(self):
        lo, hi = self.band
        return (self.samples >= lo) & (self.samples <= hi)


def default_grid(span=0.15, points=601, band=(None, None)):
    """Uniform grid 1-span .. 1+span; the default fit axis for fixtures."""
    return FrequencyGrid(np.linspace(1.0 - span, 1.0 + span, points), band=band)


def as_sweep(values, n_samples=None):
    """Coerce scalars / per-sample scalars / matrices to an (F, N, N) sweep."""
    arr = np.asarray(values, dtype=complex)
    if arr.ndim == 0:
        if n_samples is None:
            raise ValueError("scalar sweep needs an explicit sample count")
        return arr * np.ones((n_samples, 1, 1), dtype=complex)
    if arr.ndim == 1:
        return arr[:, None, None]
    if arr.ndim == 2:
        if n_samples is None:
            raise ValueError("single matrix needs an explicit sample count")
        return np.broadcast_to(arr, (n_samples,) + arr.shape).copy()
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError(f"sweep must have shape (F, N, N), got {arr.shape}")
    return arr


@dataclass
class MultiportS:
    """2N-port scattering description in N x N block form per frequency sample."""

    s11: np.ndarray
    s12: np.ndarray
    s21: np.ndarray
    s22: np.ndarray
    grid: FrequencyGrid
    z_ref: float = 1.0

    def __post_init__(self):
        blocks = [self.s11, self.s12, self.s21, self.s22]
        shapes = {b.shape for b in blocks}
        if len(shapes) != 1:
            raise ValueError("all four blocks must share one shape")
        shape = blocks[0].shape
        if len(shape) != 3 or shape[1] != shape[2]:
            raise ValueError("blocks must have shape (F, N, N)")
        if shape[0] != self.grid.size:
            raise ValueError("block sample count does not match the grid")

    @property
    def n_ports(self):
        return self.s11.shape[1]

    def full(self):
        """Assemble the (F, 2N, 2N) scattering matrices."""
        top = np.concatenate([self.s11, self.s12], axis=2)
        bottom = np.concatenate([self.s21, self.s22], axis=2)
        return np.concatenate([top, bottom], axis=1)


def through_network(n, grid):
    """Ideal through-connection: S11 = S22 = 0, S12 = S21 = I."""
    eye = np.broadcast_to(np.eye(n, dtype=complex), (grid.size, n, n)).copy()
    zero = np.zeros_like(eye)
    return MultiportS(zero, eye.copy(), eye, zero.copy(), grid)


def _solve_per_sample(a, b, grid, what):
    """Solve a[k] x = b[k] per sample, flagging near-singular systems."""
    out = np.empty_like(b)
    for k in range(a.shape[0]):
        if np.linalg.cond(a[k]) > COND_LIMIT:
            raise SingularSampleError(
                f"singular {what}", k, float(grid.samples[k])
            )
        out[k] = np.linalg.solve(a[k], b[k])
    return out


def z_to_s(z, z_ref=1.0, grid=None):
    """Impedance sweep to scattering sweep: (Z + z_ref I)^-1 (Z - z_ref I).

    ``z_ref`` may be a scalar or a per-port vector of reference impedances.
    """
    z = as_sweep(z)
    n = z.shape[1]
    zr = np.asarray(z_ref, dtype=complex)
    ref = np.diag(zr * np.ones(n)) if zr.ndim <= 1 else zr
    if grid is None:
        grid = FrequencyGrid(np.linspace(1.0, 2.0, z.shape[0]))
    return _solve_per_sample(z + ref, z - ref, grid, "(Z + z_ref I)")


def s_to_z(s, z_ref=1.0, grid=None):
    """Scattering sweep back to impedances: z_ref (I + S)(I - S)^-1."""
    s = as_sweep(s)
    n = s.shape[1]
    eye = np.eye(n, dtype=complex)
    if grid is None:
        grid = FrequencyGrid(np.linspace(1.0, 2.0, s.shape[0]))
    # (I+S)(I-S)^-1 computed through the transposed system.
    zt = _solve_per_sample(
        np.transpose(eye - s, (0, 2, 1)),
        np.transpose(eye + s, (0, 2, 1)),
        grid,
        "(I - S), total reflection",
    )
    return z_ref * np.transpose(zt, (0, 2, 1))


def cascade(a: MultiportS, m: MultiportS) -> MultiportS:
    """Cascade two 2N-ports: A's port-2 side feeds M's port-1 side.

    Implements the block composition

        S11c = S11a + S12a (I - S11m S22a)^-1 S11m S21a
        S12c = S12a (I - S11m S22a)^-1 S12m
        S21c = S21m (I - S22a S11m)^-1 S21a
        S22c = S22m + S21m (I - S22a S11m)^-1 S22a S12m

    so the composite relates the outer wave vectors of the chain.
    """
    if a.n_ports != m.n_ports:
        raise ValueError("cascade requires equal inner port counts")
    if a.grid.size != m.grid.size or not np.array_equal(
        a.grid.samples, m.grid.samples
    ):
        raise ValueError("cascade requires a shared frequency grid")
    eye = np.eye(a.n_ports, dtype=complex)
    # X = (I - S11m S22a)^-1 S11m ; Y = (I - S22a S11m)^-1 applied to S21a, S22a
    x = _solve_per_sample(
        eye - m.s11 @ a.s22, m.s11, a.grid, "resonant inner term (I - S11m S22a)"
    )
    y21 = _solve_per_sample(
        eye - a.s22 @ m.s11, a.s21, a.grid, "resonant inner term (I - S22a S11m)"
    )
    y22 = _solve_per_sample(
        eye - a.s22 @ m.s11, a.s22 @ m.s12, a.grid,
        "resonant inner term (I - S22a S11m)",
    )
    inner = _solve_per_sample(
        eye - m.s11 @ a.s22, m.s12, a.grid, "resonant inner term (I - S11m S22a)"
    )
    s11 = a.s11 + a.s12 @ x @ a.s21
    s12 = a.s12 @ inner
    s21 = m.s21 @ y21
    s22 = m.s22 + m.s21 @ y22
    return MultiportS(s11, s12, s21, s22, a.grid, a.z_ref)


def dft_beamformer(n):
    """Unitary spatial-DFT matrix Q[m, k] = alpha^(m k)/sqrt(N), alpha = e^(-2 pi j / N).

    Frequency independent; its columns decouple any circulant impedance
    matrix of matching dimension.
    """
    if n < 1:
        raise ValueError("beamformer dimension must be >= 1")
    idx = np.arange(n)
    alpha = np.exp(-2j * np.pi / n)
    return alpha ** np.outer(idx, idx) / np.sqrt(n)


def circulant_from_row(row):
    """Build the circulant matrix C[j, k] = row[(k - j) mod N] per sample."""
    row = np.atleast_2d(np.asarray(row, dtype=complex))
    n = row.shape[1]
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return row[:, (k - j) % n]


def complete_symmetric_row(first_row, n):
    """Expand the independent entries z11..z1M (M = N//2 + 1) to a full row.

    The symmetric-circulant structure fixes row[k] = row[N - k].
    """
    first_row = np.atleast_2d(np.asarray(first_row, dtype=complex))
    m = n // 2 + 1
    if first_row.shape[1] != m:
        raise ValueError(f"expected {m} independent row entries for N={n}")
    idx = np.minimum(np.arange(n), n - np.arange(n))
    return first_row[:, idx]


def diagonalize_circulant(row, n, tol=1e-8):
    """Eigenvalue traces of a symmetric circulant, ordered by DFT index.

    ``row`` holds the full first row per sample (shape (F, N)).  Returns
    shape (F, N); degenerate pairs (index m and N-m) are made bitwise equal,
    which is an algebraic identity for symmetric rows.
    """
    row = np.atleast_2d(np.asarray(row, dtype=complex))
    if row.shape[1] != n:
        raise ValueError(f"row length {row.shape[1]} does not match N={n}")
    scale = np.maximum(np.max(np.abs(row), axis=1, keepdims=True), 1.0)
    asym = np.abs(row[:, 1:] - row[:, :0:-1]) / scale
    if asym.size and np.max(asym) > tol:
        k = int(np.argmax(np.max(asym, axis=1)))
        raise ModelMismatchError(
            f"first row violates circulant symmetry (worst relative "
            f"deviation {np.max(asym):.3g} at sample {k})"
        )
    lam = np.fft.fft(row, axis=1)
    for m in range(1, (n - 1) // 2 + 1):
        lam[:, n - m] = lam[:, m]
    return lam


def check_lossless(s: MultiportS, tol=1e-10):
    """Verify S S^H = I per sample; returns (passed, worst Frobenius deviation)."""
    full = s.full()
    eye = np.eye(full.shape[1])
    dev = full @ np.conj(np.transpose(full, (0, 2, 1))) - eye
    worst = float(np.max(np.linalg.norm(dev, axis=(1, 2))))
    return worst <= tol, worst


def check_reciprocal(s: MultiportS, tol=1e-10):
    """Verify S = S^T per sample; returns (passed, worst deviation)."""
    full = s.full()
    worst = float(np.max(np.abs(full - np.transpose(full, (0, 2, 1)))))
    return worst <= tol, worst
