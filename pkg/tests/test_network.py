"""Multiport network algebra: conversions, cascade, DFT diagonalization."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ucadiv.errors import ModelMismatchError, SingularSampleError
from ucadiv.network import (
    FrequencyGrid,
    MultiportS,
    cascade,
    check_lossless,
    check_reciprocal,
    circulant_from_row,
    complete_symmetric_row,
    dft_beamformer,
    diagonalize_circulant,
    s_to_z,
    through_network,
    z_to_s,
)


def grid(n_samples=5):
    return FrequencyGrid(np.linspace(0.9, 1.1, n_samples))


def random_unitary(rng, n):
    q, _ = np.linalg.qr(rng.standard_normal((n, n))
                        + 1j * rng.standard_normal((n, n)))
    return q


def random_lossless(rng, n, g):
    """2N-port with per-sample unitary full matrix."""
    full = np.stack([random_unitary(rng, 2 * n) for _ in range(g.size)])
    return MultiportS(
        full[:, :n, :n], full[:, :n, n:], full[:, n:, :n], full[:, n:, n:], g
    )


class TestFrequencyGrid:
    def test_rejects_nonmonotone(self):
        with pytest.raises(ValueError):
            FrequencyGrid(np.array([1.0, 0.9, 1.1]))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            FrequencyGrid(np.array([-0.1, 0.5, 1.0]))

    def test_band_must_be_inside(self):
        with pytest.raises(ValueError):
            FrequencyGrid(np.array([0.9, 1.0, 1.1]), band=(0.5, 1.0))

    def test_band_defaults_to_extent(self):
        g = FrequencyGrid(np.array([0.9, 1.0, 1.1]))
        assert g.band == (0.9, 1.1)


class TestZSConversion:
    def test_matched_termination_is_zero(self):
        z = np.broadcast_to(np.eye(2, dtype=complex), (4, 2, 2))
        assert_allclose(z_to_s(z), 0.0, atol=1e-15)

    def test_three_ohm(self):
        z = 3.0 * np.broadcast_to(np.eye(2, dtype=complex), (4, 2, 2))
        want = np.broadcast_to(0.5 * np.eye(2), (4, 2, 2))
        assert_allclose(z_to_s(z), want, atol=1e-15)

    def test_scalar_resistance(self):
        # (z - 1) / (z + 1) for z = 118.76 ohm
        s = z_to_s(np.full((3, 1, 1), 118.76 + 0j))
        assert_allclose(s, 117.76 / 119.76, rtol=1e-15)

    def test_s_to_z_trivials(self):
        s = np.zeros((3, 2, 2), dtype=complex)
        want = np.broadcast_to(7.0 * np.eye(2), (3, 2, 2))
        assert_allclose(s_to_z(s, z_ref=7.0), want, atol=1e-14)
        s = 0.5 * np.broadcast_to(np.eye(2, dtype=complex), (3, 2, 2))
        want = np.broadcast_to(3.0 * np.eye(2), (3, 2, 2))
        assert_allclose(s_to_z(s), want, atol=1e-14)

    def test_round_trip_random_reciprocal(self):
        rng = np.random.default_rng(3)
        a = rng.standard_normal((6, 2, 2)) + 1j * rng.standard_normal((6, 2, 2))
        s = 0.4 * (a + np.transpose(a, (0, 2, 1))) / 2
        assert_allclose(z_to_s(s_to_z(s)), s, atol=1e-12)
        z = 50.0 * np.eye(2) + a + np.transpose(a, (0, 2, 1))
        assert_allclose(s_to_z(z_to_s(z)), z, rtol=1e-12)

    def test_singular_sample_reported(self):
        z = np.broadcast_to(np.eye(2, dtype=complex), (4, 2, 2)).copy()
        z[2] = -np.eye(2)  # Z + I singular at sample 2
        with pytest.raises(SingularSampleError) as err:
            z_to_s(z, grid=grid(4))
        assert err.value.sample_index == 2

    def test_total_reflection_error(self):
        s = np.broadcast_to(np.eye(2, dtype=complex), (3, 2, 2))
        with pytest.raises(SingularSampleError):
            s_to_z(s)


class TestCascade:
    def test_through_is_identity(self):
        rng = np.random.default_rng(7)
        g = grid()
        a = random_lossless(rng, 2, g)
        t = through_network(2, g)
        c = cascade(a, t)
        for blk in ("s11", "s12", "s21", "s22"):
            assert_allclose(getattr(c, blk), getattr(a, blk), atol=1e-13)

    def test_lossless_composition_stays_unitary(self):
        rng = np.random.default_rng(11)
        g = grid()
        for n in (1, 2, 3):
            c = cascade(random_lossless(rng, n, g), random_lossless(rng, n, g))
            ok, worst = check_lossless(c, tol=1e-10)
            assert ok, f"unitarity deviation {worst}"

    def test_scalar_cascade_against_impedance_oracle(self):
        # straight-line oracle: S -> Z -> ABCD chain -> Z -> S
        rng = np.random.default_rng(13)
        g = grid(4)

        def rand_two_port():
            s = 0.3 * (rng.standard_normal((g.size, 2, 2))
                       + 1j * rng.standard_normal((g.size, 2, 2)))
            return MultiportS(s[:, :1, :1], s[:, :1, 1:], s[:, 1:, :1],
                              s[:, 1:, 1:], g)

        def to_abcd(z):
            z11, z12 = z[0, 0], z[0, 1]
            z21, z22 = z[1, 0], z[1, 1]
            det = z11 * z22 - z12 * z21
            return np.array([[z11 / z21, det / z21], [1 / z21, z22 / z21]])

        def from_abcd(m):
            a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
            return np.array([[a / c, (a * d - b * c) / c], [1 / c, d / c]])

        na, nm = rand_two_port(), rand_two_port()
        got = cascade(na, nm)
        za = s_to_z(np.block([[na.s11, na.s12], [na.s21, na.s22]]))
        zm = s_to_z(np.block([[nm.s11, nm.s12], [nm.s21, nm.s22]]))
        for k in range(g.size):
            chained = from_abcd(to_abcd(za[k]) @ to_abcd(zm[k]))
            want = z_to_s(chained[None])[0]
            have = np.block([[got.s11[k], got.s12[k]], [got.s21[k], got.s22[k]]])
            assert_allclose(have, want, atol=1e-10)

    def test_associative(self):
        rng = np.random.default_rng(17)
        g = grid()
        a, b, c = (random_lossless(rng, 2, g) for _ in range(3))
        left = cascade(cascade(a, b), c)
        right = cascade(a, cascade(b, c))
        for blk in ("s11", "s12", "s21", "s22"):
            assert_allclose(getattr(left, blk), getattr(right, blk), atol=1e-10)

    def test_resonant_singularity_reported(self):
        g = grid(3)
        eye = np.broadcast_to(np.eye(1, dtype=complex), (3, 1, 1)).copy()
        zero = np.zeros_like(eye)
        # S22a = S11m = I makes (I - S11m S22a) singular everywhere
        a = MultiportS(zero.copy(), eye.copy(), eye.copy(), eye.copy(), g)
        m = MultiportS(eye.copy(), eye.copy(), eye.copy(), zero.copy(), g)
        with pytest.raises(SingularSampleError) as err:
            cascade(a, m)
        assert err.value.sample_index == 0


class TestBeamformer:
    def test_n2_matrix(self):
        assert_allclose(
            dft_beamformer(2),
            np.array([[1, 1], [1, -1]]) / np.sqrt(2),
            atol=1e-15,
        )

    def test_n4_matrix(self):
        want = 0.5 * np.array(
            [
                [1, 1, 1, 1],
                [1, -1j, -1, 1j],
                [1, -1, 1, -1],
                [1, 1j, -1, -1j],
            ]
        )
        assert_allclose(dft_beamformer(4), want, atol=1e-14)

    @pytest.mark.parametrize("n", range(1, 17))
    def test_unitary(self, n):
        q = dft_beamformer(n)
        assert np.linalg.norm(q.conj().T @ q - np.eye(n)) < 1e-13

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            dft_beamformer(0)


class TestCirculant:
    def test_n2_eigenvalues(self):
        rng = np.random.default_rng(23)
        row = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
        lam = diagonalize_circulant(row, 2)
        assert_allclose(lam[:, 0], row[:, 0] + row[:, 1], rtol=1e-14)
        assert_allclose(lam[:, 1], row[:, 0] - row[:, 1], rtol=1e-14)

    def test_n4_closed_forms(self):
        rng = np.random.default_rng(29)
        z11, z12, z13 = (
            rng.standard_normal(5) + 1j * rng.standard_normal(5)
            for _ in range(3)
        )
        row = np.stack([z11, z12, z13, z12], axis=1)
        lam = diagonalize_circulant(row, 4)
        assert_allclose(lam[:, 0], z11 + 2 * z12 + z13, rtol=1e-13)
        assert_allclose(lam[:, 1], z11 - z13, atol=1e-13)
        assert_allclose(lam[:, 2], z11 - 2 * z12 + z13, atol=1e-13)
        assert np.array_equal(lam[:, 3], lam[:, 1])  # bitwise degeneracy

    def test_uncoupled_row(self):
        row = np.zeros((4, 3), dtype=complex)
        row[:, 0] = 5.0 + 1j
        lam = diagonalize_circulant(row, 3)
        assert_allclose(lam, 5.0 + 1j)

    def test_reconstruction(self):
        rng = np.random.default_rng(31)
        for n in (2, 3, 4, 5):
            m = n // 2 + 1
            partial = rng.standard_normal((4, m)) + 1j * rng.standard_normal((4, m))
            row = complete_symmetric_row(partial, n)
            lam = diagonalize_circulant(row, n)
            q = dft_beamformer(n)
            rebuilt = np.einsum("ij,fj,jk->fik", q, lam, q.conj().T)
            want = circulant_from_row(row)
            err = np.abs(rebuilt - want) / np.maximum(np.abs(want), 1.0)
            assert err.max() < 1e-10

    def test_symmetry_violation_rejected(self):
        row = np.ones((3, 4), dtype=complex)
        row[:, 1] = 2.0
        row[:, 3] = 5.0  # breaks row[1] == row[3]
        with pytest.raises(ModelMismatchError):
            diagonalize_circulant(row, 4)


class TestLosslessCheck:
    def test_through_passes(self):
        ok, worst = check_lossless(through_network(3, grid()), tol=1e-14)
        assert ok and worst < 1e-14

    def test_absorber_fails(self):
        g = grid()
        zero = np.zeros((g.size, 2, 2), dtype=complex)
        s = MultiportS(zero, zero.copy(), zero.copy(), zero.copy(), g)
        ok, worst = check_lossless(s)
        assert not ok and worst > 1.0

    def test_reciprocity_of_through(self):
        ok, _ = check_reciprocal(through_network(2, grid()))
        assert ok
