import json

import numpy as np
import pytest
import scipy.sparse as sp
from scipy.linalg import eigh

import josonlab as jl


def single_particle_matrix(w, Omega=1.0):
    """Independent 4x4 oracle: hopping graph of one particle over the modes."""
    h = np.zeros((4, 4))
    h[0, 1] = h[1, 0] = -Omega / 2  # L+ <-> L-
    h[2, 3] = h[3, 2] = -Omega / 2  # R+ <-> R-
    h[0, 2] = h[2, 0] = -w / 2      # L+ <-> R+
    h[1, 3] = h[3, 1] = -w / 2      # L- <-> R-
    return h


def test_dimension_formula():
    for N, D in [(1, 4), (21, 2024), (29, 4960)]:
        assert jl.enumerate_basis(N).size == D
        assert jl.hilbert_dimension(N) == D
    for N in range(1, 41):
        assert jl.enumerate_basis(N).size == (N + 1) * (N + 2) * (N + 3) // 6


def test_zero_particles_rejected():
    with pytest.raises(ValueError):
        jl.enumerate_basis(0)
    with pytest.raises(ValueError):
        jl.ModelParams(N=0, U=0.1, omega=0.0)


def test_block_layout():
    N = 9
    basis = jl.enumerate_basis(N)
    total = 0
    for n_L in range(N + 1):
        blk = basis.block_slices[n_L]
        occ = basis.occupations[blk]
        assert np.all(occ[:, 0] + occ[:, 1] == n_L)
        d_L, d_R = basis.block_dims(n_L)
        assert blk.stop - blk.start == d_L * d_R == (n_L + 1) * (N - n_L + 1)
        # row-major (l = n_{L-}, r = n_{R-}) layout inside the block
        l_idx, r_idx = np.divmod(np.arange(d_L * d_R), d_R)
        assert np.all(occ[:, 1] == l_idx)
        assert np.all(occ[:, 3] == r_idx)
        total += d_L * d_R
    assert total == basis.size
    assert np.all(basis.occupations.sum(axis=1) == N)


def test_params_dimensionless_roundtrip():
    p = jl.ModelParams.from_dimensionless(21, 0.5, 0.082, Omega=2.0)
    assert p.u == pytest.approx(0.5, abs=1e-15)
    assert p.w == pytest.approx(0.082, abs=1e-15)
    with pytest.raises(ValueError):
        jl.ModelParams(N=3, U=-0.1, omega=0.0)


def test_single_particle_spectrum():
    w = 0.3
    basis = jl.enumerate_basis(1)
    params = jl.ModelParams.from_dimensionless(1, 0.0, w)
    H = jl.build_hamiltonian(params, basis).toarray()
    oracle = eigh(single_particle_matrix(w), eigvals_only=True)
    expected = np.sort([-(1 + w) / 2, -(1 - w) / 2, (1 - w) / 2, (1 + w) / 2])
    assert np.allclose(oracle, expected, atol=1e-14)
    # interaction is inert for one particle
    params_u = jl.ModelParams(N=1, U=7.3, omega=w)
    H_u = jl.build_hamiltonian(params_u, basis).toarray()
    assert np.allclose(eigh(H_u, eigvals_only=True), expected, atol=1e-14)
    assert np.allclose(eigh(H, eigvals_only=True), expected, atol=1e-14)


def test_hamiltonian_symmetric_and_blocked():
    basis = jl.enumerate_basis(21)
    params = jl.ModelParams.from_dimensionless(21, 0.5, 0.082)
    H = jl.build_hamiltonian(params, basis)
    assert H.shape == (2024, 2024)
    assert abs(H - H.T).max() == 0.0
    # omega = 0: no element couples different n_L blocks
    H0 = jl.build_hamiltonian(params.with_omega(0.0), basis)
    coo = H0.tocoo()
    assert np.all(basis.n_left[coo.row] == basis.n_left[coo.col])


def test_hamiltonian_basis_mismatch():
    basis = jl.enumerate_basis(4)
    params = jl.ModelParams.from_dimensionless(5, 0.5, 0.1)
    with pytest.raises(ValueError):
        jl.build_hamiltonian(params, basis)


def test_dimer_hamiltonian():
    assert jl.build_dimer_hamiltonian(0, 1.0, 3.0).shape == (1, 1)
    assert jl.build_dimer_hamiltonian(0, 1.0, 3.0)[0, 0] == 0.0
    vals = eigh(jl.build_dimer_hamiltonian(1, 1.0, 11.0), eigvals_only=True)
    assert np.allclose(vals, [-0.5, 0.5], atol=1e-14)
    # pure hopping ladder: E_k = Omega (k - n/2)
    for n in (2, 7, 16):
        vals = eigh(jl.build_dimer_hamiltonian(n, 1.0, 0.0), eigvals_only=True)
        assert np.allclose(vals, np.arange(n + 1) - n / 2, atol=1e-12)
    with pytest.raises(ValueError):
        jl.build_dimer_hamiltonian(-1)


def test_effective_joson_params():
    w_J, U_J = jl.effective_joson_params(0.3, 0.0, 0.7)
    assert w_J == pytest.approx(0.3) and U_J == pytest.approx(0.7)
    w_J, _ = jl.effective_joson_params(0.082, 0.5, 0.5 / 21)
    assert w_J == pytest.approx(0.082 * 1.125 / np.sqrt(1.25), rel=1e-12)
    assert w_J == pytest.approx(0.08251, abs=5e-6)
    _, U_J = jl.effective_joson_params(0.1, 8.0, 1.0)
    assert U_J == pytest.approx(2.0 / 5.0, rel=1e-12)


def test_sector_dimensions_and_orthonormality():
    basis = jl.enumerate_basis(7)
    sectors = jl.symmetry_sectors(basis)
    assert sum(s.dim for s in sectors) == basis.size
    perm_lr, perm_pm = basis.swap_lr_perm, basis.swap_pm_perm
    for s in sectors:
        V = s.vectors.toarray()
        assert np.allclose(V.T @ V, np.eye(s.dim), atol=1e-13)
        assert np.allclose(V[perm_lr], s.p_lr * V, atol=1e-13)
        assert np.allclose(V[perm_pm], s.p_pm * V, atol=1e-13)


def test_sectors_single_particle():
    sectors = jl.symmetry_sectors(jl.enumerate_basis(1))
    assert [s.dim for s in sectors] == [1, 1, 1, 1]


def test_cross_sector_blocks_vanish(basis21, sectors21):
    params = jl.ModelParams.from_dimensionless(21, 0.5, 0.082)
    H = jl.build_hamiltonian(params, basis21)
    for a in range(4):
        for b in range(a + 1, 4):
            cross = (sectors21[a].vectors.T @ (H @ sectors21[b].vectors))
            assert abs(cross).max() <= 1e-12


def test_sector_spectra_reproduce_full_spectrum():
    basis = jl.enumerate_basis(8)
    params = jl.ModelParams.from_dimensionless(8, 0.7, 0.13)
    H = jl.build_hamiltonian(params, basis)
    sectors = jl.symmetry_sectors(basis)
    merged = np.sort(np.concatenate([eigh(s.project(H), eigvals_only=True) for s in sectors]))
    full = eigh(H.toarray(), eigvals_only=True)
    span = full[-1] - full[0]
    assert np.max(np.abs(merged - full)) <= 1e-10 * span


def test_json_dump_roundtrip(tmp_path):
    basis = jl.enumerate_basis(3)
    params = jl.ModelParams.from_dimensionless(3, 0.4, 0.05)
    H = jl.build_hamiltonian(params, basis)
    path = tmp_path / "model.json"
    jl.model.dump_basis_json(path, basis, H)
    data = json.loads(path.read_text())
    assert data["schema"] == "josonlab-model" and data["version"] == 1
    assert np.array_equal(np.array(data["occupations"]), basis.occupations)
    M = data["matrix"]
    H_back = sp.coo_matrix(
        (M["values"], (M["rows"], M["cols"])), shape=M["shape"]
    ).tocsr()
    assert abs(H - H_back).max() == 0.0
