import numpy as np
import pytest

import josonlab as jl


def random_state(basis, rng):
    c = rng.standard_normal(basis.size)
    return c / np.linalg.norm(c)


def test_product_state_single_block():
    N = 7
    basis = jl.enumerate_basis(N)
    state = np.zeros(basis.size)
    state[basis.position((N, 0, 0, 0))] = 1.0
    blocks = jl.reduced_density_blocks(state, basis)
    assert blocks.weights[N] == pytest.approx(1.0, abs=1e-14)
    assert np.sum(blocks.weights[:N]) == pytest.approx(0.0, abs=1e-14)
    spec = jl.entanglement_spectrum(blocks)
    assert spec.S == pytest.approx(0.0, abs=1e-12)
    S, S_max = jl.total_entropy(spec)
    assert S == pytest.approx(0.0, abs=1e-12)
    assert spec.lam.size == 1 and spec.lam[0] == pytest.approx(1.0)


def test_two_block_cat():
    N = 5
    basis = jl.enumerate_basis(N)
    state = np.zeros(basis.size)
    state[basis.position((N, 0, 0, 0))] = 1 / np.sqrt(2)
    state[basis.position((0, 0, N, 0))] = 1 / np.sqrt(2)
    spec = jl.entanglement_spectrum(jl.reduced_density_blocks(state, basis))
    assert spec.weights[0] == pytest.approx(0.5, abs=1e-14)
    assert spec.weights[N] == pytest.approx(0.5, abs=1e-14)
    assert spec.S == pytest.approx(np.log(2), abs=1e-12)
    # rank-1 blocks of weight 1/2: xi = log 2, normalized entropy 0
    assert np.allclose(spec.xi, np.log(2), atol=1e-12)
    assert np.allclose(spec.S_tilde_blocks[[0, N]], 0.0, atol=1e-12)


def test_uniform_state_weights():
    N = 9
    basis = jl.enumerate_basis(N)
    state = np.full(basis.size, 1 / np.sqrt(basis.size))
    blocks = jl.reduced_density_blocks(state, basis)
    for n_L in range(N + 1):
        d_L, d_R = basis.block_dims(n_L)
        assert blocks.weights[n_L] == pytest.approx(d_L * d_R / basis.size, abs=1e-12)


def test_identities_random_states():
    N = 8
    basis = jl.enumerate_basis(N)
    rng = np.random.default_rng(5)
    for _ in range(25):
        state = random_state(basis, rng)
        blocks = jl.reduced_density_blocks(state, basis)
        spec = jl.entanglement_spectrum(blocks)
        assert blocks.weights.sum() == pytest.approx(1.0, abs=1e-10)
        assert spec.lam.sum() == pytest.approx(1.0, abs=1e-10)
        # S^(n_L) = p S~ - p log p, and additivity
        for n_L in range(N + 1):
            p = spec.weights[n_L]
            if p > 1e-13:
                reconstructed = p * spec.S_tilde_blocks[n_L] - p * np.log(p)
                assert spec.S_blocks[n_L] == pytest.approx(reconstructed, abs=1e-10)
        assert spec.S == pytest.approx(spec.S_blocks.sum(), abs=1e-12)
        # purity bound
        assert np.sum(spec.lam ** 2) <= 1.0 + 1e-12


def test_left_right_spectral_equality():
    N = 8
    basis = jl.enumerate_basis(N)
    rng = np.random.default_rng(6)
    state = random_state(basis, rng)
    swapped = state[basis.swap_lr_perm]
    spec_L = jl.entanglement_spectrum(jl.reduced_density_blocks(state, basis))
    spec_R = jl.entanglement_spectrum(jl.reduced_density_blocks(swapped, basis))
    # rho_R at n_L = k equals rho_L of the swapped state at n_L = N - k
    for n_L in range(N + 1):
        a = np.sort(spec_L.block_eigenvalues(n_L))
        b = np.sort(spec_R.block_eigenvalues(N - n_L))
        assert a.size == b.size
        assert np.allclose(a, b, atol=1e-10)


def test_one_dimer_basis_covariance():
    """Blockwise orthogonal rotations of either dimer leave everything invariant."""
    N = 7
    basis = jl.enumerate_basis(N)
    rng = np.random.default_rng(7)
    state = random_state(basis, rng)
    rotated = np.empty_like(state)
    for n_L in range(N + 1):
        d_L, d_R = basis.block_dims(n_L)
        QL, _ = np.linalg.qr(rng.standard_normal((d_L, d_L)))
        QR, _ = np.linalg.qr(rng.standard_normal((d_R, d_R)))
        C = state[basis.block_slices[n_L]].reshape(d_L, d_R)
        rotated[basis.block_slices[n_L]] = (QL @ C @ QR.T).ravel()
    spec_a = jl.entanglement_spectrum(jl.reduced_density_blocks(state, basis))
    spec_b = jl.entanglement_spectrum(jl.reduced_density_blocks(rotated, basis))
    assert np.allclose(spec_a.weights, spec_b.weights, atol=1e-10)
    assert np.allclose(spec_a.S_blocks, spec_b.S_blocks, atol=1e-10)
    for n_L in range(N + 1):
        assert np.allclose(
            np.sort(spec_a.block_eigenvalues(n_L)),
            np.sort(spec_b.block_eigenvalues(n_L)),
            atol=1e-10,
        )


def test_block_eig_agrees_with_svd():
    N = 8
    basis = jl.enumerate_basis(N)
    rng = np.random.default_rng(8)
    state = random_state(basis, rng)
    spec = jl.entanglement_spectrum(jl.reduced_density_blocks(state, basis))
    for n_L in range(N + 1):
        d_L, d_R = basis.block_dims(n_L)
        C = state[basis.block_slices[n_L]].reshape(d_L, d_R)
        sv = np.linalg.svd(C, compute_uv=False) ** 2
        sv = np.sort(sv[sv > spec.cutoff])
        assert np.allclose(np.sort(spec.block_eigenvalues(n_L)), sv, atol=1e-10)


def test_rank_bound_and_max_rank():
    N = 21
    basis = jl.enumerate_basis(N)
    rng = np.random.default_rng(9)
    state = random_state(basis, rng)
    spec = jl.entanglement_spectrum(jl.reduced_density_blocks(state, basis))
    for n_L in range(N + 1):
        assert spec.block_eigenvalues(n_L).size <= min(n_L + 1, N - n_L + 1)
    assert jl.max_schmidt_rank(21) == 132
    _, S_max = jl.total_entropy(spec)
    assert S_max == pytest.approx(np.log(132), rel=1e-12)
    assert S_max == pytest.approx(4.883, abs=5e-4)


def test_error_paths():
    N = 4
    basis = jl.enumerate_basis(N)
    with pytest.raises(ValueError):
        jl.reduced_density_blocks(np.ones(basis.size), basis)
    state = np.zeros(basis.size)
    state[0] = 1.0
    blocks = jl.reduced_density_blocks(state, basis)
    blocks.blocks[2][0, 0] = -1e-6  # corrupt a block
    with pytest.raises(ValueError):
        jl.entanglement_spectrum(blocks)
