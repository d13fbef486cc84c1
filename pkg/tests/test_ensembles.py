import numpy as np
import pytest

import josonlab as jl
from josonlab.model import project_trivial


def test_ergodic_prediction_small():
    pred = jl.ergodic_prediction(1)
    assert np.allclose(pred.p, [0.5, 0.5])
    assert pred.S_total == pytest.approx(np.log(2), rel=1e-12)
    # N=1 is the Gibbs equality case: weights proportional to ranks
    assert pred.S_total == pytest.approx(pred.S_max, abs=1e-14)


def test_ergodic_prediction_values():
    pred = jl.ergodic_prediction(21)
    assert pred.p[10] == pytest.approx(11 * 12 / 2024, rel=1e-12)
    assert pred.p[10] == pytest.approx(0.06522, abs=5e-6)
    assert pred.p.sum() == pytest.approx(1.0, abs=1e-12)
    assert pred.S_blocks.sum() == pytest.approx(pred.S_total, abs=1e-12)


def test_entropy_ordering_over_sizes():
    for N in range(1, 41):
        erg = jl.ergodic_prediction(N)
        goe = jl.goe_prediction(N)
        assert goe.S_total < erg.S_total
        if N >= 2:
            assert erg.S_total < erg.S_max


def test_goe_corrections():
    N = 13
    goe_tilde = jl.ensembles.goe_block_entropy_normalized(N)
    d_L = np.arange(N + 1) + 1
    d_R = N - np.arange(N + 1) + 1
    expected = np.log(np.minimum(d_L, d_R)) - 0.5 * np.minimum(d_L, d_R) / np.maximum(d_L, d_R)
    assert np.allclose(goe_tilde, expected, atol=1e-14)
    # edge block: log 1 - 1/(2(N+1))
    assert goe_tilde[0] == pytest.approx(-0.5 / (N + 1), abs=1e-14)
    N_even = 12
    tilde = jl.ensembles.goe_block_entropy_normalized(N_even)
    assert tilde[6] == pytest.approx(np.log(7) - 0.5, abs=1e-14)


def test_sampling_determinism():
    basis = jl.enumerate_basis(6)
    a = jl.sample_ensemble(basis, 5, seed=42)
    b = jl.sample_ensemble(basis, 5, seed=42)
    assert np.array_equal(a, b)
    c = jl.sample_ensemble(basis, 5, seed=43)
    assert not np.allclose(a, c)


def test_norm_statistics_chi_square():
    """Pre-normalization norm^2 has mean 1 and variance 2/D (real Gaussian)."""
    basis = jl.enumerate_basis(8)
    D = basis.size
    rng = np.random.default_rng(3)
    M = 4000
    norms2 = np.array([np.sum((rng.standard_normal(D) / np.sqrt(D)) ** 2) for _ in range(M)])
    assert norms2.mean() == pytest.approx(1.0, abs=4 / np.sqrt(M))
    assert norms2.var(ddof=1) == pytest.approx(2 / D, rel=0.15)


def test_symmetrization_idempotent_and_unit_norm():
    basis = jl.enumerate_basis(9)
    rng = np.random.default_rng(11)
    state = jl.sample_canonical_random_state(basis, rng, symmetrize=True)
    assert np.linalg.norm(state) == pytest.approx(1.0, abs=1e-12)
    again = project_trivial(state, basis)
    assert np.max(np.abs(again - state)) <= 1e-12


def test_ensemble_mean_matches_ergodic_law():
    # odd N: at an even split the L<->R swap fixes the middle block and
    # symmetrization shifts its mean weight away from the ergodic value
    basis = jl.enumerate_basis(13)
    states = jl.sample_ensemble(basis, 400, seed=21, symmetrize=True)
    stats = jl.ensemble_statistics(states, basis)
    erg = jl.ergodic_prediction(13)
    se = stats.p_std / np.sqrt(stats.n_samples)
    assert np.all(np.abs(stats.p_mean - erg.p) <= 3 * se)


def test_monte_carlo_convergence():
    """Deviation from the ergodic p shrinks from 100 to 1000 samples."""
    basis = jl.enumerate_basis(11)
    erg = jl.ergodic_prediction(11)
    rms = []
    for M in (100, 1000):
        stats = jl.ensemble_statistics(
            jl.sample_ensemble(basis, M, seed=5, symmetrize=True), basis
        )
        rms.append(np.sqrt(np.mean((stats.p_mean - erg.p) ** 2)))
    assert rms[1] < rms[0]


def test_ensemble_statistics_basics():
    basis = jl.enumerate_basis(5)
    rng = np.random.default_rng(2)
    one = jl.sample_canonical_random_state(basis, rng)
    states = np.column_stack([one, one, one])
    stats = jl.ensemble_statistics(states, basis)
    assert np.allclose(stats.p_std, 0.0, atol=1e-15)
    assert np.allclose(stats.S_std, 0.0, atol=1e-15)
    with pytest.raises(ValueError):
        jl.ensemble_statistics(one[:, None], basis)


def test_chaotic_region_selection(pipeline21):
    obs = pipeline21["obs"]
    unp = pipeline21["unperturbed"]
    ov = pipeline21["overlaps"]
    region = jl.chaotic_region(11, obs, unp, ov, method="topk_shannon", param=100)
    assert region.D_ch == 100
    assert region.counts.sum() == 100
    assert region.exact_indices.size == 100
    # theta = 0 keeps the whole shell
    full = jl.chaotic_region(11, obs, unp, ov, method="pn_threshold", param=0.0)
    assert full.D_ch == jl.shell_dimension(21, 11) == 132
    assert full.counts.sum() == 132
    with pytest.raises(ValueError):
        jl.chaotic_region(11, obs, unp, ov, method="topk_shannon", param=1000)
    with pytest.raises(ValueError):
        jl.chaotic_region(11, obs, unp, ov, method="nope", param=1)


def test_gge_prediction_structure():
    region = jl.ChaoticRegion(
        shell=5, method="topk_shannon", param=100.0,
        exact_indices=np.arange(100), D_ch=100,
        n_L=np.arange(11), counts=np.full(11, 100 // 11 + 1)[:11],
    )
    region.counts = np.zeros(11, dtype=int)
    region.counts[3:8] = 20  # uniform over 5 blocks
    pred = jl.gge_prediction(region, N=10)
    assert pred.S_total == pytest.approx(np.log(100) - 0.5, rel=1e-12)
    assert pred.S_total == pytest.approx(4.105, abs=5e-4)
    assert np.allclose(pred.p[3:8], 0.2)
    assert pred.S_blocks.sum() == pytest.approx(pred.S_total, rel=1e-12)
    bad = jl.ChaoticRegion(shell=5, method="x", param=0, exact_indices=np.array([]),
                           D_ch=0, n_L=np.arange(11), counts=np.zeros(11))
    with pytest.raises(ValueError):
        jl.gge_prediction(bad)
