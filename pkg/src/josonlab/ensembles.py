"""Ergodic, random-state (GOE) and generalized-Gibbs predictions.

Reference values for the number-resolved entanglement of stochastic-like
states: a perfectly uniform state gives p_{n_L} proportional to the block
density of states and S~ = log d_{n_L}; Gaussian random states add the
finite-size fluctuation correction -(1/2) min(d_L,d_R)/max(d_L,d_R) per
block; chaos-supported eigenstates restricted to the chaotic part of one
fixed-J shell follow the same structure with the shell's chaotic state
count D_ch in place of the full dimension.
"""

from dataclasses import dataclass

import numpy as np

from . import entanglement
from .model import hilbert_dimension, project_trivial


def _block_structure(N):
    n_L = np.arange(N + 1)
    d_L = n_L + 1
    d_R = N - n_L + 1
    D_blocks = d_L * d_R
    d_rank = np.minimum(d_L, d_R)
    return n_L, d_L, d_R, D_blocks, d_rank


@dataclass
class EnsemblePrediction:
    """Closed-form per-block weights and entropies for one ensemble kind."""

    kind: str
    N: int
    n_L: np.ndarray
    p: np.ndarray
    S_blocks: np.ndarray
    S_total: float
    S_max: float
    shell: int = -1
    D_ch: int = 0
    counts: np.ndarray = None


def ergodic_prediction(N):
    """Uniform-state prediction: p = D^(n_L)/D, S^(n_L) = -p log(p/d)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    n_L, d_L, d_R, D_blocks, d_rank = _block_structure(N)
    D = hilbert_dimension(N)
    p = D_blocks / D
    S_blocks = -p * np.log(p / d_rank)
    S_total = float(S_blocks.sum())
    S_max = float(np.log(d_rank.sum()))
    # Gibbs: S_erg <= log(d_L), equality only when p is proportional to the
    # block ranks (which happens at N = 1)
    if S_total > S_max + 1e-12:
        raise AssertionError("uniform-state entropy exceeded log(d_L)")
    return EnsemblePrediction(
        kind="ergodic", N=N, n_L=n_L, p=p, S_blocks=S_blocks,
        S_total=S_total, S_max=S_max,
    )


def goe_prediction(N):
    """Random-state prediction with the finite-size fluctuation correction.

    S~_GOE = log d - (1/2) min(d_L,d_R)/max(d_L,d_R) per block, which
    lowers each number-resolved entropy by p_erg d^2 / (2 D^(n_L)).
    """
    erg = ergodic_prediction(N)
    _, d_L, d_R, D_blocks, d_rank = _block_structure(N)
    correction = erg.p * d_rank ** 2 / (2.0 * D_blocks)
    S_blocks = erg.S_blocks - correction
    return EnsemblePrediction(
        kind="goe", N=N, n_L=erg.n_L, p=erg.p, S_blocks=S_blocks,
        S_total=float(S_blocks.sum()), S_max=erg.S_max,
    )


def goe_block_entropy_normalized(N):
    """S~_GOE per block: log d_{n_L} minus half the partition ratio."""
    _, d_L, d_R, _, d_rank = _block_structure(N)
    return np.log(d_rank) - 0.5 * d_rank / np.maximum(d_L, d_R)


def sample_canonical_random_state(basis, rng, symmetrize=True):
    """One canonical random state: Gaussian coefficients, optionally symmetrized.

    Coefficients are i.i.d. real normal scaled by 1/sqrt(D) (norm close to
    one), projected onto the fully symmetric parity sector when
    ``symmetrize`` is set, then renormalized.  A zero-norm draw (probability
    effectively zero) is resampled from the advanced generator stream.
    """
    D = basis.size
    while True:
        c = rng.standard_normal(D) / np.sqrt(D)
        if symmetrize:
            c = project_trivial(c, basis)
        norm = np.linalg.norm(c)
        if norm > 1e-12:
            return c / norm


def sample_ensemble(basis, n_samples, seed, symmetrize=True):
    """Stack of ``n_samples`` canonical random states from one master seed."""
    rng = np.random.default_rng(seed)
    return np.column_stack(
        [sample_canonical_random_state(basis, rng, symmetrize) for _ in range(n_samples)]
    )


@dataclass
class EnsembleStatistics:
    """Mean and unbiased standard deviation of p_{n_L} and S^(n_L) over samples."""

    N: int
    n_samples: int
    n_L: np.ndarray
    p_mean: np.ndarray
    p_std: np.ndarray
    S_mean: np.ndarray
    S_std: np.ndarray
    S_total_mean: float
    S_total_std: float


def ensemble_statistics(states, basis):
    """Per-block weight and entropy statistics over a stack of state columns."""
    states = np.atleast_2d(np.asarray(states))
    if states.shape[0] == basis.size:
        states = states.T  # rows = samples
    if states.shape[0] < 2:
        raise ValueError("need at least 2 samples for ensemble statistics")
    ps, Ss, totals = [], [], []
    for c in states:
        weights, S_blocks, S = entanglement.state_entropy(c, basis)
        ps.append(weights)
        Ss.append(S_blocks)
        totals.append(S)
    ps = np.array(ps)
    Ss = np.array(Ss)
    totals = np.array(totals)
    return EnsembleStatistics(
        N=basis.N,
        n_samples=states.shape[0],
        n_L=np.arange(basis.N + 1),
        p_mean=ps.mean(axis=0),
        p_std=ps.std(axis=0, ddof=1),
        S_mean=Ss.mean(axis=0),
        S_std=Ss.std(axis=0, ddof=1),
        S_total_mean=float(totals.mean()),
        S_total_std=float(totals.std(ddof=1)),
    )


@dataclass
class ChaoticRegion:
    """Chaotic subset of one fixed-J shell.

    ``exact_indices`` selects exact eigenstates (for measured statistics);
    ``counts`` are the per-n_L numbers of product states classed as
    chaotic, summing to ``D_ch``.
    """

    shell: int
    method: str
    param: float
    exact_indices: np.ndarray
    D_ch: int
    n_L: np.ndarray
    counts: np.ndarray


def chaotic_region(shell_J, observables, unperturbed, overlaps,
                   method="topk_shannon", param=100):
    """Select the chaotic portion of a fixed-J shell.

    ``topk_shannon``: the param highest Shannon-entropy exact states of the
    shell; the product-state counts take the param highest participation
    numbers (participation of product states over the exact basis).

    ``pn_threshold``: product states of the shell are chaotic when their
    participation number reaches param * (shell maximum); the same number
    of exact states is then picked by Shannon entropy.
    """
    exact_in_shell = np.flatnonzero(observables.shell == shell_J)
    if exact_in_shell.size == 0:
        raise ValueError(f"no exact eigenstates assigned to shell J={shell_J}")
    mu_in_shell = np.flatnonzero(unperturbed.J == shell_J)
    pn_mu = 1.0 / np.sum(overlaps[:, mu_in_shell] ** 2, axis=0)

    if method == "topk_shannon":
        K = int(param)
        if K < 1 or K > exact_in_shell.size or K > mu_in_shell.size:
            raise ValueError(
                f"K={K} outside the J={shell_J} shell size "
                f"({exact_in_shell.size} exact / {mu_in_shell.size} product states)"
            )
        chaotic_mu = mu_in_shell[np.argsort(pn_mu, kind="stable")[::-1][:K]]
    elif method == "pn_threshold":
        theta = float(param)
        chaotic_mu = mu_in_shell[pn_mu >= theta * pn_mu.max()]
        if chaotic_mu.size == 0:
            raise ValueError(f"empty chaotic set for J={shell_J} at theta={theta}")
        K = chaotic_mu.size
    else:
        raise ValueError(f"unknown chaotic-region method {method!r}")

    order = np.argsort(observables.shannon[exact_in_shell], kind="stable")[::-1]
    exact_sel = exact_in_shell[order[:K]]

    N = unperturbed.N
    n_L_all = np.arange(N + 1)
    n_L_of_mu = (N + unperturbed.n[chaotic_mu]) // 2
    counts = np.bincount(n_L_of_mu, minlength=N + 1)
    return ChaoticRegion(
        shell=int(shell_J), method=method, param=float(param),
        exact_indices=np.sort(exact_sel), D_ch=int(K),
        n_L=n_L_all, counts=counts,
    )


def gge_prediction(region, N=None):
    """Generalized-Gibbs prediction from the chaotic shell counts.

    p^GGE = counts/D_ch and S^(J,n_L) = p^GGE (log D_ch - 1/2); the block
    entropies sum to log D_ch - 1/2 exactly.
    """
    if region.D_ch < 1:
        raise ValueError("chaotic region is empty")
    if N is None:
        N = region.n_L.size - 1
    p = region.counts / region.D_ch
    S_shell = float(np.log(region.D_ch) - 0.5)
    S_blocks = p * S_shell
    return EnsemblePrediction(
        kind="gge", N=N, n_L=region.n_L.copy(), p=p, S_blocks=S_blocks,
        S_total=S_shell, S_max=float(np.log(entanglement.max_schmidt_rank(N))),
        shell=region.shell, D_ch=region.D_ch, counts=region.counts.copy(),
    )
