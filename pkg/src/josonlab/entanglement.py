"""Reduced one-dimer density matrices and number-resolved entanglement.

Particle-number conservation makes the reduced density matrix of the left
dimer block diagonal in n_L.  Each block rho^(n_L) has dimension
d_L = n_L + 1, rank at most d_{n_L} = min(d_L, d_R), and trace p_{n_L}
(the probability of finding n_L particles on the left).  Writing the
nonzero eigenvalues as lambda_i = exp(-xi_i) gives the number-resolved
entanglement spectrum; xi_tilde = xi + log p_{n_L} is the spectrum of the
trace-normalized block.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

DEFAULT_CUTOFF = 1e-14


@dataclass
class ReducedDensityBlocks:
    """Fixed-n_L blocks of the left-dimer reduced density matrix."""

    N: int
    blocks: list
    weights: np.ndarray

    def rank_bound(self, n_L):
        return min(n_L + 1, self.N - n_L + 1)


def reduced_density_blocks(state, basis, norm_tol=1e-6):
    """Blockwise partial trace over the right dimer.

    Works for any one-dimer basis choice that preserves the n_L block
    layout (Fock or dimer-eigenstate coefficients alike).
    """
    state = np.asarray(state)
    norm = np.linalg.norm(state)
    if abs(norm - 1.0) > norm_tol:
        raise ValueError(f"state norm deviates from 1 by {abs(norm - 1):g}")
    blocks = []
    weights = np.empty(basis.N + 1)
    for n_L in range(basis.N + 1):
        d_L, d_R = basis.block_dims(n_L)
        C = state[basis.block_slices[n_L]].reshape(d_L, d_R)
        rho = C @ C.conj().T
        rho = 0.5 * (rho + rho.conj().T)
        blocks.append(rho)
        weights[n_L] = np.trace(rho).real
    return ReducedDensityBlocks(N=basis.N, blocks=blocks, weights=weights)


@dataclass
class EntanglementSpectrum:
    """Number-resolved entanglement eigenvalues, levels and entropies.

    ``block_of``, ``lam``, ``xi`` and ``xi_tilde`` are flat arrays over all
    retained eigenvalues (descending within each block); the per-block
    entropies satisfy S^(n_L) = p S~ - p log p and S = sum_n_L S^(n_L).
    """

    N: int
    block_of: np.ndarray
    lam: np.ndarray
    xi: np.ndarray
    xi_tilde: np.ndarray
    weights: np.ndarray
    S_blocks: np.ndarray
    S_tilde_blocks: np.ndarray
    S: float
    cutoff: float

    def block_eigenvalues(self, n_L):
        return self.lam[self.block_of == n_L]


def entanglement_spectrum(blocks, cutoff=DEFAULT_CUTOFF):
    """Diagonalize each reduced block and assemble the entanglement spectrum.

    Eigenvalues below ``cutoff`` are dropped before taking logs; an
    eigenvalue below -1e-10 signals a corrupted block and raises.
    """
    block_of, lams, xis, xits = [], [], [], []
    weights = np.asarray(blocks.weights, dtype=float)
    S_blocks = np.zeros(blocks.N + 1)
    S_tilde = np.zeros(blocks.N + 1)
    for n_L, rho in enumerate(blocks.blocks):
        vals = eigh(rho, eigvals_only=True)[::-1]
        if vals.size and vals[-1] < -1e-10:
            raise ValueError(
                f"block n_L={n_L} has negative eigenvalue {vals[-1]:g}; "
                "reduced density matrix is corrupted"
            )
        vals = vals[vals > cutoff]
        p = weights[n_L]
        if vals.size == 0 or p <= cutoff:
            continue
        S_b = float(-np.sum(vals * np.log(vals)))
        S_blocks[n_L] = S_b
        S_tilde[n_L] = S_b / p + np.log(p)
        block_of.extend([n_L] * vals.size)
        lams.extend(vals)
        xis.extend(-np.log(vals))
        xits.extend(-np.log(vals) + np.log(p))
    return EntanglementSpectrum(
        N=blocks.N,
        block_of=np.array(block_of, dtype=int),
        lam=np.array(lams),
        xi=np.array(xis),
        xi_tilde=np.array(xits),
        weights=weights,
        S_blocks=S_blocks,
        S_tilde_blocks=S_tilde,
        S=float(S_blocks.sum()),
        cutoff=cutoff,
    )


def max_schmidt_rank(N):
    """Maximal number of nonzero reduced-density eigenvalues, sum of block ranks."""
    return sum(min(n_L + 1, N - n_L + 1) for n_L in range(N + 1))


def total_entropy(spectrum):
    """Total entanglement entropy with its structural ceiling log(d_L).

    Returns (S, S_max) where S sums the number-resolved entropies and
    S_max = log of the maximal Schmidt rank.
    """
    S_max = float(np.log(max_schmidt_rank(spectrum.N)))
    return spectrum.S, S_max


def state_entropy(state, basis, cutoff=DEFAULT_CUTOFF):
    """Convenience path state -> (weights, S_blocks, S) without keeping spectra."""
    spec = entanglement_spectrum(reduced_density_blocks(state, basis), cutoff)
    return spec.weights, spec.S_blocks, spec.S
