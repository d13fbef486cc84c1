"""Exact and coupling-free spectra, and per-eigenstate chaos diagnostics.

The coupling-free (omega = 0) eigenstates are direct products of single
dimer eigenstates |n_L, j_L> |n_R, j_R|, labeled by the good quantum
numbers (N, J, n, j) with J = j_L + j_R the total excitation number,
n = n_L - n_R the particle imbalance and j = j_L - j_R the excitation
imbalance.  At weak coupling the exact eigenstates mix product states
within one fixed-J shell only, so J remains an adiabatic label.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh

from .errors import NumericsError
from .model import build_dimer_hamiltonian


def shell_dimension(N, J):
    """Number of product states in the fixed-J shell."""
    return (J + 1) * (N + 1 - J)


def shell_block_count(N, J, n_L):
    """Number of fixed-J shell states with a given n_L.

    Equals min(n_L, J, N-n_L, N-J) + 1, the count of valid (j_L, j_R)
    splittings with j_L <= n_L, j_R <= n_R and j_L + j_R = J.
    """
    return min(n_L, J, N - n_L, N - J) + 1


@dataclass
class EigenDecomposition:
    """Full spectrum with eigenvectors over the Fock basis, sorted ascending.

    ``sectors`` holds a per-state parity-sector tag (index into
    ``sector_parities``), or -1 when the decomposition was not
    symmetry-resolved.
    """

    energies: np.ndarray
    states: np.ndarray
    sectors: np.ndarray
    sector_parities: tuple = ()

    @property
    def size(self):
        return self.energies.size


def _max_abs(M):
    data = M.data if sp.issparse(M) else np.asarray(M)
    return np.max(np.abs(data)) if data.size else 0.0


def _check_symmetric(H):
    mag = _max_abs(H - H.T)
    if mag > 1e-12 * max(_max_abs(H), 1.0):
        raise ValueError(f"Hamiltonian is not symmetric: max |H - H^T| = {mag:g}")


def _eigh_checked(M):
    try:
        return eigh(M)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericsError(f"dense eigensolver failed on a {M.shape} block: {exc}")


def _reorthogonalize_degenerate(energies, states, tol=1e-12):
    """QR-clean eigenvectors inside exactly degenerate clusters."""
    n = energies.size
    i = 0
    while i < n:
        jmax = i + 1
        while jmax < n and energies[jmax] - energies[i] <= tol:
            jmax += 1
        if jmax - i > 1:
            q, _ = np.linalg.qr(states[:, i:jmax])
            states[:, i:jmax] = q
        i = jmax
    return states


def diagonalize(H, sectors=None, basis=None):
    """Diagonalize the model Hamiltonian.

    Three paths, chosen by the supplied structure:

    * ``sectors`` given: each parity sector is projected to a dense block
      and diagonalized independently, and the merged spectrum keeps the
      sector tag of every level.  This is the default pipeline at finite
      inter-dimer coupling; it guarantees symmetry-pure eigenvectors even
      for the near-degenerate cat-state doublets.
    * ``basis`` given and H block diagonal over n_L (zero inter-dimer
      coupling): each n_L block is diagonalized separately, so degenerate
      partners in different blocks cannot mix.
    * otherwise: one dense solve.
    """
    _check_symmetric(H)
    D = H.shape[0]

    if sectors is not None:
        energies = []
        vectors = []
        tags = []
        for tag, sector in enumerate(sectors):
            vals, vecs = _eigh_checked(sector.project(H))
            energies.append(vals)
            vectors.append(np.asarray(sector.embed(vecs)))
            tags.append(np.full(vals.size, tag))
        energies = np.concatenate(energies)
        states = np.concatenate(vectors, axis=1)
        tags = np.concatenate(tags)
        order = np.lexsort((tags, energies))
        return EigenDecomposition(
            energies=energies[order],
            states=states[:, order],
            sectors=tags[order],
            sector_parities=tuple((s.p_lr, s.p_pm) for s in sectors),
        )

    if basis is not None and _block_diagonal(H, basis):
        energies = np.empty(D)
        states = np.zeros((D, D))
        for n_L in range(basis.N + 1):
            blk = basis.block_slices[n_L]
            vals, vecs = _eigh_checked(H[blk, blk].toarray() if sp.issparse(H) else H[blk, blk])
            energies[blk] = vals
            states[blk, blk] = vecs
        order = np.argsort(energies, kind="stable")
        return EigenDecomposition(
            energies=energies[order], states=states[:, order],
            sectors=np.full(D, -1),
        )

    vals, vecs = _eigh_checked(H.toarray() if sp.issparse(H) else np.asarray(H))
    vecs = _reorthogonalize_degenerate(vals, vecs)
    return EigenDecomposition(energies=vals, states=vecs, sectors=np.full(D, -1))


def _block_diagonal(H, basis):
    coo = sp.coo_matrix(H)
    return not np.any(basis.n_left[coo.row] != basis.n_left[coo.col])


@dataclass
class UnperturbedBasis:
    """Product eigenbasis of the decoupled dimers, embedded in the Fock basis.

    Column mu of ``states`` is the product state with labels
    (N, J[mu], n[mu], j[mu]) and energy ``energies[mu]``; j_alpha is the
    energy-ascending index within its dimer (0 = dimer ground state).
    """

    N: int
    J: np.ndarray
    n: np.ndarray
    j: np.ndarray
    energies: np.ndarray
    states: sp.csc_matrix
    label_index: dict = field(repr=False, default_factory=dict)

    @property
    def size(self):
        return self.energies.size

    def position(self, J, n, j):
        return self.label_index[(J, n, j)]


def build_unperturbed_basis(params, basis):
    """Diagonalize both dimers at every particle split and form product states."""
    N = basis.N
    J_lab, n_lab, j_lab, energy = [], [], [], []
    rows, cols, vals = [], [], []
    col = 0
    for n_L in range(N + 1):
        n_R = N - n_L
        eL, vL = _eigh_checked(build_dimer_hamiltonian(n_L, params.Omega, params.U))
        eR, vR = _eigh_checked(build_dimer_hamiltonian(n_R, params.Omega, params.U))
        blk = basis.block_slices[n_L]
        base = blk.start
        d_L, d_R = n_L + 1, n_R + 1
        for jL in range(d_L):
            for jR in range(d_R):
                prod = np.outer(vL[:, jL], vR[:, jR]).ravel()
                rows.extend(base + np.arange(d_L * d_R))
                cols.extend([col] * (d_L * d_R))
                vals.extend(prod)
                J_lab.append(jL + jR)
                n_lab.append(n_L - n_R)
                j_lab.append(jL - jR)
                energy.append(eL[jL] + eR[jR])
                col += 1
    states = sp.csc_matrix((vals, (rows, cols)), shape=(basis.size, col))
    out = UnperturbedBasis(
        N=N,
        J=np.array(J_lab),
        n=np.array(n_lab),
        j=np.array(j_lab),
        energies=np.array(energy),
        states=states,
    )
    out.label_index = {
        (int(J), int(n), int(j)): mu
        for mu, (J, n, j) in enumerate(zip(out.J, out.n, out.j))
    }
    return out


def overlap_probabilities(exact, unperturbed):
    """Overlap probabilities p[nu, mu] = |<nu|mu>|^2.

    Rows index exact eigenstates, columns index product states.  Both bases
    are complete and orthonormal, so every row and column sums to one.
    """
    if exact.states.shape[0] != unperturbed.states.shape[0]:
        raise ValueError(
            f"basis mismatch: exact states live in dimension {exact.states.shape[0]}, "
            f"product states in {unperturbed.states.shape[0]}"
        )
    overlaps = (unperturbed.states.T @ exact.states).T
    p = np.asarray(overlaps) ** 2
    rows = p.sum(axis=1)
    cols = p.sum(axis=0)
    worst = max(np.max(np.abs(rows - 1)), np.max(np.abs(cols - 1)))
    if worst > 1e-8:
        raise NumericsError(f"overlap matrix not doubly stochastic: worst sum error {worst:g}")
    return p


def participation_number(p, norm_tol=1e-6):
    """Inverse summed squared probabilities, row-wise for 2-D input."""
    p = np.asarray(p, dtype=float)
    sums = p.sum(axis=-1)
    if np.any(np.abs(sums - 1) > norm_tol):
        worst = np.max(np.abs(sums - 1))
        raise ValueError(f"probability row(s) not normalized: worst deviation {worst:g}")
    return 1.0 / np.sum(p * p, axis=-1)


def shannon_entropy(states, norm_tol=1e-6):
    """Shannon entropy (nats) of state columns in the computational Fock basis."""
    c = np.asarray(states, dtype=float)
    one_dim = c.ndim == 1
    if one_dim:
        c = c[:, None]
    p = c * c
    sums = p.sum(axis=0)
    if np.any(np.abs(sums - 1) > norm_tol):
        raise ValueError(f"state not normalized: worst norm error {np.max(np.abs(sums - 1)):g}")
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, -p * np.log(np.where(p > 0, p, 1.0)), 0.0)
    H = terms.sum(axis=0)
    return float(H[0]) if one_dim else H


def goe_reference(D):
    """Shannon-entropy plateau of Gaussian-random states, log(0.48 D)."""
    return float(np.log(0.48 * D))


@dataclass
class SpectralObservables:
    """Per-eigenstate diagnostics against the product basis."""

    energies: np.ndarray
    sectors: np.ndarray
    pn: np.ndarray
    shannon: np.ndarray
    sigma_n: np.ndarray
    sigma_j: np.ndarray
    mean_J: np.ndarray
    shell: np.ndarray
    ambiguous: np.ndarray
    mean_n: np.ndarray

    @property
    def size(self):
        return self.energies.size


def imbalance_observables(exact, basis, unperturbed, overlaps,
                          enforce_zero_imbalance=None, ambiguity_band=0.25):
    """Imbalance widths and excitation-shell assignment for each eigenstate.

    sigma_n comes from the Fock-diagonal imbalance operator n_L - n_R;
    sigma_j and <J> from projecting onto the labeled product basis.  The
    shell is the nearest integer to <J>; states further than
    ``ambiguity_band`` from an integer are flagged as ambiguous (adiabatic
    invariance of J breaking down).

    For symmetry-resolved decompositions, <n> = 0 is enforced as a sanity
    check; pass ``enforce_zero_imbalance=False`` for bases (such as the
    omega = 0 product states) that carry a definite imbalance.
    """
    if enforce_zero_imbalance is None:
        enforce_zero_imbalance = bool(np.all(exact.sectors >= 0))
    p_fock = exact.states ** 2
    imbalance = basis.occupations[:, 0] + basis.occupations[:, 1]
    imbalance = 2 * imbalance - basis.N  # n_L - n_R per Fock state
    mean_n = imbalance @ p_fock
    if enforce_zero_imbalance and np.max(np.abs(mean_n)) > 1e-8:
        raise NumericsError(
            f"<n> should vanish by symmetry, worst |<n>| = {np.max(np.abs(mean_n)):g}"
        )
    sigma_n = np.sqrt((imbalance.astype(float) ** 2) @ p_fock)
    mean_J = overlaps @ unperturbed.J
    sigma_j = np.sqrt(overlaps @ (unperturbed.j.astype(float) ** 2))
    shell = np.rint(mean_J).astype(int)
    ambiguous = np.abs(mean_J - shell) > ambiguity_band
    return SpectralObservables(
        energies=exact.energies.copy(),
        sectors=exact.sectors.copy(),
        pn=participation_number(overlaps),
        shannon=shannon_entropy(exact.states),
        sigma_n=sigma_n,
        sigma_j=sigma_j,
        mean_J=mean_J,
        shell=shell,
        ambiguous=ambiguous,
        mean_n=mean_n,
    )


@dataclass
class JointDistribution:
    """Distribution p_{n,j} of one eigenstate over a fixed-J shell."""

    shell: int
    n: np.ndarray
    j: np.ndarray
    p: np.ndarray
    leakage: float
    warning: bool


def joint_distribution(state, unperturbed, shell_J, leak_tol=1e-3):
    """Project one exact eigenstate onto the (n, j) labels of one J shell.

    ``leakage`` is the probability weight outside the shell; above
    ``leak_tol`` the result carries a warning flag instead of failing.
    """
    mask = unperturbed.J == shell_J
    if not np.any(mask):
        raise ValueError(f"no product states with J={shell_J}")
    amps = np.asarray(unperturbed.states[:, mask].T @ state).ravel()
    p = amps ** 2
    leakage = float(1.0 - p.sum())
    return JointDistribution(
        shell=int(shell_J),
        n=unperturbed.n[mask].copy(),
        j=unperturbed.j[mask].copy(),
        p=p,
        leakage=leakage,
        warning=leakage > leak_tol,
    )
