"""Four-mode Bose-Hubbard double-dimer model.

Two Bose-Josephson junctions ("dimers") L and R, each with two modes
sigma = +/-, intra-dimer hopping Omega, on-site interaction U, and a weak
inter-dimer hopping omega.  Total particle number N is conserved, so the
many-body Hilbert space at fixed N has dimension

    D = (N+1)(N+2)(N+3)/6.

The Fock basis is ordered in contiguous blocks of fixed n_L (particles in
the left dimer), which makes the left-dimer reduced density matrix a
block-wise reshape of the state vector.
"""

from dataclasses import dataclass
import json

import numpy as np
import scipy.sparse as sp

MODE_LABELS = ("L+", "L-", "R+", "R-")

#: (p_lr, p_pm) parity pairs of the four dihedral-group sectors, in a fixed order.
SECTOR_PARITIES = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def hilbert_dimension(N):
    """Dimension of the fixed-N four-mode Fock space."""
    return (N + 1) * (N + 2) * (N + 3) // 6


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the double-dimer Hamiltonian.

    Omega is the intra-dimer hopping and serves as the unit of energy;
    all emitted energies are in units of Omega.  The dimensionless
    combinations are w = omega/Omega and u = U*N/Omega.
    """

    N: int
    U: float
    omega: float
    Omega: float = 1.0

    def __post_init__(self):
        if self.N < 1 or int(self.N) != self.N:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        if self.Omega <= 0:
            raise ValueError(f"Omega must be positive, got {self.Omega}")
        if self.U < 0:
            raise ValueError(f"U must be non-negative, got {self.U}")
        if self.omega < 0:
            raise ValueError(f"omega must be non-negative, got {self.omega}")

    @property
    def w(self):
        """Dimensionless inter-dimer hopping omega/Omega."""
        return self.omega / self.Omega

    @property
    def u(self):
        """Dimensionless interaction U*N/Omega."""
        return self.U * self.N / self.Omega

    @classmethod
    def from_dimensionless(cls, N, u, w, Omega=1.0):
        """Build parameters from (N, u, w) with Omega as the energy unit."""
        return cls(N=N, U=u * Omega / N, omega=w * Omega, Omega=Omega)

    def with_omega(self, omega):
        """Same dimer parameters, different inter-dimer coupling."""
        return ModelParams(N=self.N, U=self.U, omega=omega, Omega=self.Omega)


class FockBasis:
    """Number-conserving Fock basis of the four-mode model.

    States are occupation four-tuples (n_{L+}, n_{L-}, n_{R+}, n_{R-})
    summing to N, sorted by n_L ascending, then n_{L-} ascending, then
    n_{R-} ascending.  With this order every fixed-n_L block is a
    contiguous index range of size (n_L+1)(N-n_L+1), laid out row-major
    as (left index l = n_{L-}, right index r = n_{R-}).
    """

    def __init__(self, N):
        if N < 1 or int(N) != N:
            raise ValueError(f"need at least one particle, got N={N}")
        self.N = int(N)
        occ = []
        starts = [0]
        for n_L in range(N + 1):
            n_R = N - n_L
            for n_Lm in range(n_L + 1):
                for n_Rm in range(n_R + 1):
                    occ.append((n_L - n_Lm, n_Lm, n_R - n_Rm, n_Rm))
            starts.append(len(occ))
        self.occupations = np.array(occ, dtype=np.int64)
        self.size = len(occ)
        self.block_slices = [slice(starts[k], starts[k + 1]) for k in range(N + 1)]
        self.index = {tuple(state): i for i, state in enumerate(occ)}
        self.n_left = self.occupations[:, 0] + self.occupations[:, 1]

    def __len__(self):
        return self.size

    def block_dims(self, n_L):
        """(d_L, d_R) one-dimer dimensions of the n_L block."""
        return n_L + 1, self.N - n_L + 1

    def block_size(self, n_L):
        d_L, d_R = self.block_dims(n_L)
        return d_L * d_R

    def position(self, occupation):
        return self.index[tuple(occupation)]

    @property
    def swap_lr_perm(self):
        """Index permutation of the L <-> R dimer swap."""
        perm = getattr(self, "_swap_lr", None)
        if perm is None:
            occ = self.occupations
            perm = np.array(
                [self.index[(c, d, a, b)] for a, b, c, d in occ], dtype=np.int64
            )
            self._swap_lr = perm
        return perm

    @property
    def swap_pm_perm(self):
        """Index permutation of the + <-> - mode swap in both dimers."""
        perm = getattr(self, "_swap_pm", None)
        if perm is None:
            occ = self.occupations
            perm = np.array(
                [self.index[(b, a, d, c)] for a, b, c, d in occ], dtype=np.int64
            )
            self._swap_pm = perm
        return perm


def enumerate_basis(N):
    """All four-mode occupations at total particle number N, block-ordered."""
    return FockBasis(N)


def build_hamiltonian(params, basis):
    """Sparse symmetric Hamiltonian of the coupled-dimer model.

    Matrix elements: intra-dimer hopping -(Omega/2) with bosonic
    sqrt(n(n'+1)) factors, diagonal on-site interaction (U/2) n(n-1), and
    inter-dimer hopping -(omega/2) for each sigma.

    Parameters
    ----------
    params : ModelParams
    basis : FockBasis enumerated for params.N

    Returns
    -------
    scipy.sparse.csr_matrix, exactly symmetric by construction.
    """
    if basis.N != params.N:
        raise ValueError(
            f"basis is for N={basis.N} but params have N={params.N}"
        )
    occ = basis.occupations
    D = basis.size
    pos = basis.index

    rows = list(range(D))
    cols = list(range(D))
    vals = list(0.5 * params.U * np.sum(occ * (occ - 1), axis=1))

    def add_hop(i, target, amp):
        j = pos[target]
        rows.extend((i, j))
        cols.extend((j, i))
        vals.extend((amp, amp))

    half_Om = 0.5 * params.Omega
    half_om = 0.5 * params.omega
    for i in range(D):
        a, b, c, d = occ[i]
        # intra-dimer hops, one direction each (the mirror entry is added too)
        if b > 0:
            add_hop(i, (a + 1, b - 1, c, d), -half_Om * np.sqrt(b * (a + 1)))
        if d > 0:
            add_hop(i, (a, b, c + 1, d - 1), -half_Om * np.sqrt(d * (c + 1)))
        if half_om != 0.0:
            if c > 0:
                add_hop(i, (a + 1, b, c - 1, d), -half_om * np.sqrt(c * (a + 1)))
            if d > 0:
                add_hop(i, (a, b + 1, c, d - 1), -half_om * np.sqrt(d * (b + 1)))

    H = sp.csr_matrix((vals, (rows, cols)), shape=(D, D))
    H.sum_duplicates()
    return H


def build_dimer_hamiltonian(n_alpha, Omega=1.0, U=0.0):
    """Dense two-mode Bose-Hubbard Hamiltonian of one dimer with n_alpha bosons.

    Basis index is k = n_- (bosons in the '-' mode), k = 0..n_alpha, matching
    the within-block ordering of FockBasis.
    """
    if n_alpha < 0 or int(n_alpha) != n_alpha:
        raise ValueError(f"particle number must be a non-negative integer, got {n_alpha}")
    n = int(n_alpha)
    k = np.arange(n + 1)
    H = np.zeros((n + 1, n + 1))
    H[k, k] = 0.5 * U * ((n - k) * (n - k - 1) + k * (k - 1))
    hop = -0.5 * Omega * np.sqrt(k[1:] * (n - k[1:] + 1.0))
    H[k[1:], k[1:] - 1] = hop
    H[k[1:] - 1, k[1:]] = hop
    return H


def effective_joson_params(w, u, U):
    """Effective hopping and interaction of the Josephson excitations.

    Quasiparticle (joson) exchange between the dimers is governed by
    w_J = w (1+u/4)/sqrt(1+u/2) and an attractive self-interaction of
    magnitude U_J = U (1+u/8)/(1+u/2).
    """
    if u < 0:
        raise ValueError(f"u must be non-negative, got {u}")
    w_J = w * (1 + u / 4) / np.sqrt(1 + u / 2)
    U_J = U * (1 + u / 8) / (1 + u / 2)
    return w_J, U_J


@dataclass
class SymmetrySector:
    """One parity sector of the dihedral symmetry group.

    The group is generated by the L<->R dimer swap and the +<->- mode swap;
    vectors are stored as columns of a sparse (D, dim) matrix, orthonormal
    and simultaneous eigenvectors of both swaps with eigenvalues (p_lr, p_pm).
    """

    p_lr: int
    p_pm: int
    vectors: sp.csc_matrix

    @property
    def dim(self):
        return self.vectors.shape[1]

    def project(self, H):
        """Dense sector block V^T H V of a full-basis operator."""
        VH = H @ self.vectors  # (D, dim) sparse
        block = (self.vectors.T @ VH).toarray()
        return 0.5 * (block + block.T)

    def embed(self, vecs):
        """Map sector-basis column vectors back to the full Fock basis."""
        return self.vectors @ vecs


def symmetry_sectors(basis, null_tol=1e-12):
    """Split the Fock basis into the four parity sectors of the swap group.

    Group-averages each basis state over {identity, L<->R, +<->-, both} with
    the four character sign patterns and prunes null vectors.  Distinct group
    orbits have disjoint support, so the returned sector bases are exactly
    orthonormal and their dimensions sum to D.
    """
    perm_lr = basis.swap_lr_perm
    perm_pm = basis.swap_pm_perm
    perm_both = perm_lr[perm_pm]
    D = basis.size

    sectors = []
    for p_lr, p_pm in SECTOR_PARITIES:
        rows, cols, vals = [], [], []
        col = 0
        seen = np.zeros(D, dtype=bool)
        for i in range(D):
            if seen[i]:
                continue
            images = (i, perm_lr[i], perm_pm[i], perm_both[i])
            seen[list(images)] = True
            coeff = {}
            for chi, img in zip((1, p_lr, p_pm, p_lr * p_pm), images):
                coeff[img] = coeff.get(img, 0) + chi
            norm = np.sqrt(sum(c * c for c in coeff.values()))
            if norm <= null_tol * 4:
                continue
            for img, c in coeff.items():
                if c != 0:
                    rows.append(img)
                    cols.append(col)
                    vals.append(c / norm)
            col += 1
        vectors = sp.csc_matrix((vals, (rows, cols)), shape=(D, col))
        sectors.append(SymmetrySector(p_lr=p_lr, p_pm=p_pm, vectors=vectors))

    total = sum(s.dim for s in sectors)
    if total != D:
        raise RuntimeError(f"sector dimensions sum to {total}, expected {D}")
    return sectors


def project_trivial(state, basis):
    """Group-average a state vector onto the fully symmetric sector."""
    out = state + state[basis.swap_lr_perm] + state[basis.swap_pm_perm]
    out += state[basis.swap_lr_perm[basis.swap_pm_perm]]
    return 0.25 * out


def basis_to_json_dict(basis, matrix=None):
    """JSON-ready dump of the basis (and optionally a sparse matrix).

    Schema: {"schema": "josonlab-model", "version": 1, "N": ..,
    "occupations": [[n_L+, n_L-, n_R+, n_R-], ..]} plus, when a matrix is
    given, {"matrix": {"format": "coo", "shape": [D, D], "rows": [..],
    "cols": [..], "values": [..]}}.
    """
    out = {
        "schema": "josonlab-model",
        "version": 1,
        "N": basis.N,
        "mode_order": list(MODE_LABELS),
        "occupations": basis.occupations.tolist(),
    }
    if matrix is not None:
        coo = sp.coo_matrix(matrix)
        out["matrix"] = {
            "format": "coo",
            "shape": list(coo.shape),
            "rows": coo.row.tolist(),
            "cols": coo.col.tolist(),
            "values": coo.data.tolist(),
        }
    return out


def dump_basis_json(path, basis, matrix=None):
    with open(path, "w") as fh:
        json.dump(basis_to_json_dict(basis, matrix), fh)
