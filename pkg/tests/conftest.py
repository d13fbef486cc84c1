"""Shared fixtures: the N=21 production pipeline is built once per session."""

import numpy as np
import pytest

import josonlab as jl

PAPER_N = 21
PAPER_U = 0.5
PAPER_W = 0.082


@pytest.fixture(scope="session")
def basis21():
    return jl.enumerate_basis(PAPER_N)


@pytest.fixture(scope="session")
def sectors21(basis21):
    return jl.symmetry_sectors(basis21)


@pytest.fixture(scope="session")
def pipeline21(basis21, sectors21):
    """Exact spectrum, product basis, overlaps and observables at the
    production parameters (N=21, u=0.5, w=0.082)."""
    params = jl.ModelParams.from_dimensionless(PAPER_N, PAPER_U, PAPER_W)
    H = jl.build_hamiltonian(params, basis21)
    dec = jl.diagonalize(H, sectors=sectors21)
    unperturbed = jl.build_unperturbed_basis(params, basis21)
    overlaps = jl.overlap_probabilities(dec, unperturbed)
    obs = jl.imbalance_observables(dec, basis21, unperturbed, overlaps)
    return {
        "params": params,
        "H": H,
        "dec": dec,
        "unperturbed": unperturbed,
        "overlaps": overlaps,
        "obs": obs,
    }


@pytest.fixture(scope="session")
def entropies21(pipeline21, basis21):
    """Total and number-resolved entanglement entropies of every eigenstate."""
    dec = pipeline21["dec"]
    S = np.empty(dec.size)
    S_blocks = np.empty((dec.size, PAPER_N + 1))
    for i in range(dec.size):
        _, Sb, Si = jl.state_entropy(dec.states[:, i], basis21)
        S[i] = Si
        S_blocks[i] = Sb
    return S, S_blocks
