#!/usr/bin/env python3
"""Decoupled-dimer spectrum organized into fixed-J shells.

At zero inter-dimer coupling the eigenstates are products |n_L, j_L>|n_R, j_R>
labeled by (J, n, j).  Coloring each product state by its participation
number over the weakly coupled eigenbasis (w = 0.082) reveals which parts
of a shell stay localized (self-trapping islands) and which melt into the
chaotic sea.
"""

from pathlib import Path

import numpy as np

import josonlab as jl
from josonlab import io

N, U_DIMLESS, W = 21, 0.5, 0.082
OUT = Path(__file__).resolve().parent / "output" / "shells"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    basis = jl.enumerate_basis(N)
    params0 = jl.ModelParams.from_dimensionless(N, U_DIMLESS, 0.0)
    unp = jl.build_unperturbed_basis(params0, basis)

    params = jl.ModelParams.from_dimensionless(N, U_DIMLESS, W)
    sectors = jl.symmetry_sectors(basis)
    dec = jl.diagonalize(jl.build_hamiltonian(params, basis), sectors=sectors)
    overlaps = jl.overlap_probabilities(dec, unp)
    pn_mu = jl.participation_number(overlaps.T)

    print(f"N={N}: D = {basis.size} product states in {N + 1} fixed-J shells")
    for J in (0, 5, 11, 16, 21):
        sel = unp.J == J
        print(f"  shell J={J:2d}: {sel.sum():4d} states "
              f"(formula {jl.shell_dimension(N, J)}), "
              f"PN over coupled basis {pn_mu[sel].min():6.2f} .. {pn_mu[sel].max():6.2f}")

    shell = unp.J == 11
    print("\nJ=11 shell: the low-PN corners are the particle- and joson-"
          "self-trapping islands,")
    print("the high-PN center is the chaotic sea:")
    for quantile in (0.0, 0.5, 1.0):
        k = np.flatnonzero(shell)[np.argsort(pn_mu[shell])[
            int(quantile * (shell.sum() - 1))]]
        print(f"  (n={unp.n[k]:+3d}, j={unp.j[k]:+3d})  E={unp.energies[k]:8.3f}  "
              f"PN={pn_mu[k]:6.2f}")

    io.write_csv(
        OUT / "unperturbed_states.csv", "unperturbed-table", 1,
        ["index", "J", "n", "j", "energy", "pn_exact"],
        [(mu, unp.J[mu], unp.n[mu], unp.j[mu], unp.energies[mu], pn_mu[mu])
         for mu in range(unp.size)],
    )
    print(f"\nwrote {OUT / 'unperturbed_states.csv'}")


if __name__ == "__main__":
    main()
