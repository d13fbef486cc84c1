#!/usr/bin/env python3
"""Exact eigenstates of the coupled system, classified by imbalance widths.

With the weak coupling on, (n, j) stop being good quantum numbers but the
dihedral symmetry forces <n> = <j> = 0, so eigenstates are classified by
sigma_n and sigma_j plus the shell label <J>.  Three marker states of the
J = 11 shell (max sigma_n, max Shannon entropy, min sigma_n) exemplify the
particle cat, the chaotic state, and the joson-region states; their
probability maps over the shell labels are written out.
"""

from pathlib import Path

import numpy as np

import josonlab as jl
from josonlab import io

OUT = Path(__file__).resolve().parent / "output" / "spectrum"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    basis = jl.enumerate_basis(21)
    params = jl.ModelParams.from_dimensionless(21, 0.5, 0.082)
    sectors = jl.symmetry_sectors(basis)
    dec = jl.diagonalize(jl.build_hamiltonian(params, basis), sectors=sectors)
    unp = jl.build_unperturbed_basis(params, basis)
    overlaps = jl.overlap_probabilities(dec, unp)
    obs = jl.imbalance_observables(dec, basis, unp, overlaps)

    print(f"D = {dec.size} eigenstates; {np.sum(~obs.ambiguous)} carry an "
          f"unambiguous integer shell label")
    io.write_csv(
        OUT / "eigenstates.csv", "eigenstate-table", 1,
        ["index", "sector", "energy", "pn", "shannon", "sigma_n", "sigma_j",
         "mean_J", "shell", "ambiguous"],
        [(i, obs.sectors[i], obs.energies[i], obs.pn[i], obs.shannon[i],
          obs.sigma_n[i], obs.sigma_j[i], obs.mean_J[i], obs.shell[i],
          obs.ambiguous[i]) for i in range(obs.size)],
    )

    sel = np.flatnonzero(obs.shell == 11)
    markers = {
        "particle_cat (max sigma_n)": sel[np.argmax(obs.sigma_n[sel])],
        "chaotic (max shannon)": sel[np.argmax(obs.shannon[sel])],
        "joson_region (min sigma_n)": sel[np.argmin(obs.sigma_n[sel])],
    }
    for label, idx in markers.items():
        jd = jl.joint_distribution(dec.states[:, idx], unp, 11)
        peak = np.argmax(jd.p)
        print(f"  {label}: state {idx}, sigma_n={obs.sigma_n[idx]:5.2f}, "
              f"sigma_j={obs.sigma_j[idx]:5.2f}, H={obs.shannon[idx]:.3f}, "
              f"p_nj peak at (n={jd.n[peak]:+d}, j={jd.j[peak]:+d}), "
              f"leakage {jd.leakage:.1e}")
        tag = label.split(" ")[0]
        io.write_csv(
            OUT / f"pnj_{tag}.csv", "joint-distribution", 1,
            ["n", "j", "p"],
            [(jd.n[k], jd.j[k], jd.p[k]) for k in range(jd.n.size)],
        )
    print(f"wrote tables to {OUT}")


if __name__ == "__main__":
    main()
