#!/usr/bin/env python3
"""Correlation between eigenstate chaoticity and bi-partite entanglement.

Every eigenstate lands on a (Shannon entropy, entanglement entropy) plane
together with the reference values: the random-state plateau for H, and
the uniform, random-state and shell-restricted entropies for S.  Island
cat states sit far below the chaotic cloud with only a handful of Schmidt
levels.
"""

from pathlib import Path

import numpy as np
from scipy.stats import spearmanr

import josonlab as jl
from josonlab import io

OUT = Path(__file__).resolve().parent / "output" / "chaos_vs_entanglement"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    basis = jl.enumerate_basis(21)
    params = jl.ModelParams.from_dimensionless(21, 0.5, 0.082)
    sectors = jl.symmetry_sectors(basis)
    dec = jl.diagonalize(jl.build_hamiltonian(params, basis), sectors=sectors)
    unp = jl.build_unperturbed_basis(params, basis)
    overlaps = jl.overlap_probabilities(dec, unp)
    obs = jl.imbalance_observables(dec, basis, unp, overlaps)

    S = np.array([jl.state_entropy(dec.states[:, i], basis)[2]
                  for i in range(dec.size)])
    erg = jl.ergodic_prediction(21)
    goe = jl.goe_prediction(21)
    region = jl.chaotic_region(11, obs, unp, overlaps, "topk_shannon", 100)
    S_gge = jl.gge_prediction(region).S_total

    print(f"reference lines: H_GOE = {jl.goe_reference(basis.size):.3f}, "
          f"S_erg = {erg.S_total:.3f}, S_GOE = {goe.S_total:.3f}, "
          f"S_GGE = {S_gge:.3f}")
    print(f"rank correlation Spearman(H, S) = "
          f"{spearmanr(obs.shannon, S).statistic:.3f}, "
          f"linear correlation = {np.corrcoef(obs.shannon, S)[0, 1]:.3f}")
    sel = np.flatnonzero(obs.shell == 11)
    cats = sel[np.argsort(obs.sigma_n[sel])[::-1][:2]]
    print(f"particle-cat doublet of shell 11: S = {np.round(S[cats], 3)} "
          f"(vs chaotic cloud around {S[region.exact_indices].mean():.3f})")

    io.write_csv(
        OUT / "scatter.csv", "chaos-entanglement", 1,
        ["index", "energy", "shannon", "entropy", "shell"],
        [(i, obs.energies[i], obs.shannon[i], S[i], obs.shell[i])
         for i in range(dec.size)],
    )
    io.write_json(OUT / "references.json", {
        "H_goe": jl.goe_reference(basis.size),
        "S_erg": erg.S_total, "S_goe": goe.S_total, "S_gge": S_gge,
        "S_max": erg.S_max,
    })
    print(f"wrote {OUT / 'scatter.csv'}")


if __name__ == "__main__":
    main()
