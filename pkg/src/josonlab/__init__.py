"""Workbench for two weakly coupled Bose-Josephson junctions.

Exact spectra and dihedral-symmetry sectors of the four-mode Bose-Hubbard
double dimer, number-resolved bi-partite entanglement, chaos diagnostics
(participation numbers, Shannon entropies, level-spacing statistics),
ergodic/random-state/generalized-Gibbs reference ensembles, and the
classical mean-field limit with semiclassical joson numbers.
"""

from .model import (
    FockBasis,
    ModelParams,
    SymmetrySector,
    build_dimer_hamiltonian,
    build_hamiltonian,
    effective_joson_params,
    enumerate_basis,
    hilbert_dimension,
    symmetry_sectors,
)
from .spectral import (
    EigenDecomposition,
    SpectralObservables,
    UnperturbedBasis,
    build_unperturbed_basis,
    diagonalize,
    goe_reference,
    imbalance_observables,
    joint_distribution,
    overlap_probabilities,
    participation_number,
    shannon_entropy,
    shell_block_count,
    shell_dimension,
)
from .entanglement import (
    EntanglementSpectrum,
    ReducedDensityBlocks,
    entanglement_spectrum,
    max_schmidt_rank,
    reduced_density_blocks,
    state_entropy,
    total_entropy,
)
from .ensembles import (
    ChaoticRegion,
    EnsemblePrediction,
    chaotic_region,
    ensemble_statistics,
    ergodic_prediction,
    gge_prediction,
    goe_prediction,
    sample_canonical_random_state,
    sample_ensemble,
)
from .levelstats import (
    BrodyFit,
    GapRatioResult,
    UnfoldedSpectrum,
    analyze_sector_spectra,
    brody_curve,
    brody_fit,
    gap_ratio,
    poisson_curve,
    reference_curves,
    spacing_histogram,
    unfold,
    wigner_curve,
)
from .classical import (
    Trajectory,
    TrajectoryObservables,
    action_oracle,
    classical_energy,
    dimer_contour_energy,
    init_from_actions,
    integrate,
    invert_action,
    mean_field_rhs,
    semiclassical_action,
    state_actions,
    trajectory_observables,
)
from .elliptic import carlson_rf, carlson_rd, carlson_rj, ellip_e, ellip_k, ellip_pi, elliptic_kepi
from .errors import NumericsError

__version__ = "0.1.0"
