"""Entropic uncertainty lower bounds in the presence of quantum memory.

A small numpy-based toolkit for bipartite density matrices: named state
families, projective observables, entropic and correlation quantities
(including quantum discord via a Bloch-sphere optimizer), five uncertainty
lower bounds with closed-form oracles for the one-parameter families, and
application bounds (entanglement witness, entanglement of formation,
distillable common randomness).  The ``eurmem`` CLI exposes all of it.
"""

from .apps import (
    FanoInputs,
    WitnessVerdict,
    applications_report,
    common_randomness_upper_bound,
    eof_lower_bound,
    fano_term,
    helstrom_error,
    witness,
)
from .bounds import (
    BoundsReport,
    actual_uncertainty,
    bound_berta,
    bound_coles_piani,
    bound_maassen_uffink,
    bound_mu_mixed,
    bound_ours,
    bound_pati,
    bounds_report,
    closed_form_curves,
    family_pair_observables,
)
from .infoquant import (
    CorrelationReport,
    OptimizerConfig,
    binary_entropy,
    classical_correlation,
    conditional_entropy,
    delta,
    delta_floor,
    holevo,
    mutual_information,
    shannon_entropy,
    von_neumann_entropy,
)
from .matops import (
    I2,
    PAULIS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    basis_ket,
    herm_eigensystem,
    partial_trace,
    projector,
    tensor,
)
from .measure import (
    MeasurementEnsemble,
    ProjectiveObservable,
    observable_from_basis,
    observable_from_bloch,
    observable_from_spec,
    outcome_ensemble,
    overlap_matrix,
    pauli_observable,
    post_measurement_state,
    q_mu,
    q_prime,
)
from .states import (
    DensityMatrix,
    StateValidationError,
    ValidationReport,
    bell_diagonal,
    bell_diagonal_special,
    from_spec,
    maximally_mixed,
    pure_schmidt,
    pure_state,
    to_spec,
    validate,
    werner,
    x_state_special,
)

__version__ = "0.1.0"
