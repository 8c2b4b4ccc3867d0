"""PPT inequalities for multipartite qubit states.

Dense N-qubit operator algebra, GHZ / noisy-GHZ / Dür state families,
GHZ-diagonal Bell-Mermin and PPT witnesses, bipartition PPT signatures and a
sweep CLI that tabulates violation thresholds.

Basis convention: computational index ``i`` encodes ``|q_0 q_1 ... q_{N-1}>``
with qubit 0 as the most significant bit. Qubits are numbered from 0.
"""

from pptineq.config import DEFAULT_TOLERANCES, DENSE_STATE_MAX, FULL_SPECTRUM_MAX, N_MAX, Tolerances
from pptineq.errors import CapacityError, DomainError, NumericalError, PptError
from pptineq.qmat import (
    DensityOperator,
    HermitianOperator,
    PureState,
    expectation,
    hermitian_eigenvalues,
    jacobi_eigenvalues,
    kron,
    min_eigenvalue,
    partial_transpose,
    pauli_string_expectation,
)
from pptineq.states import (
    dur_state,
    ghz,
    noisy_ghz,
    random_density_matrix,
    random_product_state,
    random_separable_state,
)
from pptineq.witnesses import (
    WitnessKind,
    WitnessOperator,
    build_witness,
    ghz_interference_value,
    p_ppt_ghz_functional,
)
from pptineq.criteria import (
    Bipartition,
    CriterionReport,
    PptSignature,
    acin_consistency_check,
    enumerate_bipartitions,
    evaluate_mermin_ppt_bound,
    evaluate_p_ppt_ghz,
    evaluate_ppt_inequality,
    ppt_signature,
    zukowski_brukner_sum,
)
from pptineq.scan import SweepConfig, SweepRow, emit, run_sweep, threshold_report

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCES",
    "DENSE_STATE_MAX",
    "FULL_SPECTRUM_MAX",
    "N_MAX",
    "Tolerances",
    "CapacityError",
    "DomainError",
    "NumericalError",
    "PptError",
    "DensityOperator",
    "HermitianOperator",
    "PureState",
    "expectation",
    "hermitian_eigenvalues",
    "jacobi_eigenvalues",
    "kron",
    "min_eigenvalue",
    "partial_transpose",
    "pauli_string_expectation",
    "dur_state",
    "ghz",
    "noisy_ghz",
    "random_density_matrix",
    "random_product_state",
    "random_separable_state",
    "WitnessKind",
    "WitnessOperator",
    "build_witness",
    "ghz_interference_value",
    "p_ppt_ghz_functional",
    "Bipartition",
    "CriterionReport",
    "PptSignature",
    "acin_consistency_check",
    "enumerate_bipartitions",
    "evaluate_mermin_ppt_bound",
    "evaluate_p_ppt_ghz",
    "evaluate_ppt_inequality",
    "ppt_signature",
    "zukowski_brukner_sum",
    "SweepConfig",
    "SweepRow",
    "emit",
    "run_sweep",
    "threshold_report",
]
