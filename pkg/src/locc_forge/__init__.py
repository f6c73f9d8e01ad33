"""LOCC entanglement-transformation toolkit.

Constructs the unique optimal common resource for families of bipartite
pure states, simulates finite-round LOCC protocols branch by branch, builds
deterministic preparation protocols taking the qutrit GHZ state to any
three-qubit pure state, and runs tensor-rank and majorization no-go checks
for 3x2x2 resources.
"""

from .analysis import (
    CutReport,
    DegenerateSupport,
    FormMismatch,
    MissingDimension,
    MissingDimensionKind,
    SloccClass,
    cut_condition,
    missing_dimension,
    slocc_class,
    symmetric_target_flag,
    tensor_rank_322,
    three_tangle,
)
from .engine import (
    BranchResult,
    Checkpoint,
    CorrectStep,
    InvalidMeasurement,
    LoccProtocol,
    MeasureStep,
    Measurement,
    ProtocolIncomplete,
    StagedProtocol,
    measure,
    protocol_from_dict,
    protocol_from_json,
    protocol_to_dict,
    protocol_to_json,
    run,
    verify_checkpoints,
    verify_deterministic,
)
from .ghz3 import (
    CorrectionNotFound,
    GhzParams,
    InvalidParams,
    ParamMismatch,
    WParams,
    WrongClass,
    ghz3_to_any,
    ghz3_to_any_staged,
    make_ghz_state,
    make_w_state,
    nonorthogonal_ghz_protocol,
    nonorthogonal_ghz_protocol_staged,
    orthogonal_ghz_protocol,
    orthogonal_ghz_protocol_staged,
    schmidt_dilution_protocol,
    schmidt_dilution_staged,
    trivial_preparation_protocol,
    trivial_preparation_staged,
    w_protocol,
    w_protocol_staged,
)
from .majorization import (
    CumulativeEnvelope,
    InvalidEnvelope,
    SchmidtVector,
    can_transform,
    ensemble_feasible,
    is_common_resource,
    majorizes,
    ocr_envelope,
    ocr_finite,
    sa_family_ocr,
)
from .states import (
    Bipartition,
    LocalOperator,
    PureState,
    UnnormalizedState,
    apply_local,
    basis_state,
    fidelity_up_to_phase,
    ghz2_state,
    ghz3_state,
    random_state,
    random_unitary,
    reduced_spectrum,
    schmidt_vector,
    state_from_dict,
    state_from_json,
    state_to_dict,
    state_to_json,
)
from .sweeps import (
    SweepCase,
    SweepReport,
    sample_nonorthogonal_ghz_params,
    sample_orthogonal_ghz_params,
    sample_w_params,
    verify_sweep,
)

__version__ = "0.1.0"
