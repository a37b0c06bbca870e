"""Multi-hypothesis quantum state discrimination toolkit."""

from .bounds import (
    BoundReport,
    CopyEvaluation,
    SearchMethod,
    bk_success_at,
    copies_lower,
    copies_upper,
    copy_sweep,
    min_copies_search,
)
from .errors import DiscriminationError, NumericalFailure, ValidationError
from .hsp import (
    Group,
    Subgroup,
    coset_state,
    cyclic_group,
    dihedral_group,
    enumerate_subgroups,
    group_from_cayley,
    hsp_ensemble,
    subgroup_from_elements,
)
from .linalg import herm_eig, inv_sqrt_on_support, kron, psd_sqrt, trace_norm
from .minimax import (
    BestResponse,
    MinimaxConfig,
    MinimaxResult,
    solve_minimax,
    worst_case_povm_exists,
)
from .pgm import Povm, SuccessReport, bk_lower_bound, helstrom, pgm, success_report
from .states import (
    DensityMatrix,
    Ensemble,
    compressed_powers,
    ensemble_from_json,
    ensemble_to_json,
    fidelity,
    joint_support_restrict,
    load_ensemble,
    max_eigenvalue,
    max_pairwise_fidelity,
    random_density,
    random_pure_state,
    save_ensemble,
    tensor_power,
    uniform_ensemble,
)

__version__ = "0.1.0"
