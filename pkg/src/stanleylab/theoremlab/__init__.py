"""Instance classification, the depth bound and the partition surgery."""

from .profile import (
    BoundVerdict,
    ConstructionError,
    InstanceProfile,
    NotApplicableError,
    bound_conditions,
    c_condition,
    classify,
    subquotient_B,
    subquotient_Ib,
    subquotient_In,
)
from .surgery import (
    AssemblyError,
    AssignmentMap,
    ChainState,
    InputContractError,
    NormalizationRequiredError,
    SurgeryContext,
    SwapInvalidError,
    alternating_chain,
    chain_to_partition,
    lift_to_quotient,
    read_assignment_map,
    swap_intervals,
)
from .upgrade import UpgradeResult, run_chain, surgery_inputs, upgrade_partition
from .verdict import TheoremVerdict, theorem_check

__all__ = [
    "AssemblyError",
    "AssignmentMap",
    "BoundVerdict",
    "ChainState",
    "ConstructionError",
    "InputContractError",
    "InstanceProfile",
    "NormalizationRequiredError",
    "NotApplicableError",
    "SurgeryContext",
    "SwapInvalidError",
    "TheoremVerdict",
    "UpgradeResult",
    "alternating_chain",
    "bound_conditions",
    "c_condition",
    "chain_to_partition",
    "classify",
    "lift_to_quotient",
    "read_assignment_map",
    "run_chain",
    "subquotient_B",
    "subquotient_Ib",
    "subquotient_In",
    "surgery_inputs",
    "swap_intervals",
    "theorem_check",
    "upgrade_partition",
]
