"""Blocks, branching and complexity of simple modules of symmetric groups."""

from .branching import (
    SemisimpleChain,
    WkPair,
    classify_beads,
    conormal_beads,
    detect_wk_pair,
    exceptional_partitions,
    induce_chain_to_rouquier,
    is_rouquier,
    is_scopes_equivalent,
    mullineux,
    normal_beads,
    phi_map,
    psi_map,
    restrict_chain_to_principal,
    socle_induce_label,
    socle_restrict_label,
)
from .complexity import ComplexityResult, complexity_of, hook_upper_bound, wreath_block_complexity
from .errors import DomainError, SymBlockError, Undecided
from .jordan_calculus import (
    JordanMultiset,
    freeness_obstruction,
    hook_dim,
    hook_restriction,
    jordan_tensor,
    jordan_type_of_nilpotent,
    lem1_count,
    lem2_dim,
    nabla_restriction,
    nabla_restriction_oracle,
    omega0,
)
from .partition_core import (
    AbacusDisplay,
    BlockId,
    Partition,
    abacus_display,
    beta_numbers,
    block_of,
    is_p_regular,
    p_core,
    p_weight,
    parse_partition,
    partition_from_beta,
    principal_block,
)
from .rank_variety import ElemAbelianModule, is_free_over, rational_points, shifted_unit
from .weight_two import WeightTwoLabel, label_of, partition_of_label, route_of, sgn_twist_label

__all__ = [name for name in dir() if not name.startswith("_")]
