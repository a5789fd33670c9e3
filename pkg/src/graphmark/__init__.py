"""Graph-based watermarking codec.

Encodes positive integers as self-inverting permutations, embeds those
permutations in reducible permutation flow-graphs, and recovers them again;
the redundant structure lets decoding detect and sometimes repair tampering.
"""

from .analysis import (
    RepairResult,
    RpgValidationReport,
    as_rpg,
    hamiltonian_path,
    repair_list_pointers,
    restore_labels,
    validate_rpg,
)
from .attacks import (
    ATTACK_KINDS,
    GRAPH_ATTACK_KINDS,
    SIP_ATTACK_KINDS,
    AttackSpec,
    CampaignReport,
    TrialRecord,
    apply_graph_attack,
    apply_sip_attack,
    run_detection_campaign,
    run_exhaustive_edge_campaign,
    single_edge_deletions,
    single_edge_flips,
)
from .errors import FormatError, GraphmarkError, TamperError
from .graphs import DirectedGraph, ReduciblePermutationGraph
from .rpg import didomination_dag, max_didominators, rpg_to_sip, sip_to_rpg
from .serialize import (
    export_dot,
    read_permutation,
    read_rpg,
    read_unlabeled,
    write_permutation,
    write_rpg,
    write_unlabeled,
)
from .sip import (
    SipTamperReport,
    bitonic_from_cycles,
    bitonic_permutation,
    cycle_representation,
    sip_to_watermark,
    validate_sip,
    watermark_to_sip,
)

__version__ = "0.1.0"

__all__ = [
    "ATTACK_KINDS",
    "AttackSpec",
    "CampaignReport",
    "DirectedGraph",
    "FormatError",
    "GRAPH_ATTACK_KINDS",
    "GraphmarkError",
    "ReduciblePermutationGraph",
    "RepairResult",
    "RpgValidationReport",
    "SIP_ATTACK_KINDS",
    "SipTamperReport",
    "TamperError",
    "TrialRecord",
    "__version__",
    "apply_graph_attack",
    "apply_sip_attack",
    "as_rpg",
    "bitonic_from_cycles",
    "bitonic_permutation",
    "cycle_representation",
    "didomination_dag",
    "export_dot",
    "hamiltonian_path",
    "max_didominators",
    "read_permutation",
    "read_rpg",
    "read_unlabeled",
    "repair_list_pointers",
    "restore_labels",
    "rpg_to_sip",
    "run_detection_campaign",
    "run_exhaustive_edge_campaign",
    "single_edge_deletions",
    "single_edge_flips",
    "sip_to_rpg",
    "sip_to_watermark",
    "validate_rpg",
    "validate_sip",
    "watermark_to_sip",
    "write_permutation",
    "write_rpg",
    "write_unlabeled",
]
