"""Connectivity-aware fanout gates from GHZ-preparation blocks, and single-shot GHZ-context measurement."""

from .circuit import CX, Circuit, Gate, LayerSchedule, asap_layering, reverse_dagger, sever
from .fanout import (
    PathDecomposition,
    build_fanout_from_ghz,
    build_ladder_fanout,
    extract_paths,
    verify_fanout,
)
from .ghz import GhzPlan, best_root, build_doubling_ghz, depth_table, schedule_ghz, verify_ghz_plan
from .pauli import (
    Context,
    PauliString,
    TritString,
    build_context,
    commutes,
    context_intersection_check,
    enumerate_all_contexts,
    gamma_conjugate,
    gamma_conjugate_letter,
    observable_from_index,
)
from .states import (
    DecodedShot,
    GhzClassLabel,
    conjugate_through,
    decode_shot,
    identify_state,
    measurement_circuit,
    prepare_state_circuit,
)
from .topology import CouplingGraph, full, grid, heavy_hex_156, line, load_edge_list

__version__ = "0.1.0"
