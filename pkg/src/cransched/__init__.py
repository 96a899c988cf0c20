"""Coordinated downlink scheduling for cloud radio-access networks.

The pipeline: simulate (or load) an Instance, price every (user, BS,
power-zone) association into a BenefitTensor, build the conflict graph,
then schedule with the exact clique search or one of the greedy variants.
"""

from .exact import (
    STATUS_FEASIBLE,
    STATUS_INFEASIBLE,
    STATUS_OPTIMAL,
    SearchStats,
    SolveResult,
    brute_force_schedule,
    solve_exact,
    solve_exact_blanking,
)
from .experiment import (
    ExperimentConfig,
    ResultRow,
    VerificationReport,
    parse_sweep_config,
    run_algorithm,
    run_sweep,
    run_verification,
)
from .graph import (
    SchedulingGraph,
    adjacent,
    build_graph,
    clique_is_feasible_schedule,
    decode,
    dump_edge_list,
    encode,
    enumerate_full_cliques,
    expected_degree,
    is_clique,
    schedule_to_vertices,
    vertices_to_schedule,
)
from .heuristics import HeuristicParams, heu_shd, p_shd
from .instance_io import (
    load_benefits,
    load_bs_positions,
    load_instance,
    save_benefits,
    save_instance,
    save_layout,
)
from .model import (
    EMPTY_SCHEDULE,
    Association,
    BenefitTensor,
    Dimensions,
    Instance,
    Schedule,
    Violation,
    schedule_utility,
    sinr,
    sinr_tensor,
    sum_rate_benefits,
    validate_schedule,
)
from .simulator import (
    NetworkLayout,
    SimParams,
    bs_grid,
    dbm_per_hz_to_watts,
    dbm_to_watts,
    fading_gain,
    generate_instance,
    generate_layout,
    path_loss_db,
    shadowing_db,
    watts_to_dbm,
)
