"""Global power allocation for Gaussian interference networks.

Throughput (TP) and global energy efficiency (GEE) maximization by
mixed-monotonic branch and bound, and the hierarchical HTEE strategy:
minimum transmit power subject to a fraction of the maximum throughput.
"""

from ._core import (
    Box,
    GridResult,
    InstanceConfig,
    InstanceMetrics,
    InterferenceNetwork,
    PowerModel,
    ProblemKind,
    ScenarioParams,
    SolveStatus,
    Strategy,
    bisect,
    brute_force_grid,
    dbm_to_watt,
    gee,
    generate,
    pathloss_db,
    rate,
    reduce_box_powersum,
    run_sweep_config,
    sinr,
    solve_instance,
    stream_seed,
    sum_rate,
)

__all__ = [
    "Box",
    "GridResult",
    "InstanceConfig",
    "InstanceMetrics",
    "InterferenceNetwork",
    "PowerModel",
    "ProblemKind",
    "ScenarioParams",
    "SolveStatus",
    "Strategy",
    "bisect",
    "brute_force_grid",
    "dbm_to_watt",
    "gee",
    "generate",
    "pathloss_db",
    "rate",
    "reduce_box_powersum",
    "run_sweep_config",
    "sinr",
    "solve_instance",
    "stream_seed",
    "sum_rate",
]
