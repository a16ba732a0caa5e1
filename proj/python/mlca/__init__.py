"""Memristive learning cellular automata simulator."""

from ._mlca import (
    Action,
    DeviceParams,
    FeedbackMode,
    Grid,
    GridConfig,
    LearningParams,
    LearningState,
    MemristorDevice,
    MillmanConfig,
    MixedPolicy,
    NeighborInputs,
    NoiseStream,
    PhaseTiming,
    Reinforcement,
    ResistiveState,
    StepTrace,
    __version__,
    action_probability,
    compare_maps,
    config_from_json,
    config_to_json,
    load_image,
    millman_voltage,
    oracle_edges,
    run_fig3,
    save_image,
    sweep_switching,
    update_learning_voltage,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
