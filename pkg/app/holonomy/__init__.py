from .engine import (
    HOLONOMY_METHODS,
    composite_gate,
    composite_holonomy,
    compose_loops,
    connection_one_form,
    holonomic_gate,
    holonomy,
    loop_holonomy,
    loops_commute,
    min_adjacent_overlap,
    overlap_matrix,
    pushforward,
)
from .frames import (
    DEFAULT_LOOP_STEPS,
    ConnectionSample,
    FrameTrajectory,
    LoopSpec,
    gauge_transform,
    lift_loop,
    orthonormalize,
)

__all__ = [
    "DEFAULT_LOOP_STEPS",
    "HOLONOMY_METHODS",
    "ConnectionSample",
    "FrameTrajectory",
    "LoopSpec",
    "composite_gate",
    "composite_holonomy",
    "compose_loops",
    "connection_one_form",
    "gauge_transform",
    "holonomic_gate",
    "holonomy",
    "lift_loop",
    "loop_holonomy",
    "loops_commute",
    "min_adjacent_overlap",
    "orthonormalize",
    "overlap_matrix",
    "pushforward",
]
