"""Road-crossing danger assessment from multi-sensor distance streams."""

from ._core import (
    DangerParams,
    InsufficientData,
    ParseError,
    RoadsafeError,
    accel_transform,
    classification_report,
    collision_oracle,
    danger_value,
    decide,
    evaluate,
    fuse,
    kinematic_safety_check,
    majority_vote,
    plotdata,
    report_table,
    rmse,
    simulate,
    speed_transform,
)

__all__ = [
    "DangerParams",
    "InsufficientData",
    "ParseError",
    "RoadsafeError",
    "accel_transform",
    "classification_report",
    "collision_oracle",
    "danger_value",
    "decide",
    "evaluate",
    "fuse",
    "kinematic_safety_check",
    "majority_vote",
    "plotdata",
    "report_table",
    "rmse",
    "simulate",
    "speed_transform",
]
