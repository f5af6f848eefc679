"""Simulation and analysis of unbalanced two-color Polya urn schemes
with random replacement counts."""

from .distributions import IntegerDistribution
from .urn import (
    Absorbed,
    Color,
    TauKind,
    Trajectory,
    UrnScheme,
    UrnState,
    draw_color,
    simulate_trajectory,
    step,
)
from .asymptotics import (
    NegativeDiscriminant,
    Regime,
    RegimeReport,
    ZeroDelta,
    classify,
    drift,
    lower_root,
    omega,
    upper_root,
)
from .survival import SurvivalGrid, SurvivalTable, solve, survival_table
from .montecarlo import BatchStats, lemma1_check, run_batch

__all__ = [
    "Absorbed",
    "BatchStats",
    "Color",
    "IntegerDistribution",
    "NegativeDiscriminant",
    "Regime",
    "RegimeReport",
    "SurvivalGrid",
    "SurvivalTable",
    "TauKind",
    "Trajectory",
    "UrnScheme",
    "UrnState",
    "ZeroDelta",
    "classify",
    "draw_color",
    "drift",
    "lemma1_check",
    "lower_root",
    "omega",
    "run_batch",
    "simulate_trajectory",
    "solve",
    "step",
    "survival_table",
    "upper_root",
]
