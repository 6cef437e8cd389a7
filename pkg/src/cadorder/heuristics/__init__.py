from .base import (
    ChainScoringHeuristic,
    GreedyHeuristic,
    Heuristic,
    HeuristicChoice,
    LogmodsConfig,
    best_ordering,
    run_heuristic,
)
from .factory import HeuristicFactory
