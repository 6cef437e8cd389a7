from ..types import ProblemInstance
from .dataset import DatasetStats, assemble_dataset
from .smtlib import parse_smtlib, parse_smtlib_file
from .tables import (
    CellCountTable,
    ProjectionTimeTable,
    TimingTable,
    load_cellcounts,
    load_choices,
    load_problem_times,
    load_projection_times,
    load_timings,
)
