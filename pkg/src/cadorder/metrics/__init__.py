from .clustering import uniqueness_cluster
from .evaluation import (
    WITH_COST,
    WITHOUT_COST,
    EvaluationReport,
    MetricSummary,
    ProblemRow,
    cost_share,
    evaluate,
    filter_hard,
    markup,
    near_optimal_rate,
)
from .plots import AdversarialPoint, adversarial_data, render_adversarial, render_survival, survival_data
from .records import ProblemTimings, ProjectionTimeRecord, TimingRecord, effective_time
