"""
Survival and adversarial plots.

The data functions are pure; rendering goes through matplotlib's Agg backend
to SVG with a fixed hash salt and no date so identical input gives identical bytes.
"""

import io
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..result import DATA, Ok, Result

# (seconds, timed out) of one run
RunTime = tuple[float, bool]

_SVG_RC = {
    "svg.hashsalt": "cadorder",
    "svg.fonttype": "path",
    "path.simplify": False,
}

_COLORS = ["#377eb8", "#ff7f00", "#4daf4a", "#e41a1c", "#984ea3", "#a65628", "#f781bf", "#999999"]


def _ensure_agg_backend():
    """Ensure matplotlib uses Agg backend for headless rendering."""
    import matplotlib
    if matplotlib.rcParams['backend'].lower() != 'agg':
        matplotlib.use('Agg')


def survival_data(times: Sequence[tuple[float, bool]]) -> list[tuple[int, float]]:
    """(k, sum of the k smallest times) over the runs that did not time out"""
    solved = sorted(t for t, timed_out in times if not timed_out)
    points = []
    total = 0.0
    for k, t in enumerate(solved, start=1):
        total += t
        points.append((k, total))
    return points


@dataclass(frozen=True)
class AdversarialPoint:
    problem_id: str
    time_a: float
    time_b: float
    a_timed_out: bool
    b_timed_out: bool


def adversarial_data(times_a: Mapping[str, RunTime], times_b: Mapping[str, RunTime]) -> Result[list[AdversarialPoint]]:
    """
    Pair the times of two heuristics problem by problem. Times are effective
    times, so a timed out run sits at twice its limit.
    """
    only_a = sorted(set(times_a) - set(times_b))
    only_b = sorted(set(times_b) - set(times_a))
    if only_a or only_b:
        return Result.error(
            f"heuristics were evaluated on different problems: only first {only_a}, only second {only_b}", kind=DATA)
    points = []
    for problem_id in sorted(times_a):
        time_a, a_timed_out = times_a[problem_id]
        time_b, b_timed_out = times_b[problem_id]
        points.append(AdversarialPoint(problem_id, time_a, time_b, a_timed_out, b_timed_out))
    return Ok(points)


def _svg_bytes(fig) -> bytes:
    import matplotlib.pyplot as plt

    buffer = io.BytesIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buffer.getvalue()


def render_survival(series: Mapping[str, Sequence[tuple[int, float]]], title: str = "") -> Result[bytes]:
    """One polyline per heuristic"""
    _ensure_agg_backend()
    import matplotlib
    import matplotlib.pyplot as plt

    try:
        with matplotlib.rc_context(_SVG_RC):
            fig, ax = plt.subplots(figsize=(8, 6))
            for i, (name, points) in enumerate(series.items()):
                xs = [k for k, _ in points]
                ys = [t for _, t in points]
                ax.plot(xs, ys, linestyle="-", marker=".", color=_COLORS[i % len(_COLORS)], label=name)
            ax.set_xlabel("problems solved")
            ax.set_ylabel("cumulative seconds")
            if title:
                ax.set_title(title)
            ax.grid(True, linestyle="--", alpha=0.6)
            if series:
                ax.legend(loc="upper left")
            fig.tight_layout()
            return Ok(_svg_bytes(fig))
    except (ValueError, RuntimeError) as e:
        return Result.error("failed to render survival plot", e)


def render_adversarial(points: Sequence[AdversarialPoint], name_a: str, name_b: str) -> Result[bytes]:
    """Scatter of two heuristics against each other with the diagonal for reference"""
    _ensure_agg_backend()
    import matplotlib
    import matplotlib.pyplot as plt

    try:
        with matplotlib.rc_context(_SVG_RC):
            fig, ax = plt.subplots(figsize=(6, 6))
            top = max([max(p.time_a, p.time_b) for p in points], default=1.0) or 1.0
            ax.plot([0, top], [0, top], linestyle="--", color="#999999", linewidth=1)

            normal = [p for p in points if not (p.a_timed_out or p.b_timed_out)]
            timeouts = [p for p in points if p.a_timed_out or p.b_timed_out]
            ax.scatter([p.time_a for p in normal], [p.time_b for p in normal],
                       s=14, color=_COLORS[0], label="completed")
            if timeouts:
                ax.scatter([p.time_a for p in timeouts], [p.time_b for p in timeouts],
                           s=28, marker="x", color=_COLORS[3], label="timed out")
            ax.set_xlabel(f"{name_a} seconds")
            ax.set_ylabel(f"{name_b} seconds")
            ax.set_xlim(0, top * 1.05)
            ax.set_ylim(0, top * 1.05)
            ax.set_aspect("equal")
            ax.grid(True, linestyle="--", alpha=0.6)
            ax.legend(loc="upper left")
            fig.tight_layout()
            return Ok(_svg_bytes(fig))
    except (ValueError, RuntimeError) as e:
        return Result.error("failed to render adversarial plot", e)
