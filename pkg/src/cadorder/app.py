"""
Command line runner for cadorder
"""

import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional

import click
import yaml
from munch import Munch

from . import __version__
from .config import make_config
from .files import csv_text, write_bytes, write_csv, write_text
from .heuristics import HeuristicChoice, HeuristicFactory
from .ingest import (
    assemble_dataset,
    load_cellcounts,
    load_choices,
    load_problem_times,
    load_projection_times,
    load_timings,
    parse_smtlib_file,
)
from .heuristics.strategies.virtual_best import virtual_best
from .ingest.tables import CHOICE_COLUMNS
from .logging import log, set_verbosity
from .metrics import (
    WITH_COST,
    WITHOUT_COST,
    EvaluationReport,
    ProblemTimings,
    adversarial_data,
    evaluate,
    filter_hard,
    render_adversarial,
    render_survival,
    survival_data,
)
from .projection import dump_chain, project_chain
from .result import DATA, LIMIT, USAGE, Ok, Result
from .stringcase import spinalcase
from .types import ProblemInstance, parse_ordering

EXIT_CODES = {USAGE: 1, DATA: 2, LIMIT: 3}

REPORT_COLUMNS = ("heuristic", "variant", "problems", "accuracy", "total_time", "mean_markup", "completed",
                  "near_optimal_rate", "heuristic_cost", "cost_share")
PER_PROBLEM_COLUMNS = ("problem_id", "heuristic", "ordering", "chosen_time", "optimal_time", "markup", "timed_out",
                       "heuristic_cost", "time_limit")

_INPUT_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)
_INPUT_DIR = click.Path(exists=True, file_okay=False, path_type=Path)
_OUTPUT_FILE = click.Path(dir_okay=False, path_type=Path)


def handle_error(err) -> int:
    """Print the error tree as YAML and return the exit code of its kind"""
    click.echo(f"error: {err.message}", err=True)
    click.echo(yaml.dump(err.as_tree, sort_keys=False), err=True, nl=False)
    return EXIT_CODES.get(err.kind, EXIT_CODES[DATA])


class CadorderGroup(click.Group):
    """Turns command return values into exit codes; click usage errors exit with 1"""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            code = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_CODES[USAGE])
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_CODES[DATA])
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_CODES[USAGE])
        sys.exit(code or 0)


def heuristic_options(f):
    """Options shared by every command that runs heuristics"""
    options = [
        click.option('--heuristic', '-H', 'heuristics', envvar='CADORDER_HEURISTICS', multiple=True,
                     help='Heuristic to run, comma-separated or repeated (default: all)'),
        click.option('--seed', envvar='CADORDER_SEED', type=int, help='Seed of the random heuristic'),
        click.option('--step-time-limit', envvar='CADORDER_STEP_TIME_LIMIT', type=float,
                     help='Seconds a single projection step may take'),
        click.option('--enumeration-cap', envvar='CADORDER_ENUMERATION_CAP', type=int,
                     help='Most variables for which every ordering is enumerated'),
        click.option('--log-base', envvar='CADORDER_LOG_BASE', type=float, help='Logarithm base of logmods'),
        click.option('--degree-offset', envvar='CADORDER_DEGREE_OFFSET', type=int,
                     help='Offset added to degree sums by logmods'),
        click.option('--strategies-path', envvar='CADORDER_STRATEGIES_PATH', type=str,
                     help='Colon-separated list of directories to search for extra heuristic modules'),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _heuristic_names(values) -> Optional[list[str]]:
    names = [spinalcase(part.strip()) for value in values or () for part in value.split(",") if part.strip()]
    return names or None


def _config(obj: Munch, **overrides) -> Result[Munch]:
    if "heuristics" in overrides:
        overrides["heuristics"] = _heuristic_names(overrides["heuristics"])
    return make_config(obj.config_path, overrides)


def _emit(text: str, output: Optional[Path]) -> Result[None]:
    if output is None:
        click.echo(text, nl=False)
        return Ok(None)
    return write_text(output, text)


def _load_problems(directory: Path) -> Result[dict[str, ProblemInstance]]:
    files = sorted(directory.glob("*.smt2"))
    if not files:
        return Result.error(f"no .smt2 files in {directory}", kind=DATA)
    problems = {}
    for path in files:
        res = parse_smtlib_file(path)
        if not res:
            return Result.error(f"failed to parse {path}", res)
        problems[res.unwrapped.problem_id] = res.unwrapped
    log(f"parsed {len(problems)} problems from {directory}")
    return Ok(problems)


def _run_heuristics(factory: HeuristicFactory, names: list[str], problem: ProblemInstance,
                    timings: Optional[ProblemTimings] = None) -> Result[dict[str, HeuristicChoice]]:
    """Choices of every named heuristic; recorded projection times replace measured costs when present"""
    choices = {}
    for name in names:
        res = factory.create_heuristic(name)
        if not res:
            return res
        heuristic = res.unwrapped
        res = heuristic.choose(problem, timings)
        if not res:
            return Result.error(f"{heuristic.name} failed on {problem.problem_id}", res)
        choice = res.unwrapped
        if timings is not None:
            cost = heuristic.recorded_cost(timings, choice.ordering)
            if cost is not None:
                choice = replace(choice, heuristic_cost=cost)
        heuristic.dispose()
        choices[heuristic.name] = choice
    return Ok(choices)


def _choice_row(problem_id: str, choice: HeuristicChoice) -> dict:
    return {"problem_id": problem_id, "heuristic": choice.heuristic_name, "ordering": str(choice.ordering),
            "heuristic_cost": choice.heuristic_cost}


@click.group(cls=CadorderGroup)
@click.option('--config', '-c', 'config_path',
              envvar='CADORDER_CONFIG',
              type=_INPUT_FILE,
              help='YAML run configuration, overridden by command line flags')
@click.option('--verbose', '-v', count=True, help='Report progress on stderr')
@click.version_option(__version__, prog_name="cadorder")
@click.pass_context
def cli(ctx, config_path, verbose):
    """Variable ordering heuristics for cylindrical algebraic decomposition"""
    set_verbosity(verbose)
    ctx.obj = Munch(config_path=config_path)


@cli.command()
@click.option('--input', '-i', 'input_path', required=True, type=_INPUT_FILE, help='SMT-LIB problem')
@heuristic_options
@click.option('--timings', type=_INPUT_FILE, help='Timing CSV; virtual-best runs only when given')
@click.option('--format', 'fmt', type=click.Choice(["text", "json", "csv"]), default="text", show_default=True)
@click.option('--output', '-o', type=_OUTPUT_FILE, help='Write the report here instead of stdout')
@click.pass_obj
def choose(obj, input_path, timings, fmt, output, **options):
    """Choose an ordering for one problem with each heuristic"""
    res = _config(obj, **options)
    if not res:
        return handle_error(res)
    config = res.unwrapped

    res = parse_smtlib_file(input_path)
    if not res:
        return handle_error(res)
    problem = res.unwrapped

    problem_timings = None
    if timings is not None:
        res = load_timings(timings, {problem.problem_id: problem.variables})
        if not res:
            return handle_error(res)
        records = res.unwrapped.records.get(problem.problem_id, {})
        problem_timings = ProblemTimings(problem.problem_id, problem.variables, records)

    names = list(config.heuristics)
    if problem_timings is None and options.get("heuristics") in (None, ()) and "virtual-best" in names:
        log("no timings given, skipping virtual-best")
        names.remove("virtual-best")

    res = HeuristicFactory.create(config)
    if not res:
        return handle_error(res)
    factory = res.unwrapped
    res = _run_heuristics(factory, names, problem, problem_timings)
    factory.dispose()
    if not res:
        return handle_error(res)
    choices = res.unwrapped

    match fmt:
        case "json":
            tree = [
                {**_choice_row(problem.problem_id, c), "candidates": c.rows()}
                for c in choices.values()
            ]
            text = json.dumps(tree, indent=2) + "\n"
        case "csv":
            text = csv_text((_choice_row(problem.problem_id, c) for c in choices.values()), CHOICE_COLUMNS)
        case _:
            lines = []
            for c in choices.values():
                lines.append(f"{c.heuristic_name}: {c.ordering}  cost {c.heuristic_cost:.6f}s")
                for row in c.rows():
                    mark = " *" if row["chosen"] else ""
                    lines.append(f"  {row['candidate']} = {row['score']}{mark}")
            text = "\n".join(lines) + "\n"

    res = _emit(text, output)
    if not res:
        return handle_error(res)
    return 0


@cli.command()
@click.option('--input', '-i', 'input_path', required=True, type=_INPUT_FILE, help='SMT-LIB problem')
@click.option('--ordering', required=True, help='Projection order, e.g. x3,x1,x2')
@click.option('--step-time-limit', envvar='CADORDER_STEP_TIME_LIMIT', type=float,
              help='Seconds a single projection step may take')
@click.option('--no-times', is_flag=True, help='Leave step times out of the dump')
@click.option('--output', '-o', type=_OUTPUT_FILE, help='Write the dump here instead of stdout')
@click.pass_obj
def project(obj, input_path, ordering, step_time_limit, no_times, output):
    """Dump the projection chain of one ordering"""
    res = _config(obj, step_time_limit=step_time_limit)
    if not res:
        return handle_error(res)
    config = res.unwrapped

    res = parse_smtlib_file(input_path)
    if not res:
        return handle_error(res)
    problem = res.unwrapped

    res = parse_ordering(ordering, problem.variables)
    if not res:
        return handle_error(res)
    res = project_chain(problem.polys, res.unwrapped, config.step_time_limit)
    if not res:
        return handle_error(res)
    chain = res.unwrapped

    res = _emit(dump_chain(chain, problem.names, with_times=not no_times), output)
    if not res:
        return handle_error(res)
    if chain.any_step_timed_out:
        return handle_error(Result.error(f"projection chain of {ordering} was cut short by a step timeout", kind=LIMIT))
    return 0


def _summary_table(report: EvaluationReport) -> str:
    """Fixed width summary; with cost first, the value without cost in brackets"""
    header = f"{'heuristic':<14}{'problems':>9}{'accuracy':>10}  {'total time':<24}{'mean markup':<22}{'completed':<12}"
    lines = [header]
    for name in report.heuristics:
        bare = report.summary(name, WITHOUT_COST)
        if report.include_cost:
            full = report.summary(name, WITH_COST)
            total = f"{full.total_time:.2f} ({bare.total_time:.2f})"
            mark = f"{full.mean_markup:.3f} ({bare.mean_markup:.3f})"
            done = f"{full.completed} ({bare.completed})"
        else:
            total = f"{bare.total_time:.2f}"
            mark = f"{bare.mean_markup:.3f}"
            done = f"{bare.completed}"
        lines.append(f"{name:<14}{bare.problems:>9}{bare.accuracy:>10.3f}  {total:<24}{mark:<22}{done:<12}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


@cli.command(name="evaluate")
@click.option('--timings', required=True, type=_INPUT_FILE, help='Timing CSV of every ordering')
@click.option('--problems', type=_INPUT_DIR, help='Directory of SMT-LIB problems to run the heuristics on')
@click.option('--choices', 'choices_path', type=_INPUT_FILE, help='CSV of precomputed choices')
@click.option('--cellcounts', type=_INPUT_FILE, help='Cell count CSV; enables duplicate removal')
@click.option('--projection-times', type=_INPUT_FILE, help='Recorded projection step times, used as heuristic cost')
@heuristic_options
@click.option('--include-cost/--no-include-cost', envvar='CADORDER_INCLUDE_COST', default=None,
              help='Charge heuristic cost in the headline figures')
@click.option('--min-optimal-seconds', envvar='CADORDER_MIN_OPTIMAL_SECONDS', type=float,
              help='Keep only problems whose optimal time exceeds this')
@click.option('--near-optimal-threshold', type=float, help='Relative slack of the near optimal rate')
@click.option('--output-dir', '-o', required=True, type=click.Path(file_okay=False, path_type=Path))
@click.pass_obj
def evaluate_command(obj, timings, problems, choices_path, cellcounts, projection_times, output_dir, **options):
    """Evaluate heuristics against recorded timings"""
    res = _config(obj, **options)
    if not res:
        return handle_error(res)
    config = res.unwrapped
    explicit_names = options.get("heuristics") not in (None, ())

    if problems is None and choices_path is None:
        return handle_error(Result.error("evaluate needs --problems or --choices", kind=USAGE))

    instances = None
    if problems is not None:
        res = _load_problems(problems)
        if not res:
            return handle_error(res)
        instances = res.unwrapped

    declared = {pid: p.variables for pid, p in instances.items()} if instances is not None else None
    res = load_timings(timings, declared)
    if not res:
        return handle_error(res)
    timing_table = res.unwrapped
    declared = declared if declared is not None else timing_table.variables

    cell_table = None
    if cellcounts is not None:
        res = load_cellcounts(cellcounts, declared)
        if not res:
            return handle_error(res)
        cell_table = res.unwrapped

    step_table = None
    if projection_times is not None:
        res = load_projection_times(projection_times, declared)
        if not res:
            return handle_error(res)
        step_table = res.unwrapped

    res = assemble_dataset(instances, timing_table, cell_table, step_table)
    if not res:
        return handle_error(res)
    dataset, stats = res.unwrapped
    dataset = filter_hard(dataset, config.min_optimal_seconds)
    if not dataset:
        return handle_error(Result.error("no problems left to evaluate", kind=DATA))
    log(f"evaluating {len(dataset)} problems")

    names = list(config.heuristics)
    choices: dict[str, dict[str, HeuristicChoice]] = {}
    if choices_path is not None:
        res = load_choices(choices_path, declared)
        if not res:
            return handle_error(res)
        loaded = res.unwrapped
        for problem in dataset:
            per_problem = dict(loaded.get(problem.problem_id, {}))
            if explicit_names:
                per_problem = {name: c for name, c in per_problem.items() if name in names}
            if "virtual-best" in names and "virtual-best" not in per_problem:
                res = virtual_best(problem)
                if not res:
                    return handle_error(res)
                per_problem["virtual-best"] = res.unwrapped
            choices[problem.problem_id] = per_problem
    else:
        res = HeuristicFactory.create(config)
        if not res:
            return handle_error(res)
        factory = res.unwrapped
        for problem in dataset:
            res = _run_heuristics(factory, names, instances[problem.problem_id], problem)
            if not res:
                factory.dispose()
                return handle_error(res)
            choices[problem.problem_id] = res.unwrapped
        factory.dispose()
        rows = [_choice_row(pid, c) for pid in sorted(choices) for c in choices[pid].values()]
        res = write_csv(output_dir / "choices.csv", rows, CHOICE_COLUMNS)
        if not res:
            return handle_error(res)

    res = evaluate(dataset, choices, config.include_cost, config.near_optimal_threshold)
    if not res:
        return handle_error(res)
    report = res.unwrapped

    tree = {"dataset": stats.as_tree, "min_optimal_seconds": config.min_optimal_seconds,
            "evaluated": len(dataset), **report.as_tree}
    for name, res in (
        ("report.csv", write_csv(output_dir / "report.csv", report.report_rows(), REPORT_COLUMNS)),
        ("per_problem.csv", write_csv(output_dir / "per_problem.csv", report.problem_rows(), PER_PROBLEM_COLUMNS)),
        ("report.json", write_text(output_dir / "report.json", json.dumps(tree, indent=2) + "\n")),
    ):
        if not res:
            return handle_error(Result.error(f"failed to write {name}", res))

    click.echo(_summary_table(report), nl=False)
    return 0


@cli.command()
@click.option('--timings', required=True, type=_INPUT_FILE, help='Timing CSV of every ordering')
@click.option('--cellcounts', required=True, type=_INPUT_FILE, help='Cell count CSV of every ordering')
@click.option('--problems', type=_INPUT_DIR, help='Directory of SMT-LIB problems, for their declared variables')
@click.option('--output', '-o', required=True, type=_OUTPUT_FILE, help='Retained problem ids, one per line')
@click.pass_obj
def cluster(obj, timings, cellcounts, problems, output):
    """Drop problems that always time out and keep one per cell count vector"""
    instances = None
    if problems is not None:
        res = _load_problems(problems)
        if not res:
            return handle_error(res)
        instances = res.unwrapped

    declared = {pid: p.variables for pid, p in instances.items()} if instances is not None else None
    res = load_timings(timings, declared)
    if not res:
        return handle_error(res)
    timing_table = res.unwrapped
    res = load_cellcounts(cellcounts, declared if declared is not None else timing_table.variables)
    if not res:
        return handle_error(res)

    res = assemble_dataset(instances, timing_table, res.unwrapped)
    if not res:
        return handle_error(res)
    dataset, stats = res.unwrapped

    res = write_text(output, "".join(f"{p.problem_id}\n" for p in dataset))
    if not res:
        return handle_error(res)
    click.echo(yaml.dump(stats.as_tree, sort_keys=False), nl=False)
    return 0


@cli.command()
@click.option('--per-problem', required=True, type=_INPUT_FILE, help='per_problem.csv written by evaluate')
@click.option('--kind', required=True, type=click.Choice(["survival", "adversarial"]))
@click.option('--heuristic', '-H', 'heuristics', multiple=True,
              help='Heuristics to plot; adversarial needs exactly two')
@click.option('--title', default="", help='Survival plot title')
@click.option('--output', '-o', required=True, type=_OUTPUT_FILE,
              help='SVG file; the plotted points go to the same name with .csv')
@click.pass_obj
def plot(obj, per_problem, kind, heuristics, title, output):
    """Render a survival or adversarial plot from evaluate output"""
    res = load_problem_times(per_problem)
    if not res:
        return handle_error(res)
    times = res.unwrapped

    names = _heuristic_names(heuristics) or list(times)
    unknown = [name for name in names if name not in times]
    if unknown:
        return handle_error(Result.error(f"{per_problem} has no rows of {', '.join(unknown)}", kind=USAGE))

    if kind == "survival":
        series = {name: survival_data([times[name][pid] for pid in sorted(times[name])]) for name in names}
        res = render_survival(series, title)
        points = [{"heuristic": name, "solved": k, "cumulative_seconds": t}
                  for name, line in series.items() for k, t in line]
        columns = ("heuristic", "solved", "cumulative_seconds")
    else:
        if len(names) != 2:
            return handle_error(Result.error(f"adversarial plot compares two heuristics, got {len(names)}", kind=USAGE))
        res = adversarial_data(times[names[0]], times[names[1]])
        if not res:
            return handle_error(res)
        pairs = res.unwrapped
        res = render_adversarial(pairs, names[0], names[1])
        points = [{"problem_id": p.problem_id, "time_a": p.time_a, "time_b": p.time_b,
                   "a_timed_out": p.a_timed_out, "b_timed_out": p.b_timed_out} for p in pairs]
        columns = ("problem_id", "time_a", "time_b", "a_timed_out", "b_timed_out")
    if not res:
        return handle_error(res)

    res = write_bytes(output, res.unwrapped)
    if not res:
        return handle_error(res)
    res = write_csv(output.with_suffix(".csv"), points, columns)
    if not res:
        return handle_error(res)
    return 0


def main():
    cli()


if __name__ == '__main__':
    main()
