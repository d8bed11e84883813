"""Command-line harness: run, compare, verify, gen and inspect."""

import functools
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import click

from .. import __version__
from ..analyzers.lemma_checker import lemma_checks
from ..analyzers.potential import amortized_check
from ..analyzers.power_model import analysis_constants
from ..analyzers.proof_cases import proof_case_suite
from ..analyzers.ratio_calculator import RatioCalculator, max_ratio, summarize
from ..config import ConfigManager
from ..exceptions import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    ConfigError,
    DeadlineMissError,
    InfeasibleGridError,
    InstanceParseError,
    SpeedScalingError,
    UsageError,
)
from ..generators.instance_generator import InstanceKind, generate
from ..generators.report_generator import ReportGenerator, run_identity
from ..models.config import RunConfig
from ..models.job import Instance
from ..models.policy import Policy, PolicyKind
from ..models.power import PowerParams
from ..models.reports import RunSummary
from ..models.trace import SimConfig, Trace
from ..parsers.instance_parser import read_instance, write_instance
from ..schedulers.offline import snap_instance
from ..schedulers.simulator import convergence_study, simulate
from .output_formatter import OutputFormatter
from .progress_tracker import ProgressTracker

logger = logging.getLogger(__name__)

RunTask = Tuple[Instance, PolicyKind, PowerParams, SimConfig]
RunResult = Tuple[Optional[Trace], str]


def run_task(task: RunTask) -> RunResult:
    """Simulate one (instance, policy) pair; a missed deadline becomes a message."""
    instance, kind, params, sim = task
    try:
        return simulate(instance, Policy.create(kind, params), params, sim), ""
    except DeadlineMissError as e:
        return None, str(e)


def run_tasks(tasks: Sequence[RunTask], workers: int, tracker: ProgressTracker) -> List[RunResult]:
    """Run tasks in order, fanning out across processes when workers > 1."""
    results: List[RunResult] = []
    with tracker.track(len(tasks), "Simulating"):
        if workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for result in pool.map(run_task, tasks):
                    results.append(result)
                    tracker.update()
        else:
            for task in tasks:
                results.append(run_task(task))
                tracker.update(status=f"{task[0].name}/{task[1].value}")
    return results


def failed_summary(instance: Instance, policy: str, detail: str) -> RunSummary:
    return RunSummary(
        instance=instance.name, policy=policy, total=0.0, working=0.0, idle=0.0, wakeup=0.0,
        dynamic=0.0, wake_count=0, feasible=False, end_time=0.0, detail=detail,
    )


def config_options(func: Callable) -> Callable:
    """Attach the flags that map onto RunConfig fields."""
    options = [
        click.option("--config", "config_file", type=click.Path(dir_okay=False), help="JSON config file (keys mirror the flags)."),
        click.option("--alpha", type=float, help="Power exponent alpha > 1."),
        click.option("--g", "g", type=float, help="Static power g > 0."),
        click.option("--L", "wake_energy", type=float, help="Wake-up energy L >= 0."),
        click.option("--q", "q", type=float, help="Speed multiplier of qOA/SqOA (default 2 - 1/alpha)."),
        click.option("--policy", "policy", multiple=True, help="Policy to run; repeat or comma-separate."),
        click.option("--step", type=float, help="Largest simulation step h."),
        click.option("--event-tolerance", type=float, help="Accuracy of located events."),
        click.option("--bf-dt", type=float, help="Brute-force slot length."),
        click.option("--bf-speeds", type=str, help="Comma-separated brute-force speed set."),
        click.option("--bf-max-states", type=int, help="State cap of the brute-force program."),
        click.option("--seed", "seed", type=int, multiple=True, help="Seed of generated instances; repeatable."),
        click.option("--samples", type=int, help="Sample times of the analysis checks."),
        click.option("--energy-basis", type=click.Choice(["total", "working"]), help="Energy compared in ratios."),
        click.option("--ratio-slack", type=float, help="Allowed excess over the proven ratio."),
        click.option("--workers", type=int, help="Parallel worker processes."),
        click.option("--out", "out", type=click.Path(file_okay=False), help="Output directory."),
        click.option("-v", "--verbose", is_flag=True, default=False, help="Debug logging."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def load_config(options: Dict[str, Any]) -> RunConfig:
    """Build the RunConfig from the flag values of a command.

    Raises:
        ConfigError: If a value is invalid.
    """
    config_file = options.pop("config_file", None)
    policies = [name for item in options.pop("policy", ()) for name in item.split(",") if name.strip()]
    seeds = list(options.pop("seed", ()))
    overrides = dict(options)
    overrides["policy"] = policies or None
    overrides["seed"] = seeds or None
    overrides["verbose"] = True if options.get("verbose") else None

    config = ConfigManager().build(config_file, overrides)
    if config.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    return config


def harness_command(func: Callable) -> Callable:
    """Exit with the command's status; configuration, parse and usage errors give 2."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            code = func(*args, **kwargs)
        except (ConfigError, UsageError, InstanceParseError) as e:
            logger.debug("Usage error", exc_info=True)
            ProgressTracker().show_message(str(e), level="error")
            code = EXIT_USAGE
        except SpeedScalingError as e:
            logger.error(f"Command failed: {e}", exc_info=True)
            ProgressTracker().show_message(str(e), level="error")
            code = EXIT_FAILURE
        if code:
            click.get_current_context().exit(code)
        return code
    return wrapper


def collect_instances(paths: Sequence[str], kind: Optional[str], size: int, seeds: Sequence[int]) -> List[Instance]:
    """Read instance files and generate one instance per seed when a kind is given."""
    instances = [read_instance(path) for path in paths]
    if kind:
        instances.extend(generate(kind, seed=seed, size=size) for seed in seeds)
    if not instances:
        raise UsageError("No instances: pass instance files or --kind")
    return instances


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="speed-analyzer")
def cli():
    """Speed scaling with a sleep state: simulate, compare and verify online policies."""


@cli.command("run")
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--convergence", is_flag=True, help="Also report total energy at h, h/2 and h/4.")
@config_options
@harness_command
def cmd_run(instance_path: str, convergence: bool, **options) -> int:
    """Simulate each policy on INSTANCE_PATH and write traces and summaries."""
    config = load_config(options)
    params = config.to_power_params()
    instance = read_instance(instance_path)
    tracker = ProgressTracker(enabled=True, verbose=config.verbose)
    formatter = OutputFormatter(verbose=config.verbose)
    reports = ReportGenerator(config.output_dir)

    tasks = [(instance, kind, params, config.to_sim_config()) for kind in config.policy_kinds()]
    summaries = []
    for (_, kind, _, _), (trace, error) in zip(tasks, run_tasks(tasks, config.workers, tracker)):
        if trace is None:
            summary = failed_summary(instance, kind.value, error)
        else:
            reports.write_trace(trace)
            summary = summarize(trace)
        reports.write_summary(summary)
        summaries.append(summary)

    click.echo(formatter.format_summaries(summaries))
    if convergence:
        for kind in config.policy_kinds():
            try:
                result = convergence_study(instance, Policy.create(kind, params), params,
                                           step=config.step, event_tolerance=config.event_tolerance)
            except DeadlineMissError as e:
                tracker.show_message(str(e), level="warning")
                continue
            click.echo(f"\n{kind.value} " + formatter.format_convergence(result))

    infeasible = [s for s in summaries if not s.feasible]
    for summary in infeasible:
        tracker.show_message(f"{summary.policy} infeasible on {summary.instance}: {summary.detail}", level="error")
    return EXIT_FAILURE if infeasible else EXIT_OK


@cli.command("compare")
@click.argument("instance_paths", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", type=click.Choice([k.value for k in InstanceKind]), help="Generate one instance per seed.")
@click.option("--size", type=int, default=3, show_default=True, help="Jobs per generated instance.")
@config_options
@harness_command
def cmd_compare(instance_paths: Tuple[str, ...], kind: Optional[str], size: int, **options) -> int:
    """Compare policy energy with the brute-force optimum and the lower bound."""
    config = load_config(options)
    params = config.to_power_params()
    instances = collect_instances(instance_paths, kind, size, config.seeds)
    tracker = ProgressTracker(enabled=True, verbose=config.verbose)
    formatter = OutputFormatter(verbose=config.verbose)
    reports = ReportGenerator(config.output_dir)
    calculator = RatioCalculator(
        params, grid_dt=config.bf_dt, speeds=config.bf_speeds, max_states=config.bf_max_states,
        basis=config.energy_basis, slack=config.ratio_slack,
    )

    references = {}
    with tracker.track(len(instances), "Offline optimum", unit="instances"):
        for instance in instances:
            references[instance.name] = calculator.reference(instance)
            tracker.update(status=instance.name)

    tasks = [(inst, k, params, config.to_sim_config()) for inst in instances for k in config.policy_kinds()]
    results = run_tasks(tasks, config.workers, tracker)

    rows, failures = [], []
    for (instance, kind_, _, _), (trace, error) in zip(tasks, results):
        if trace is None:
            failures.append(f"{kind_.value} on {instance.name}: {error}")
            continue
        rows.extend(calculator.calculate(instance, [trace], references[instance.name]))

    reports.write_ratios(rows)
    worst = max_ratio(rows)
    reports.write_json("compare_summary.json", {
        "energy_basis": config.energy_basis,
        "rows": len(rows),
        "flagged": sum(1 for row in rows if row.flagged),
        "infeasible": failures,
        "max_ratio": worst.as_dict() if worst else None,
    })
    click.echo(formatter.format_ratios(rows, config.energy_basis))

    for failure in failures:
        tracker.show_message(failure, level="error")
    return EXIT_FAILURE if failures or any(row.flagged for row in rows) else EXIT_OK


@cli.command("verify")
@click.argument("instance_paths", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", type=click.Choice([k.value for k in InstanceKind]), default="uniform_random",
              show_default=True, help="Generator of the verification corpus when no files are given.")
@click.option("--size", type=int, default=3, show_default=True, help="Jobs per generated instance.")
@click.option("--skip-runs", is_flag=True, help="Only audit the proof inequalities.")
@click.option("--beta-scale", type=float, default=1.0, hidden=True)
@config_options
@harness_command
def cmd_verify(instance_paths: Tuple[str, ...], kind: str, size: int, skip_runs: bool,
               beta_scale: float, **options) -> int:
    """Audit the proof inequalities, then check SqOA runs against the brute-force optimum."""
    config = load_config(options)
    params = config.to_power_params()
    tracker = ProgressTracker(enabled=True, verbose=config.verbose)
    formatter = OutputFormatter(verbose=config.verbose)
    reports = ReportGenerator(config.output_dir)

    cases = proof_case_suite(beta_scale=beta_scale)
    reports.write_json("proof_cases.json", cases.to_dict())
    click.echo(formatter.format_case_report(cases))
    if skip_runs:
        return EXIT_OK if cases.passed else EXIT_FAILURE

    instances = [read_instance(path) for path in instance_paths]
    if not instances:
        instances = [generate(kind, seed=seed, size=size) for seed in config.seeds]
    consts = analysis_constants(params, beta_scale=beta_scale)
    calculator = RatioCalculator(params, grid_dt=config.bf_dt, speeds=config.bf_speeds,
                                 max_states=config.bf_max_states)

    lemma_reports, amortized_reports, failures, skipped = [], [], [], []
    with tracker.track(len(instances), "Verifying", unit="instances"):
        for instance in instances:
            tracker.update(status=instance.name)
            # Both runs see the windows the slot-grid optimum actually solves.
            try:
                instance = snap_instance(instance, config.bf_dt)
            except InfeasibleGridError as e:
                skipped.append(f"{instance.name}: {e}")
                continue
            reference = calculator.reference(instance)
            if reference.schedule is None:
                skipped.append(f"{instance.name}: no brute-force optimum ({reference.note})")
                continue
            trace, error = run_task((instance, PolicyKind.SQOA, params, config.to_sim_config()))
            if trace is None:
                failures.append(error)
                continue
            grid = calculator.grid_for(instance)
            speed_gap = max(b - a for a, b in zip((0.0,) + grid.speeds, grid.speeds))
            lemma_reports.append(lemma_checks(trace, reference.schedule, params, config.samples,
                                              grid_tol=speed_gap, grid_dt=grid.dt))
            amortized_reports.append(
                amortized_check(trace, reference.schedule, params, consts, config.samples, grid_dt=grid.dt)
            )

    identity = run_identity("verify", kind if not instance_paths else "files")
    reports.write_json(f"{identity}.json", {
        "proof_cases": cases.to_dict(),
        "lemmas": [r.to_dict() for r in lemma_reports],
        "amortized": [{k: v for k, v in r.to_dict().items() if k != "samples"} for r in amortized_reports],
        "infeasible": failures,
        "skipped": skipped,
    })
    click.echo(formatter.format_verification(lemma_reports, amortized_reports))

    for failure in failures:
        tracker.show_message(failure, level="error")
    for entry in skipped:
        tracker.show_message(f"not verified: {entry}", level="error")
    passed = (cases.passed and not failures and not skipped
              and all(r.passed for r in lemma_reports) and all(r.passed for r in amortized_reports))
    click.echo("Verification " + ("PASSED" if passed else "FAILED"))
    return EXIT_OK if passed else EXIT_FAILURE


def _parse_params(items: Sequence[str]) -> Dict[str, float]:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"Expected KEY=VALUE, got {item!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise UsageError(f"Parameter {key!r} needs a number, got {value!r}")
    return params


@cli.command("gen")
@click.argument("kind", type=click.Choice([k.value for k in InstanceKind]))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--size", type=int, default=5, show_default=True)
@click.option("--g", "g", type=float, help="Static power the gaps are sized for (bursty_with_gaps).")
@click.option("--L", "wake_energy", type=float, help="Wake-up energy the gaps are sized for (bursty_with_gaps).")
@click.option("--param", "extra", multiple=True, help="Generator parameter KEY=VALUE; repeatable.")
@click.option("--out", "out", type=click.Path(dir_okay=False), required=True, help="Instance file (.json or .csv).")
@harness_command
def cmd_gen(kind: str, seed: int, size: int, g: Optional[float], wake_energy: Optional[float],
            extra: Tuple[str, ...], out: str) -> int:
    """Generate an instance of KIND and write it to --out."""
    params: Dict[str, Any] = _parse_params(extra)
    if g is not None:
        params["g"] = g
    if wake_energy is not None:
        params["L"] = wake_energy
    for key in ("burst_size",):
        if key in params:
            params[key] = int(params[key])
    instance = generate(kind, seed=seed, size=size, **params)
    path = write_instance(instance, out)
    click.echo(f"Wrote {len(instance)} job(s) to {path}")
    return EXIT_OK


@cli.command("inspect")
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--g", "g", type=float, help="Static power; with --L checks every gap exceeds L/g.")
@click.option("--L", "wake_energy", type=float, help="Wake-up energy; with --g checks every gap exceeds L/g.")
@click.option("-v", "--verbose", is_flag=True, help="List the jobs.")
@harness_command
def cmd_inspect(instance_path: str, g: Optional[float], wake_energy: Optional[float], verbose: bool) -> int:
    """Print statistics of an instance, including its minimum gap."""
    instance = read_instance(instance_path)
    timeout = None
    if g is not None and wake_energy is not None:
        if not g > 0:
            raise UsageError(f"g must be > 0, got {g}")
        timeout = wake_energy / g
    click.echo(OutputFormatter(verbose=verbose).format_instance(instance, idle_timeout=timeout))
    if timeout is not None:
        gaps = instance.uncovered_gaps()
        if gaps and min(end - start for start, end in gaps) <= timeout:
            return EXIT_FAILURE
    return EXIT_OK
