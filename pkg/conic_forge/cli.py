"""
Command-line interface: generate scenarios, run and check them, run batches
and render traces.
"""

import concurrent.futures
import csv
import logging
import math

import click
import numpy as np

from . import files
from .errors import ConicForgeError, InvalidInput, ModeError, SamplingExhausted
from .generate import MODES, fit_n, generate, modes_for
from .render import render_trace
from .sim import final_target, max_residual, run, verify
from .util import load_settings

log = logging.getLogger(__name__)

REPORT_HEADER = [
    "index",
    "mode",
    "f",
    "n",
    "seed",
    "rounds",
    "verdict",
    "target_class",
    "max_residual",
    "reason",
]


class BadInput(click.ClickException):
    exit_code = 2


def _load(loader, path):
    try:
        return loader(path)
    except InvalidInput as exc:
        raise BadInput(str(exc))
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput("malformed file %s: %s" % (path, exc))


@click.group()
@click.option("-v", "--verbose", count=True, help="More logging; repeat for debug output.")
@click.pass_context
def cli(ctx, verbose):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = load_settings()


@click.command()
@click.option("--f", "f", type=click.IntRange(1, 5), required=True, help="Number of crashed robots.")
@click.option("--n", "n", type=int, required=True, help="Number of robots.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mode", type=click.Choice(MODES), default="typeO", show_default=True)
@click.option("--at-most-f", is_flag=True, help="Crash anywhere between 0 and f robots.")
@click.option("--allow-reflective-initial", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_obj
def gen(settings, f, n, seed, mode, at_most_f, allow_reflective_initial, out):
    """Generate a scenario file."""
    try:
        scenario = generate(
            f, n, seed, mode, at_most_f, allow_reflective_initial, attempts=settings.attempts
        )
    except ModeError as exc:
        raise click.UsageError(str(exc))
    except SamplingExhausted as exc:
        raise click.ClickException(str(exc))
    files.save_scenario(scenario, out)
    click.echo(out)


def _tol(settings, tol):
    return settings.tol if tol is None else tol


@click.command("run")
@click.argument("scenario", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-rounds", type=click.IntRange(1), default=None)
@click.option("--tol", type=float, default=None, help="Verifier tolerance.")
@click.option("--frames", is_flag=True, help="Randomize every robot's local frame each round.")
@click.option("--mirror-frames", is_flag=True, help="Let random frames flip chirality.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_obj
def run_cmd(settings, scenario, max_rounds, tol, frames, mirror_frames, out):
    """Run a scenario and write its trace."""
    loaded = _load(files.load_scenario, scenario)
    trace = run(
        loaded,
        max_rounds=max_rounds or settings.max_rounds,
        randomize_frames=frames,
        mirror_frames=mirror_frames,
        tol=_tol(settings, tol),
    )
    files.save_trace(trace, loaded, out)
    click.echo(str(trace.verdict))
    if not trace.verdict.success:
        raise SystemExit(1)


@click.command()
@click.argument("trace", type=click.Path(exists=True, dir_okay=False))
@click.option("--tol", type=float, default=None, help="Verifier tolerance.")
@click.pass_obj
def check(settings, trace, tol):
    """Re-run the verifier on a saved trace."""
    loaded, scenario = _load(files.load_trace, trace)
    results = verify(loaded, scenario, _tol(settings, tol))
    for result in results:
        click.echo("%s %s: %s" % ("PASS" if result.passed else "FAIL", result.name, result.evidence))
    if not all(r.passed for r in results):
        raise SystemExit(1)


@click.command()
@click.argument("trace", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "prefix", required=True, help="File name prefix for the SVG frames.")
def render(trace, prefix):
    """Write one SVG per round of a trace."""
    loaded, scenario = _load(files.load_trace, trace)
    for name in render_trace(loaded, scenario, prefix):
        click.echo(name)


def scenario_seed(seed, index):
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0] % 2 ** 31)


def batch_row(job):
    """One report row; runs in a worker process."""
    index, f, seed, modes, max_rounds, tol, frames, at_most_f, attempts = job
    own_seed = scenario_seed(seed, index)
    mode = modes[index % len(modes)]
    rng = np.random.RandomState(own_seed)
    low = 2 if f == 1 else 2 * f + 1
    n = fit_n(f, mode, int(rng.randint(low, low + 9)))
    row = {"index": index, "mode": mode, "f": f, "n": n, "seed": own_seed}
    try:
        scenario = generate(
            f, n, own_seed, mode, at_most_f and mode in ("typeO", "typeI_asym"), attempts=attempts
        )
    except ConicForgeError as exc:
        row.update(rounds=0, verdict="Failure", target_class="", max_residual="", reason=str(exc))
        return row
    trace = run(scenario, max_rounds=max_rounds, randomize_frames=frames, tol=tol)
    try:
        residual = max_residual(trace, f)
        target = final_target(trace, f)
    except ConicForgeError:
        residual, target = math.inf, None
    row.update(
        rounds=trace.verdict.rounds_used,
        verdict="Success" if trace.verdict.success else "Failure",
        target_class="Point" if f == 1 else (target.kind.value if target else ""),
        max_residual="%.3e" % residual,
        reason=trace.verdict.reason,
    )
    return row


@click.command()
@click.option("--f", "f", type=click.IntRange(1, 5), required=True)
@click.option("--count", type=click.IntRange(1), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=click.IntRange(1), default=1, show_default=True)
@click.option("--max-rounds", type=click.IntRange(1), default=None)
@click.option("--tol", type=float, default=None, help="Verifier tolerance.")
@click.option("--frames", is_flag=True, help="Randomize every robot's local frame each round.")
@click.option("--at-most-f", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_obj
def batch(settings, f, count, seed, jobs, max_rounds, tol, frames, at_most_f, out):
    """Generate and run COUNT scenarios across the modes valid for f."""
    modes = modes_for(f)
    jobs_list = [
        (
            i,
            f,
            seed,
            modes,
            max_rounds or settings.max_rounds,
            _tol(settings, tol),
            frames,
            at_most_f,
            settings.attempts,
        )
        for i in range(count)
    ]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(batch_row, jobs_list))
    else:
        rows = [batch_row(job) for job in jobs_list]
    with open(out, "w", newline="") as stream:
        writer = csv.DictWriter(stream, fieldnames=REPORT_HEADER, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    failures = sum(1 for row in rows if row["verdict"] != "Success")
    click.echo("%d scenarios, %d failures" % (len(rows), failures))
    if failures:
        raise SystemExit(1)


cli.add_command(gen)
cli.add_command(run_cmd)
cli.add_command(check)
cli.add_command(render)
cli.add_command(batch)

if __name__ == "__main__":
    cli()
