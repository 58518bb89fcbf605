# app/cli.py
# Command-line driver.
#
#     mps-sim run --circuit FILE [--report-chi] [--amplitude BITS]... [--expect PAULIS]...
#                 [--shots N --seed S] [--chi-cap K] [--chi-limit K] [--rank-tol X]
#                 [--method svd|density] [--compare-dense] [--json] [--timings]
#     mps-sim bench --family ghz|product|random-local --sizes 64,128,256 [--json]
#
# Exit codes: 0 success, 2 parse or usage error, 3 capacity error.

import logging
from typing import Optional

import click

from . import config
from .bench import bench as run_bench
from .circuit import parse
from .errors import CapacityError, CircuitParseError, SimulationError
from .models import BenchReport, GateRecord, RunReport
from .simulator import CircuitSimulator
from .utils import parse_sizes

logger = logging.getLogger(__name__)

EXIT_PARSE = 2
EXIT_CAPACITY = 3


def _fail(ctx: click.Context, message: str, code: int) -> None:
    click.echo(f"Error: {message}", err=True)
    ctx.exit(code)


def _sizes(ctx, param, value):
    try:
        return parse_sizes(value)
    except ValueError as e:
        raise click.BadParameter(str(e)) from e


def _format_record(record: GateRecord) -> str:
    line = (
        f"gate {record.index:>5}  {record.gate:<5} {str(record.targets):<10} "
        f"chi={record.chi:<4} E_chi={record.e_chi:.4f}"
    )
    if record.elapsed is not None:
        line += f"  t={record.elapsed:.6f}s"
    if record.bond_dimensions is not None:
        line += f"  bonds={record.bond_dimensions}"
    return line


def _format_summary(report: RunReport) -> str:
    lines = [
        f"qubits:            {report.n}",
        f"gates:             {report.gate_count}",
        f"final chi:         {report.chi}",
        f"final E_chi:       {report.e_chi:.6f}",
        f"storage count:     {report.storage_count} (bound {report.storage_bound})",
        f"bond dimensions:   {report.bond_dimensions}",
        f"swaps inserted:    {report.swap_count}",
    ]
    if report.discarded_weight:
        lines.append(f"discarded weight:  {report.discarded_weight:.3e}")
    if report.schmidt_spectra is not None:
        for cut, spectrum in enumerate(report.schmidt_spectra, start=1):
            lines.append(f"schmidt[{cut}]:  " + " ".join(f"{v:.10f}" for v in spectrum))
    for amp in report.amplitudes:
        lines.append(f"amplitude {amp.bits}: {amp.re:+.12f} {amp.im:+.12f}j  (p={amp.probability:.12f})")
    for pauli, value in report.expectations.items():
        lines.append(f"<{pauli}> = {value:+.12f}")
    if report.samples is not None:
        lines.append(f"samples ({report.samples.shots} shots, seed {report.samples.seed}):")
        lines += [f"  {bits} {count}" for bits, count in report.samples.counts.items()]
    if report.max_dense_deviation is not None:
        lines.append(f"max dense deviation: {report.max_dense_deviation:.3e}")
    if report.total_time is not None:
        lines.append(f"total time:        {report.total_time:.4f} s")
    return "\n".join(lines)


def _format_bench(report: BenchReport) -> str:
    lines = [f"family: {report.family}", f"{'n':>8} {'gates':>8} {'wall time (s)':>14} {'peak storage':>13} {'chi':>5}"]
    for row in report.rows:
        lines.append(f"{row.n:>8} {row.gates:>8} {row.wall_time:>14.6f} {row.peak_storage:>13} {row.chi:>5}")
    if report.time_ratios:
        lines.append("time ratios: " + ", ".join(f"{r:.2f}" for r in report.time_ratios))
    if report.linear_ok is not None:
        lines.append(f"linear trend: {'ok' if report.linear_ok else 'FAILED'}")
    return "\n".join(lines)


@click.group()
@click.option("--log-level", default=None, help="Overrides MPS_LOG_LEVEL.")
def main(log_level: Optional[str]):
    """Matrix-product-state quantum circuit simulator."""
    config.configure_logging(log_level.upper() if log_level else None)


@main.command()
@click.option("--circuit", "circuit_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Circuit file.")
@click.option("--report-chi", is_flag=True, help="Report bond dimensions per gate and Schmidt spectra per cut.")
@click.option("--amplitude", "amplitudes", multiple=True, help="Bitstring, qubit 0 leftmost. Repeatable.")
@click.option("--expect", "expectations", multiple=True, help="Pauli string, e.g. ZZI. Repeatable.")
@click.option("--shots", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--chi-cap", type=click.IntRange(min=1), default=None, help="Truncate bonds to this many Schmidt values.")
@click.option("--chi-limit", type=click.IntRange(min=1), default=None, help="Exit 3 once a bond passes this.")
@click.option("--rank-tol", type=click.FloatRange(min=0, min_open=True), default=None)
@click.option("--method", type=click.Choice(["svd", "density"]), default="svd", show_default=True)
@click.option("--compare-dense", is_flag=True, help="Evolve the dense oracle alongside (small n only).")
@click.option("--json", "as_json", is_flag=True, help="Line-delimited JSON: one record per gate, then a summary.")
@click.option("--timings", is_flag=True, help="Include wall-clock fields in the output.")
@click.pass_context
def run(ctx, circuit_path, report_chi, amplitudes, expectations, shots, seed, chi_cap, chi_limit,
        rank_tol, method, compare_dense, as_json, timings):
    """Simulate a circuit from |0...0>."""
    policy = config.default_policy()
    if rank_tol is not None:
        policy = policy.model_copy(update={"rank_tol": rank_tol})

    with open(circuit_path, encoding="utf-8") as f:
        text = f.read()
    try:
        circuit = parse(text, policy)
    except CircuitParseError as e:
        _fail(ctx, f"{circuit_path}: {e}", EXIT_PARSE)

    def emit(record: GateRecord) -> None:
        click.echo(record.model_dump_json() if as_json else _format_record(record))

    simulator = CircuitSimulator(policy, chi_cap=chi_cap, chi_limit=chi_limit, method=method)
    try:
        report = simulator.run(
            circuit,
            amplitudes=amplitudes,
            expectations=expectations,
            shots=shots,
            seed=seed,
            compare_dense=compare_dense,
            report_chi=report_chi,
            timings=timings,
            on_record=emit,
        )
    except CapacityError as e:
        _fail(ctx, str(e), EXIT_CAPACITY)
    except SimulationError as e:
        _fail(ctx, str(e), EXIT_PARSE)

    if as_json:
        click.echo(report.model_dump_json(exclude={"records"}))
    else:
        click.echo(_format_summary(report))


@main.command()
@click.option("--family", required=True, help="ghz, product or random-local.")
@click.option("--sizes", required=True, callback=_sizes, help="Comma-separated qubit counts.")
@click.option("--depth", type=click.IntRange(min=1), default=None, help="Layers for random-local.")
@click.option("--chi-cap", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--repeats", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Line-delimited JSON: one record per size, then a summary.")
@click.pass_context
def bench(ctx, family, sizes, depth, chi_cap, seed, repeats, as_json):
    """Measure wall time and storage as n grows."""
    try:
        report = run_bench(family, sizes, depth=depth, chi_cap=chi_cap, seed=seed, repeats=repeats)
    except CapacityError as e:
        _fail(ctx, str(e), EXIT_CAPACITY)
    except SimulationError as e:
        _fail(ctx, str(e), EXIT_PARSE)

    if as_json:
        for row in report.rows:
            click.echo(row.model_dump_json())
        click.echo(report.model_dump_json(exclude={"rows"}))
    else:
        click.echo(_format_bench(report))


if __name__ == "__main__":
    main()
