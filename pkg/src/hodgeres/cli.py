"""``verify`` command: check, table and trace.

Exit codes: 0 when every case, total and theorem matches (allowlisted and
flagged entries count as reviewed), 2 when discrepancies remain (the report
is still written), 1 on an engine error such as an unknown case id or an
unwritable path.
"""

from __future__ import annotations

import json
import sys

import click

from .cases import UnknownCaseError, UnrecognizedInvariantError
from .report import ConfigError, RunConfig, expected_table, run, write_trace

ENGINE_ERROR = 1


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(ENGINE_ERROR)


class _VerifyGroup(click.Group):
    """Report usage errors with the engine-error code.

    click exits with 2 on a bad option, which would read as a mismatch.
    """

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as exc:
            exc.exit_code = ENGINE_ERROR
            raise


@click.group(cls=_VerifyGroup)
@click.version_option(package_name="hodgeres")
def main():
    """Recompute the boundary residue cases and compare with the published table."""


@main.command()
@click.option("--case", "case_ids", multiple=True, metavar="ID", help="Case to evaluate; repeatable.")
@click.option("--all", "all_cases", is_flag=True, help="Evaluate every case (the default).")
@click.option("--basis", type=click.Choice(["hprime", "K"]), default="hprime", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "md", "csv"]), default="json", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Write the report here instead of stdout.")
@click.option("--trace-dir", type=click.Path(file_okay=False), default="traces", show_default=True,
              help="Where derivation traces of disagreeing cases are written.")
@click.option("--numeric-check", is_flag=True, help="Cross-check with quadrature and Monte-Carlo.")
@click.option("--samples", type=int, default=20, show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def check(case_ids, all_cases, basis, fmt, out_path, trace_dir, numeric_check, samples, tol, seed):
    """Evaluate cases and compare them with the expected table."""
    try:
        config = RunConfig(
            cases=() if all_cases else tuple(case_ids),
            basis=basis,
            format=fmt,
            out_path=out_path,
            numeric_check=numeric_check,
            samples=samples,
            tol=tol,
            seed=seed,
            trace_dir=trace_dir,
        )
        result = run(config)
    except UnknownCaseError as exc:
        _fail(f"unknown case id {exc.args[0]!r}")
    except (ConfigError, UnrecognizedInvariantError) as exc:
        _fail(str(exc))
    except OSError as exc:
        _fail(f"cannot write output: {exc}")
    if not out_path:
        click.echo(result.text, nl=False)
    summary = result.report["summary"]
    click.echo(
        f"{summary['matched']} matched, {summary['allowlisted']} allowlisted, "
        f"{summary['mismatched']} mismatched of {summary['cases']} cases",
        err=True,
    )
    for flag in summary["flags"]:
        click.echo(f"flag: {flag}", err=True)
    sys.exit(result.exit_code)


@main.command()
@click.option("--basis", type=click.Choice(["hprime", "K"]), default="hprime", show_default=True)
def table(basis):
    """Print the shipped expected table."""
    click.echo(json.dumps(expected_table(basis), indent=2, sort_keys=True))


@main.command()
@click.argument("case_id")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def trace(case_id, out_path):
    """Write the step-by-step derivation of one case."""
    try:
        write_trace(case_id, out_path)
    except UnknownCaseError:
        _fail(f"unknown case id {case_id!r}")
    except OSError as exc:
        _fail(f"cannot write trace: {exc}")
    click.echo(out_path)
