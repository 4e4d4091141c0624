"""Command-line front end.

    chirpedqpm run <scenario> [--out DIR] [--points N] [--seedless]
    chirpedqpm list
    chirpedqpm validate <file>

Scenarios are YAML files; <scenario> is a path or the name of a bundled or
user scenario (user directories come from CHIRPEDQPM_SCENARIO_PATH).  Exit
codes: 0 success, 2 schema/config error, 3 physics domain error.
"""

import os
import sys

import click

from .errors import ConfigError, DomainError
from .scenarios import find_scenario, list_scenarios, load_scenario, run_scenario

EXIT_CONFIG = 2
EXIT_DOMAIN = 3


@click.group()
def main():
    """Chirped-QPM biphoton simulator."""


@main.command("run")
@click.argument("scenario")
@click.option("--out", "outdir", default=None, metavar="DIR",
              help="Output directory (default ./out/<scenario-name>).")
@click.option("--points", type=int, default=None, metavar="N",
              help="Override the spectral grid size of the scan band.")
@click.option("--seedless", is_flag=True,
              help="Omit the version echo from output headers "
                   "(runs are deterministic either way).")
def run(scenario, outdir, points, seedless):
    """Execute a scenario and write its CSV tables and gnuplot script."""
    try:
        sc = find_scenario(scenario)
        outdir = outdir or os.path.join("out", sc.name)
        summary = run_scenario(sc, outdir, points_override=points, seedless=seedless)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except DomainError as exc:
        click.echo(f"domain error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    click.echo(f"wrote {outdir}")
    for key, val in summary.items():
        click.echo(f"  {key} = {val:g}" if isinstance(val, float) else f"  {key} = {val}")


@main.command("list")
def list_cmd():
    """List available scenarios (bundled and user)."""
    for sc in list_scenarios():
        click.echo(f"{sc.name:32s} [{sc.source}]  {sc.description}")


@main.command("validate")
@click.argument("path", type=click.Path(exists=False))
def validate(path):
    """Check a scenario file against the schema."""
    try:
        sc = load_scenario(path)
    except (ConfigError, OSError) as exc:
        click.echo(f"invalid: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    click.echo(f"ok: {sc.name}")


if __name__ == "__main__":
    main()
