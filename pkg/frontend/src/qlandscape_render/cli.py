"""Command-line renderer: `render map <csv> <png>` / `render scan <csv> <png>`."""

from __future__ import annotations

import sys as _sys

import click

from .io import read_map_csv, read_scan_csv
from .render import render_map, render_scan


@click.group()
def cli():
    """Render qlandscape CSV exports into figures."""


@cli.command("map")
@click.argument("csv_path", type=click.Path(exists=True))
@click.argument("out_path", type=click.Path())
def cmd_map(csv_path, out_path):
    """Two-panel (alpha, phi_w) heatmap of J0 and P."""
    data = read_map_csv(csv_path)
    render_map(data, out_path)
    click.echo(f"wrote {out_path}: {data.alpha.size}x{data.phi_w.size} cells")


@cli.command("scan")
@click.argument("csv_path", type=click.Path(exists=True))
@click.argument("out_path", type=click.Path())
def cmd_scan(csv_path, out_path):
    """P(alpha) line plot with the 1/2 reference."""
    data = read_scan_csv(csv_path)
    render_scan(data, out_path)
    click.echo(f"wrote {out_path}: {data.alpha.size} points")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except ValueError as exc:
        click.echo(f"invalid input: {exc}", err=True)
        return 2
    return 0


def entrypoint():  # console_scripts hook
    _sys.exit(main())


if __name__ == "__main__":
    entrypoint()
