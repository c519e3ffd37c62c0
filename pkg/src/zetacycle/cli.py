"""zetacycle command line.

Exit codes: 0 success, 1 user/input error, 2 network/integrity failure,
3 numeric failure, 4 analysis preconditions not met.
"""

import sys
from pathlib import Path

import click

from . import cycle_analysis as ca
from .config import load_config
from .errors import (
    BadWindow,
    CatalogError,
    ConfigError,
    FetchError,
    NumericError,
    TermComputationError,
    TooShort,
)
from .figures import RECIPES, run_recipe
from .term_engine import COMPONENTS, read_series_csv, series_to_csv, sum_series
from .zero_catalog import check_monotonic, fetch_zero_table, load_zero_file, table_is_usable, validate

EXIT_OK, EXIT_INPUT, EXIT_NETWORK, EXIT_NUMERIC, EXIT_ANALYSIS = 0, 1, 2, 3, 4


class _Cli(click.Group):
    """Maps click usage errors to exit code 1; code 2 means network/integrity."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_INPUT)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_INPUT)
        code = rv if isinstance(rv, int) else EXIT_OK
        if standalone_mode:
            sys.exit(code)
        return code


def _fail(code, message):
    click.echo(f"error: {message}", err=True)
    return code


config_option = click.option("--config", "config_path", type=click.Path(dir_okay=False),
                             default=None, help="INI config file.")


@click.group(cls=_Cli)
def cli():
    """Sums of li(n^rho) over Riemann zeta zeros and their periodicity."""


@cli.command()
@click.argument("label")
@config_option
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
              help="Destination file (default <data_dir>/<label>.txt).")
def fetch(label, config_path, out):
    """Download the zero table configured under LABEL."""
    try:
        cfg = load_config(config_path)
    except ConfigError as exc:
        return _fail(EXIT_INPUT, exc)
    if label not in cfg.zero_sources:
        known = ", ".join(sorted(cfg.zero_sources)) or "none"
        return _fail(EXIT_NETWORK, f"unknown source label {label!r} (configured: {known})")
    dest = Path(out) if out else cfg.table_path(label)
    cached = dest.exists() and table_is_usable(dest)
    try:
        path = fetch_zero_table(cfg.zero_sources[label], dest, cfg.allowed_urls)
    except FetchError as exc:
        return _fail(EXIT_NETWORK, exc)
    click.echo(f"cached: {path}" if cached else f"fetched: {path}")
    return EXIT_OK


@cli.command(name="validate")
@click.argument("zero_file", type=click.Path(dir_okay=False))
@config_option
def validate_cmd(zero_file, config_path):
    """Check ordering and the Riemann-von Mangoldt zero count of ZERO_FILE."""
    try:
        cfg = load_config(config_path)
        catalog = load_zero_file(zero_file)
        report = validate(catalog, cfg.default_tolerances["validate"])
    except (ConfigError, CatalogError, OSError) as exc:
        return _fail(EXIT_INPUT, exc)
    click.echo(report.summary())
    return EXIT_OK if report.passed else EXIT_INPUT


@cli.command(name="sum")
@click.argument("zero_file", type=click.Path(dir_okay=False))
@config_option
@click.option("--n", "n", type=int, required=True, help="Base n >= 2 in li(n^rho).")
@click.option("--from", "from_index", type=int, default=None, help="First zero index (default: first in file).")
@click.option("--to", "to_index", type=int, default=None, help="Last zero index (default: last in file).")
@click.option("--component", type=click.Choice(COMPONENTS), default="both", show_default=True)
@click.option("--stride", type=int, default=None, help="Checkpoint stride (default from config).")
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes for the terms.")
@click.option("--out", "out", type=click.Path(dir_okay=False), default="-", show_default=True)
@click.option("--pair-conjugates", is_flag=True, help="Add conjugate-zero terms: 2 Re, Im 0.")
def sum_cmd(zero_file, config_path, n, from_index, to_index, component, stride, jobs, out, pair_conjugates):
    """Write the cumulative series for zeros --from..--to of ZERO_FILE as CSV."""
    if n < 2:
        return _fail(EXIT_INPUT, "--n must be >= 2")
    if jobs < 1:
        return _fail(EXIT_INPUT, "--jobs must be >= 1")
    if from_index is not None and to_index is not None and to_index < from_index:
        click.echo("Usage: zetacycle sum ZERO_FILE --n N [--from K] [--to M], with M >= K", err=True)
        return _fail(EXIT_INPUT, f"--to ({to_index}) is smaller than --from ({from_index})")
    try:
        cfg = load_config(config_path)
        catalog = load_zero_file(zero_file)
        if catalog.start_index == 1:
            report = validate(catalog, cfg.default_tolerances["validate"])
            if not report.passed:
                return _fail(EXIT_INPUT, f"{zero_file}: {report.summary()}")
        else:
            check_monotonic(catalog)
        lo = catalog.start_index if from_index is None else from_index
        hi = catalog.end_index if to_index is None else to_index
        catalog = catalog.slice(lo, hi)
    except (ConfigError, CatalogError, OSError) as exc:
        return _fail(EXIT_INPUT, exc)
    stride = cfg.checkpoint_stride if stride is None else stride
    if stride < 1:
        return _fail(EXIT_INPUT, "--stride must be >= 1")
    try:
        series = sum_series(catalog, n, checkpoint_stride=stride, jobs=jobs, paired=pair_conjugates)
    except TermComputationError as exc:
        return _fail(EXIT_NUMERIC, exc)
    if out == "-":
        series_to_csv(series, sys.stdout.buffer if hasattr(sys.stdout, "buffer") else sys.stdout, component)
    else:
        with open(out, "wb") as fh:
            series_to_csv(series, fh, component)
    return EXIT_OK


@cli.command()
@click.argument("series_csv", type=click.Path(dir_okay=False))
@config_option
@click.option("--min-period", type=int, default=ca.DEFAULT_MIN_PERIOD, show_default=True)
@click.option("--window", type=int, default=ca.DEFAULT_WINDOW, show_default=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="Report CSV path.")
def analyze(series_csv, config_path, min_period, window, out):
    """Detect cycles in the cum_re (and cum_im) columns of SERIES_CSV."""
    try:
        load_config(config_path)
        with open(series_csv, "rb") as fh:
            cols = read_series_csv(fh)
    except (ConfigError, OSError, ValueError) as exc:
        return _fail(EXIT_INPUT, exc)
    names = [c for c in ("cum_re", "cum_im") if c in cols]
    if not names:
        return _fail(EXIT_INPUT, f"{series_csv} has neither cum_re nor cum_im")
    start = int(cols["index"][0])
    reports = []
    for name in names:
        try:
            reports.append((name, ca.detect_cycles(cols[name], min_period, window, start_index=start)))
        except (TooShort, BadWindow) as exc:
            return _fail(EXIT_ANALYSIS, f"{name}: {exc}")
        except ValueError as exc:
            return _fail(EXIT_INPUT, exc)
    if out:
        with open(out, "wb") as fh:
            for name, report in reports:
                fh.write(f"# component={name.removeprefix('cum_')} {report.summary()}\n".encode("ascii"))
                ca.report_to_csv(report, fh)
                fh.write(b"\n")
    for name, report in reports:
        click.echo(f"{name.removeprefix('cum_')}: {report.summary()}")
        for a, b in report.periods:
            click.echo(f"  period {a}..{b} ({b - a} zeros)")
    return EXIT_OK


@cli.command()
@click.argument("figure_id")
@config_option
@click.option("--out", "out", type=click.Path(file_okay=False), default=".", show_default=True,
              help="Output directory.")
@click.option("--jobs", type=int, default=1, show_default=True)
def figure(figure_id, config_path, out, jobs):
    """Regenerate FIGURE_ID as <id>.csv and <id>.svg."""
    if figure_id not in RECIPES:
        return _fail(EXIT_INPUT, f"unknown figure {figure_id!r}; valid ids: {', '.join(RECIPES)}")
    recipe = RECIPES[figure_id]
    try:
        cfg = load_config(config_path)
        table = cfg.table_path(cfg.figure_table)
        if not table.exists():
            return _fail(EXIT_INPUT, f"zero table {table} not found; run `zetacycle fetch` or set [data] figure_table")
        catalog = load_zero_file(table)
    except (ConfigError, CatalogError, OSError) as exc:
        return _fail(EXIT_INPUT, exc)
    if catalog.start_index != 1 or catalog.count < recipe.zeros:
        return _fail(EXIT_INPUT, f"{figure_id} needs zeros 1..{recipe.zeros}; {table} has "
                                 f"{catalog.start_index}..{catalog.end_index}")
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        series, csv_path, svg_path = run_recipe(recipe, catalog, out_dir, jobs=jobs)
    except (TermComputationError, NumericError) as exc:
        return _fail(EXIT_NUMERIC, exc)
    click.echo(f"{figure_id}: n={recipe.n} zeros={len(series)} -> {csv_path}, {svg_path}")
    return EXIT_OK


def main():
    cli()


if __name__ == "__main__":
    main()
