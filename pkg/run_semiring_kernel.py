#!/usr/bin/env python3
"""
CLI for the semiring kernel.

Exit status: 0 on success or all-PASS, 1 on a suite FAIL or a result the
kernel cannot vouch for (NotOverInitial, BoundUnstable), 2 on usage, parse
and validation errors.
"""

import functools
import sys
from typing import List, Optional

import click
import pandas as pd
from loguru import logger
from rich.console import Console
from rich.table import Table

from semirings.colimits.diagrams import coequalizer, colimit_diagram, pushout
from semirings.colimits.tensor import tensor_coproduct
from semirings.config import load_settings
from semirings.errors import BoundUnstable, NotOverInitial, SemiringError
from semirings.harness.catalog import Catalog, catalog_up_to, enumerate_semirings
from semirings.harness.fileio import (
    format_algebra,
    format_map,
    format_salgebra,
    load_diagram,
    load_map,
    load_salgebra,
    resolve_algebra,
)
from semirings.harness.suites import (
    Report,
    verify_closure_suite,
    verify_coreflection_suite,
    verify_section3_suite,
    verify_universal_property_suite,
)
from semirings.salgebra.coreflection import (
    NATURALS,
    BaseSemiring,
    VarietyFlag,
    classify,
    coreflect,
    flag_names,
    initial_object,
)

FORMATS = click.Choice(["text", "tsv"])


def kernel_command(func):
    """Map kernel errors onto exit codes."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (NotOverInitial, BoundUnstable) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(1)
        except SemiringError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(2)
    return wrapper


def _render(table: Table) -> None:
    console = Console(width=120, color_system=None)
    with console.capture() as capture:
        console.print(table)
    click.echo(capture.get(), nl=False)


def _emit_frame(frame: pd.DataFrame, fmt: str, title: str) -> None:
    if fmt == "tsv":
        click.echo(frame.to_csv(sep="\t", index=False, lineterminator="\n"), nl=False)
        return
    table = Table(title=title)
    for column in frame.columns:
        table.add_column(str(column))
    for row in frame.itertuples(index=False):
        table.add_row(*(str(v) for v in row))
    _render(table)


def _catalog_frame(catalog: Catalog) -> pd.DataFrame:
    rows = [(e.name, e.order, ",".join(e.flag_names)) for e in catalog]
    return pd.DataFrame(rows, columns=["name", "order", "flags"])


def _emit_report(report: Report, fmt: str) -> None:
    if fmt == "tsv":
        click.echo(report.to_tsv(), nl=False)
    else:
        _emit_frame(report.to_frame(), "text", f"suite {report.suite}")
        counts = report.summary
        click.echo(f"{report.suite}: {counts['PASS']} passed, {counts['FAIL']} failed, {counts['SKIP']} skipped")
    if not report.passed:
        sys.exit(1)


@click.group()
@click.option("--verbose", is_flag=True, help="Debug logging on stderr")
def cli(verbose: bool):
    """Finite commutative semirings: coreflections, quotients and colimits."""
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")


@cli.command()
@click.argument("file")
@kernel_command
def validate(file: str):
    """Parse and validate an algebra or S-algebra file."""
    salgebra = load_salgebra(file)
    A = salgebra.algebra
    click.echo(f"OK {A.label} order {A.order} over {salgebra.base.label}")


@cli.command("classify")
@click.argument("file")
@click.option("--format", "fmt", type=FORMATS, default="text")
@kernel_command
def classify_cmd(file: str, fmt: str):
    """Variety flags of an algebra."""
    A = load_salgebra(file).algebra
    frame = pd.DataFrame([(A.label, A.order, ",".join(flag_names(classify(A))))],
                         columns=["name", "order", "flags"])
    _emit_frame(frame, fmt, "classification")


@cli.command("coreflect")
@click.argument("file")
@kernel_command
def coreflect_cmd(file: str):
    """The largest subalgebra satisfying 1+2x=1 and x^2=x, with its inclusion."""
    result = coreflect(load_salgebra(file))
    if result.salgebra.base.is_naturals:
        click.echo(format_algebra(result.algebra), nl=False)
    else:
        click.echo(format_salgebra(result.salgebra), nl=False)
    click.echo(format_map(result.inclusion), nl=False)


@cli.command()
@click.argument("basefile", required=False)
@click.option("--naturals", is_flag=True, help="Use N as the base")
@kernel_command
def initial(basefile: Optional[str], naturals: bool):
    """The initial object I of the star subvariety over a base."""
    if naturals == (basefile is not None):
        raise click.UsageError("give exactly one of BASEFILE or --naturals")
    base = NATURALS if naturals else BaseSemiring.finite(resolve_algebra(basefile))
    result = initial_object(base)
    click.echo(format_algebra(result.algebra), nl=False)
    if result.projection is not None:
        click.echo(format_map(result.projection), nl=False)


@cli.command()
@click.argument("left")
@click.argument("right")
@click.option("--base", "base_file", default=None, help="Finite base; both algebras must be over it")
@kernel_command
def coproduct(left: str, right: str, base_file: Optional[str]):
    """The coproduct A ⊗_S B with both injections."""
    A, B = load_salgebra(left), load_salgebra(right)
    if base_file is not None:
        base = BaseSemiring.finite(resolve_algebra(base_file))
        for salgebra in (A, B):
            if salgebra.base != base:
                raise click.UsageError(f"{salgebra.name} is over {salgebra.base.label}, not {base.label}")
    T = tensor_coproduct(A, B, load_settings())
    click.echo(format_algebra(T.result), nl=False)
    click.echo(format_map(T.left_injection), nl=False)
    click.echo(format_map(T.right_injection), nl=False)


@cli.command()
@click.argument("source")
@click.argument("target")
@click.argument("fmap")
@click.argument("gmap")
@kernel_command
def coeq(source: str, target: str, fmap: str, gmap: str):
    """Coequalizer of two parallel maps."""
    A, B = resolve_algebra(source), resolve_algebra(target)
    result = coequalizer(load_map(fmap, A, B), load_map(gmap, A, B))
    click.echo(format_algebra(result.algebra), nl=False)
    click.echo(format_map(result.projection), nl=False)


@cli.command("pushout")
@click.argument("zfile")
@click.argument("afile")
@click.argument("bfile")
@click.argument("fmap")
@click.argument("gmap")
@kernel_command
def pushout_cmd(zfile: str, afile: str, bfile: str, fmap: str, gmap: str):
    """Pushout of A <- Z -> B."""
    Z, A, B = resolve_algebra(zfile), resolve_algebra(afile), resolve_algebra(bfile)
    result = pushout(load_map(fmap, Z, A), load_map(gmap, Z, B), load_settings())
    click.echo(format_algebra(result.algebra), nl=False)
    click.echo(format_map(result.left_leg), nl=False)
    click.echo(format_map(result.right_leg), nl=False)


@cli.command()
@click.argument("diagram")
@kernel_command
def colimit(diagram: str):
    """Colimit of a finite non-empty diagram file."""
    result = colimit_diagram(load_diagram(diagram), load_settings())
    click.echo(format_algebra(result.algebra), nl=False)
    for leg in result.legs:
        click.echo(format_map(leg), nl=False)


@cli.command("enumerate")
@click.argument("n", type=int)
@click.option("--format", "fmt", type=FORMATS, default="text")
@kernel_command
def enumerate_cmd(n: int, fmt: str):
    """All commutative semirings of order N up to isomorphism."""
    catalog = enumerate_semirings(n, load_settings())
    _emit_frame(_catalog_frame(catalog), fmt, f"order {n}: {len(catalog)} semirings")


@cli.group()
def check():
    """Run a verification suite over the catalog of small semirings."""


def _suite_options(func):
    func = click.option("--format", "fmt", type=FORMATS, default="text")(func)
    func = click.option("--max-order", "max_order", type=int, default=None, help="Largest catalog order")(func)
    return func


@check.command("coreflection")
@_suite_options
@kernel_command
def check_coreflection(max_order: Optional[int], fmt: str):
    settings = load_settings()
    catalog = catalog_up_to(max_order or settings.max_order, settings)
    _emit_report(verify_coreflection_suite(catalog, settings=settings), fmt)


@check.command("closure")
@click.argument("flag", type=click.Choice([f.value for f in VarietyFlag]))
@click.option("--base", "base_file", default=None, help="Finite base for the coproducts")
@_suite_options
@kernel_command
def check_closure(flag: str, base_file: Optional[str], max_order: Optional[int], fmt: str):
    settings = load_settings()
    if max_order is not None:
        settings = load_settings(closure_max_order=max_order)
    catalog = catalog_up_to(settings.closure_max_order, settings)
    base = resolve_algebra(base_file) if base_file else None
    _emit_report(verify_closure_suite(catalog, VarietyFlag(flag), base=base, settings=settings), fmt)


@check.command("section3")
@_suite_options
@kernel_command
def check_section3(max_order: Optional[int], fmt: str):
    settings = load_settings()
    catalog = catalog_up_to(max_order or settings.max_order, settings)
    _emit_report(verify_section3_suite(catalog), fmt)


@check.command("universal")
@_suite_options
@kernel_command
def check_universal(max_order: Optional[int], fmt: str):
    settings = load_settings()
    if max_order is not None:
        settings = load_settings(closure_max_order=max_order)
    catalog = catalog_up_to(max(settings.closure_max_order, settings.cocone_max_order), settings)
    _emit_report(verify_universal_property_suite(catalog, settings=settings), fmt)


def cli_main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return its exit status instead of exiting."""
    try:
        result = cli.main(args=argv, prog_name="run_semiring_kernel.py", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        return 1
    except SystemExit as e:
        return int(e.code or 0)
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(cli_main())
