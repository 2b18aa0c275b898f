"""
Command-line surface: every verb prints one JSON document on standard output.

Exit codes: 0 on success, 1 on a domain error ({"error", "detail"} is printed),
2 on a usage error (unknown option, malformed expression, unknown type tag).

    python cli.py classify --type S --params alpha=-w --certificates
    python cli.py curve j --lambda 0
"""

import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

import click
import orjson
import typer

from core.config import settings
from core.exceptions import ExpressionError, TwistAlgError
from services.algebra_orchestrator import algebra_orchestrator

logger = logging.getLogger(__name__)

USAGE_CODES = {"expression_error", "unknown_type"}

app = typer.Typer(add_completion=False, no_args_is_help=True,
                  help="Twists of geometric quadratic algebras A(E, σ) over exact number field towers.")
catalog_app = typer.Typer(no_args_is_help=True, help="The eight catalog types with their groups Z(E) and G(E).")
curve_app = typer.Typer(no_args_is_help=True, help="Group law on the Hesse curve x^3 + y^3 + z^3 = 3λxyz.")
app.add_typer(catalog_app, name="catalog")
app.add_typer(curve_app, name="curve")

TypeOption = typer.Option(..., "--type", help="P, S, S', T, T', NC, CC or EC")
ParamsOption = typer.Option([], "--params", help="key=value, repeatable (alpha=-w, p=(1,1,-c), lambda=0)")
TowerOption = typer.Option(None, "--tower", help="Tower name or JSON file")
SeedOption = typer.Option(None, "--seed", help="Seed for sampled checks")


def _configure_logging() -> None:
    # Standard output carries the JSON document only.
    logging.basicConfig(level=settings.log_level,
                        format='%(levelname)s: %(asctime)s - %(name)s - %(message)s',
                        stream=sys.stderr)


def _dump(document: dict) -> None:
    typer.echo(orjson.dumps(document, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2).decode())


def _parse_params(items: List[str]) -> Dict[str, str]:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise typer.BadParameter(f"expected key=value, got {item!r}", param_hint="--params")
        params[key.strip()] = value.strip()
    return params


def _emit(producer: Callable[[], dict]) -> None:
    try:
        document = producer()
    except TwistAlgError as e:
        logger.error(f"{e.code}: {e.detail}")
        _dump(e.to_payload())
        raise typer.Exit(code=2 if isinstance(e, ExpressionError) or e.code in USAGE_CODES else 1)
    _dump(document)


@app.callback()
def main() -> None:
    _configure_logging()


@catalog_app.command("list")
def catalog_list() -> None:
    """Relations, point variety and Z(E), G(E) of every type at its default parameters."""
    _emit(algebra_orchestrator.catalog_list)


@catalog_app.command("show")
def catalog_show(type_: str = TypeOption, params: List[str] = ParamsOption,
                 tower: Optional[str] = TowerOption) -> None:
    parsed = _parse_params(params)
    _emit(lambda: algebra_orchestrator.catalog_show(type_, parsed, tower))


@app.command("pointvariety")
def point_variety(relations: Path = typer.Option(..., "--relations", exists=True, dir_okay=False,
                                                 help="JSON file {tower, relations, points}")) -> None:
    """Pencil determinant and σ of the relations in FILE."""
    try:
        document = orjson.loads(relations.read_bytes())
    except orjson.JSONDecodeError as e:
        raise typer.BadParameter(f"{relations} is not JSON: {e}", param_hint="--relations")
    _emit(lambda: algebra_orchestrator.point_variety(document))


@app.command("twist")
def twist(type_: str = TypeOption, phi: str = typer.Option(..., "--phi", help="e.g. diag(1,1,2)"),
          params: List[str] = ParamsOption, tower: Optional[str] = TowerOption,
          check_geometric: bool = typer.Option(False, "--check-geometric")) -> None:
    """Twisted relations (1 ⊗ φ^-1)R, optionally cross-checked against (E, τσ)."""
    parsed = _parse_params(params)
    _emit(lambda: algebra_orchestrator.twist(type_, phi, parsed, tower, check_geometric))


@app.command("classify")
def classify(type_: str = TypeOption, params: List[str] = ParamsOption, tower: Optional[str] = TowerOption,
             certificates: bool = typer.Option(False, "--certificates"), seed: Optional[int] = SeedOption) -> None:
    """Z(E,σ), M(E,σ) and N(E,σ) with the verification certificate."""
    parsed = _parse_params(params)
    _emit(lambda: algebra_orchestrator.classify(type_, parsed, tower, certificates, seed))


LambdaOption = typer.Option(..., "--lambda", help="λ of the Hesse curve")
PointOption = typer.Option(None, "--p", help="(a, b, c) on the curve")


@curve_app.command("add")
def curve_add(lam: str = LambdaOption, p: Optional[str] = PointOption,
              q: Optional[str] = typer.Option(None, "--q"), tower: Optional[str] = TowerOption) -> None:
    _emit(lambda: algebra_orchestrator.curve("add", lam, tower, p=p, q=q))


@curve_app.command("neg")
def curve_neg(lam: str = LambdaOption, p: Optional[str] = PointOption, tower: Optional[str] = TowerOption) -> None:
    _emit(lambda: algebra_orchestrator.curve("neg", lam, tower, p=p))


@curve_app.command("mul")
def curve_mul(lam: str = LambdaOption, p: Optional[str] = PointOption,
              n: int = typer.Option(..., "--n"), tower: Optional[str] = TowerOption) -> None:
    _emit(lambda: algebra_orchestrator.curve("mul", lam, tower, p=p, n=n))


@curve_app.command("torsion")
def curve_torsion(lam: str = LambdaOption, n: int = typer.Option(..., "--n", help="1, 2, 3 or 6"),
                  tower: Optional[str] = TowerOption) -> None:
    _emit(lambda: algebra_orchestrator.curve("torsion", lam, tower, n=n))


@curve_app.command("j")
def curve_j(lam: str = LambdaOption, tower: Optional[str] = TowerOption) -> None:
    _emit(lambda: algebra_orchestrator.curve("j", lam, tower))


@app.command("verify")
def verify(suite: str = typer.Option(..., "--suite", help="table1, table3, table4, lemma48 or groupaxioms"),
           seed: Optional[int] = SeedOption) -> None:
    """Run an acceptance suite and print its per-check certificate."""
    if suite not in algebra_orchestrator.suites():
        raise typer.BadParameter(f"unknown suite {suite!r}", param_hint="--suite")
    _emit(lambda: algebra_orchestrator.verify(suite, seed))


def run(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code instead of exiting."""
    command = typer.main.get_command(app)
    try:
        result = command.main(args=list(sys.argv[1:] if argv is None else argv),
                              prog_name="twistalg", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return 2
    except click.Abort:
        return 1
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(run())
