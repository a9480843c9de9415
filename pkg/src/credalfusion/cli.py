"""Command line front-end.

    credalfusion run --model model.json [--seed N] [--decimals N] [--pretty]
    credalfusion check --model model.json
"""

import sys

import click

from .errors import CredalError
from .model import load_model
from .runner import QueryFailed, Session, render


def _load(path):
    try:
        return load_model(path)
    except CredalError as exc:
        click.echo(f"error: {exc.code}: {exc}", err=True)
        sys.exit(exc.exit_status)


@click.group()
def main():
    """Upper and lower probabilities from credal sets and likelihood evidence."""


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", default=0, show_default=True, type=int, help="Default seed for verify queries.")
@click.option("--decimals", default=4, show_default=True, type=click.IntRange(0, 17))
@click.option("--pretty", is_flag=True, help="Align columns instead of tab-separating them.")
def run(model_path, seed, decimals, pretty):
    """Run every query in a model file."""
    model = _load(model_path)
    session = Session(model, seed=seed)
    try:
        blocks = session.run()
    except QueryFailed as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(exc.cause.exit_status)
    click.echo(render(blocks, decimals=decimals, pretty=pretty), nl=False)


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
def check(model_path):
    """Parse and validate a model file without running it."""
    model = _load(model_path)
    click.echo(
        f"ok: {len(model.frame)} outcomes, {len(model.priors)} priors, "
        f"{len(model.evidence)} evidence, {len(model.queries)} queries"
    )


if __name__ == "__main__":
    main()
