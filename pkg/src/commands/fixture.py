from pathlib import Path

import click

from src.fixtures import make_fixture, make_fixture_benchmark, write_fixture


def make_fixture_command(
    out_dir: Path, records: int, pairs: int, gsm: int, k2a: int, seed: int
):
    fixture = make_fixture(n_records=records, n_pairs=pairs, seed=seed)
    benchmark = make_fixture_benchmark(fixture.pairs, n_gsm=gsm, n_k2a=k2a, seed=seed)
    for name, path in write_fixture(fixture, out_dir, benchmark).items():
        click.echo(f"{name}: {path}")
