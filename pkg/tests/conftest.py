"""Shared fixtures: small grids keep the unit tests fast; the default
grids are reserved for the acceptance suite."""

import pytest

from discnorm import EvalGrids, default_a_grid, default_corpus, make_bidisc_rule, make_disc_rule


@pytest.fixture(scope="session")
def small_disc():
    return make_disc_rule(24, 32, 3.0, 3.14159 / 32)


@pytest.fixture(scope="session")
def small_bidisc():
    return make_bidisc_rule(12, 16, 3.0)


@pytest.fixture(scope="session")
def small_grids(small_disc, small_bidisc):
    return EvalGrids(
        disc=small_disc,
        bidisc=small_bidisc,
        a_grid=default_a_grid(),
        circle_count=64,
    )


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()
