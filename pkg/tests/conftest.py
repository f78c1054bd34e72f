"""Shared fixtures: a few censuses are expensive enough to build once."""

import pytest

from orbitstat import build_census, builtin_source


@pytest.fixture(scope="session")
def ff2_source():
    return builtin_source("FF", q=2)


@pytest.fixture(scope="session")
def e32_source():
    return builtin_source("E", p=3, n=2)


@pytest.fixture(scope="session")
def ff2_census(ff2_source):
    return build_census(ff2_source, 60)


@pytest.fixture(scope="session")
def e32_census(e32_source):
    return build_census(e32_source, 40)


@pytest.fixture(scope="session")
def per13_census():
    return build_census(builtin_source("periodic", values=(1, 3)), 16)
