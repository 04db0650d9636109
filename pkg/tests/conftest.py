"""Shared fixtures: a few standard bases, built once per session."""

import pytest

from spectraset import PUBasis, WarpParams


@pytest.fixture(scope="session")
def basis5():
    return PUBasis.build(5)


@pytest.fixture(scope="session")
def basis7():
    return PUBasis.build(7)


@pytest.fixture(scope="session")
def basis7_warped():
    return PUBasis.build(7, WarpParams(0.66, 0.39))


@pytest.fixture(scope="session")
def basis9_warped():
    return PUBasis.build(9, WarpParams(0.66, 0.39))


@pytest.fixture(scope="session")
def basis11_warped():
    return PUBasis.build(11, WarpParams(0.66, 0.39))
