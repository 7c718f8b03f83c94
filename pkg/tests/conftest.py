"""Shared fixtures: the Laguerre measure systems used across the suite."""

from fractions import Fraction as F

import pytest

from bimop import (
    Laguerre,
    MeasureSystem,
    ProductSystem,
    TensorMeasure,
    UniMeasureSystem,
)

# Exponents of the four Laguerre weights: x^1, x^{11/5} in x and
# y^{23/10}, y^{17/5} in y.
X_ALPHAS = (F(1), F(11, 5))
Y_ALPHAS = (F(23, 10), F(17, 5))

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def make_xsystem(mode="exact"):
    return UniMeasureSystem(families=tuple(Laguerre(a) for a in X_ALPHAS), mode=mode)


def make_ysystem(mode="exact"):
    return UniMeasureSystem(families=tuple(Laguerre(a) for a in Y_ALPHAS), mode=mode)


def make_product_system(mode="exact"):
    return ProductSystem.build(make_xsystem(mode), make_ysystem(mode))


def make_pair_system(mode="exact"):
    """Two tensor measures: (x e^{-x}) x (y^{23/10} e^{-y}) and its sibling."""
    return MeasureSystem(measures=(
        TensorMeasure(Laguerre(X_ALPHAS[0]), Laguerre(Y_ALPHAS[0])),
        TensorMeasure(Laguerre(X_ALPHAS[1]), Laguerre(Y_ALPHAS[1]))), mode=mode)


@pytest.fixture(scope="session")
def psys():
    return make_product_system()


@pytest.fixture(scope="session")
def quad():
    """The four-measure tensor system (mu_i x phi_j, row-major)."""
    return make_product_system().bivariate


@pytest.fixture(scope="session")
def duo():
    return make_pair_system()


@pytest.fixture()
def duo_float():
    return make_pair_system(mode="float64")
