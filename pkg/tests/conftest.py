from pathlib import Path

import pytest

from polystab.convex import PolyhedralFunction, indicator
from polystab.io import parse_problem
from polystab.polyhedron import HPolyhedron
from polystab.stability import ParametricProblem, PolyhedralMap

FIXTURES = Path(__file__).parent / "fixtures"


def H(dim, eq=(), ineq=()):
    return HPolyhedron.from_constraints(dim, eq, ineq)


def abs_graph_map():
    """gph G = {(x, y) : y >= x, y >= -x}."""
    return PolyhedralMap(1, 1, H(2, ineq=[((1, -1), 0), ((-1, -1), 0)]))


@pytest.fixture
def running_example():
    """phi(x, y) = y over gph G = {y >= |x|}, so mu = |x|."""
    return ParametricProblem(PolyhedralFunction.affine((0, 1)), abs_graph_map())


@pytest.fixture
def indicator_example():
    """phi = indicator of {x <= 0} x R, G = R everywhere, so mu = indicator of x <= 0."""
    phi = indicator(H(2, ineq=[((1, 0), 0)]))
    return ParametricProblem(phi, PolyhedralMap(1, 1, H(2)))


@pytest.fixture
def fixture_path():
    return FIXTURES


@pytest.fixture
def running_example_json():
    return parse_problem((FIXTURES / "running_example.json").read_text())
