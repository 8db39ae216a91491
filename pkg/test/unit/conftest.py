import pytest

from src.core.triangulation import Triangulation, from_text

# two tetrahedra glued by the identity on every face: the 3-sphere
SPHERE_TEXT = """tri 2
0 0 : 1 0 0123
0 1 : 1 1 0123
0 2 : 1 2 0123
0 3 : 1 3 0123
1 0 : 0 0 0123
1 1 : 0 1 0123
1 2 : 0 2 0123
1 3 : 0 3 0123
"""


@pytest.fixture
def sphere_text() -> str:
    return SPHERE_TEXT


@pytest.fixture
def sphere() -> Triangulation:
    return from_text(SPHERE_TEXT)


@pytest.fixture
def ball() -> Triangulation:
    return Triangulation(1, {})


# two tetrahedra with one vertex whose link is a torus: the ideal
# triangulation of the figure-eight knot complement
FIGURE_EIGHT_TEXT = """tri 2
0 0 : 1 0 0132
0 1 : 1 2 1230
0 2 : 1 1 2310
0 3 : 1 3 2103
1 0 : 0 0 0132
1 1 : 0 2 3201
1 2 : 0 1 3012
1 3 : 0 3 2103
"""


@pytest.fixture
def figure_eight() -> Triangulation:
    return from_text(FIGURE_EIGHT_TEXT)
