import pytest

from src.core.builders import base_surface, simplicial_annulus
from src.core.errors import PreconditionError


@pytest.mark.parametrize(
    "orientable, a, b, triangles",
    [
        (True, 0, 1, 1),
        (True, 0, 2, 2),
        (True, 0, 3, 5),
        (False, 1, 1, 3),
        (True, 2, 1, 5),
        (False, 2, 1, 5),
        (False, 3, 2, 10),
        (True, 4, 2, 12),
    ],
)
def test_base_surfaces(orientable, a, b, triangles):
    surface = base_surface(orientable, a, b)
    summary = surface.summary()
    assert summary.euler_characteristic == 2 - a - b
    assert summary.orientable == orientable
    assert summary.boundary_count == b
    assert surface.triangle_count == triangles
    assert all(len(walk) == 1 for walk in surface.boundary_walks()), "every boundary circle has one vertex"


def test_mobius_band_with_two_vertex_boundary():
    band = base_surface(False, 1, 1, one_vertex_boundary=False)
    assert band.triangle_count == 2
    assert band.summary().describe() == "Mobius band"
    assert [len(walk) for walk in band.boundary_walks()] == [2]


def test_invalid_bases():
    for args in ((True, 1, 1), (False, 0, 1), (True, 0, 0), (True, -2, 1)):
        with pytest.raises(PreconditionError):
            base_surface(*args)


def test_simplicial_annuli():
    for k in range(3, 31):
        annulus = simplicial_annulus(k)
        assert annulus.triangle_count == 2 * k
        assert annulus.summary().describe() == "annulus"
        assert annulus.is_simplicial()
        assert sorted(len(walk) for walk in annulus.boundary_walks()) == [k, k]
    with pytest.raises(PreconditionError):
        simplicial_annulus(2)
