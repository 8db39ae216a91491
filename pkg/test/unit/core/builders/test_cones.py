import pytest

from src.core.builders import (
    base_surface,
    cone_annulus_to_d2xi,
    cone_boundary,
    one_tet_solid_torus,
    simplicial_annulus,
    truncate_ideal,
)
from src.core.builders.cones import MAX_TETS_PER_TRUNCATED
from src.core.errors import PreconditionError
from src.core.homology import AbelianGroup, homology, ideal_h1
from src.core.skeleton import validate
from src.core.surface import subdivide_surface
from src.core.triangulation import VertexPerm


def test_coned_annuli_are_balls():
    for k in range(3, 31):
        annulus = simplicial_annulus(k)
        tri, report = cone_annulus_to_d2xi(annulus)
        boundary_edges = len(annulus.boundary_edges())
        assert tri.tet_count == annulus.triangle_count + boundary_edges
        assert tri.tet_count <= 3 * annulus.triangle_count
        assert report.tets_used == tri.tet_count
        assert [c.describe() for c in validate(tri).boundary_components] == ["sphere"]


def test_non_simplicial_annulus_is_subdivided_first():
    annulus = subdivide_surface(base_surface(True, 0, 2))
    assert not annulus.is_simplicial()
    tri, _ = cone_annulus_to_d2xi(annulus)
    assert homology(tri, 1).is_trivial()


def test_coning_needs_an_annulus():
    with pytest.raises(PreconditionError):
        cone_annulus_to_d2xi(base_surface(True, 0, 1))
    with pytest.raises(PreconditionError):
        cone_annulus_to_d2xi(base_surface(True, 0, 2))


def test_truncating_the_coned_solid_torus():
    ideal = cone_boundary(one_tet_solid_torus().triangulation)
    assert ideal.tet_count == 3
    tri, report = truncate_ideal(ideal)
    assert tri.tet_count <= MAX_TETS_PER_TRUNCATED * ideal.tet_count
    assert report.tets_used == tri.tet_count
    checked = validate(tri)
    assert checked.valid_manifold
    # the old vertex has a sphere link, the cone point a torus link
    assert sorted(c.describe() for c in checked.boundary_components) == ["sphere", "torus"]
    assert homology(tri, 1) == AbelianGroup(1) == ideal_h1(ideal)


def test_truncation_needs_a_closed_complex(ball):
    with pytest.raises(PreconditionError):
        truncate_ideal(ball)


def test_truncating_a_once_cusped_ideal_triangulation(figure_eight):
    order, perms = [1, 0], [VertexPerm((2, 0, 3, 1)), VertexPerm((0, 1, 3, 2))]
    for ideal in (figure_eight, figure_eight.mirror(), figure_eight.relabel(order, perms)):
        tri, report = truncate_ideal(ideal)
        assert tri.tet_count <= MAX_TETS_PER_TRUNCATED * ideal.tet_count
        assert report.tets_used == tri.tet_count
        checked = validate(tri)
        assert checked.valid_manifold
        assert checked.orientable
        assert [c.describe() for c in checked.boundary_components] == ["torus"]
        assert homology(tri, 1) == ideal_h1(ideal) == AbelianGroup(1)
