from src.core.skeleton import (
    Skeleton,
    boundary_component_surfaces,
    face_vertices,
    oriented_edge,
    tet_orientation,
    validate,
)
from src.core.triangulation import TriangulationBuilder, VertexPerm


def test_face_and_edge_helpers():
    assert face_vertices(2) == (0, 1, 3)
    assert oriented_edge(0, 2, 1) == ((0, 1, 2), -1)
    assert oriented_edge(0, 1, 2) == ((0, 1, 2), 1)


def test_sphere_orbits(sphere):
    report = validate(sphere)
    assert report.tet_count == 2
    assert (len(report.vertex_classes), len(report.edge_classes), len(report.face_classes)) == (4, 6, 4)
    assert report.euler_characteristic == 0
    assert report.orientable
    assert report.valid_manifold
    assert report.boundary_components == []
    assert set(report.edge_link_lengths.values()) == {2}
    assert all(link.describe() == "sphere" for link in report.vertex_links)


def test_single_tetrahedron_is_a_ball(ball):
    report = validate(ball)
    assert report.euler_characteristic == 1
    assert report.valid_manifold
    assert [c.describe() for c in report.boundary_components] == ["sphere"]
    assert all(link.describe() == "disc" for link in report.vertex_links)
    assert "boundary: sphere" in report.lines()


def test_boundary_component_surfaces(ball):
    parts = boundary_component_surfaces(ball)
    assert len(parts) == 1
    surface, triangles = parts[0]
    assert surface.triangle_count == 4
    assert sorted(triangles) == [0, 1, 2, 3]


def test_edge_identified_with_itself_reversed():
    b = TriangulationBuilder(1)
    b.glue(0, 3, 0, VertexPerm((1, 0, 3, 2)))
    sk = Skeleton(b.build())
    assert sk.invalid_edges, "edge 0-1 is glued to 1-0"
    k, _ = sk.edge_class_of(0, 0, 1)
    assert k in sk.invalid_edges


def test_edge_classes_and_signs(sphere):
    sk = Skeleton(sphere)
    k, s = sk.edge_class_of(0, 0, 1)
    assert sk.edge_class_of(1, 0, 1) == (k, s)
    assert sk.edge_class_of(1, 1, 0) == (k, -s)
    assert len(sk.boundary_edge_classes()) == 0


def test_orientation(sphere):
    assert tet_orientation(sphere) == [1, -1]
    b = TriangulationBuilder(1)
    b.glue(0, 3, 0, VertexPerm((1, 0, 3, 2)))
    assert tet_orientation(b.build()) is None


def test_torus_vertex_link_is_not_a_manifold(figure_eight):
    report = validate(figure_eight)
    assert not report.valid_manifold
    assert report.violations == ["vertex 0 link is a torus"]
    assert "violation: vertex 0 link is a torus" in report.lines()
    assert "valid manifold: no" in report.lines()
    assert report.orientable
    assert report.euler_characteristic == 1
    assert sorted(report.edge_link_lengths.values()) == [6, 6]
    assert report.boundary_components == []
