import pytest

from src.core.builders import one_tet_solid_torus
from src.core.errors import PreconditionError
from src.core.homology import homology
from src.core.moves import (
    barycentric_subdivide,
    cone_boundary,
    edge_half,
    fill_three_faces,
    layer_on_boundary_edge,
)
from src.core.skeleton import EDGES, Skeleton, validate


def _topology(tri):
    report = validate(tri)
    return (
        report.euler_characteristic,
        report.orientable,
        report.valid_manifold,
        sorted(c.describe() for c in report.boundary_components),
        homology(tri, 1),
    )


def _half_classes(tri, sk):
    halves = set()
    for t in range(tri.tet_count):
        for i, j in EDGES:
            halves.add(sk.edge_of[edge_half(t, i, j)][0])
            halves.add(sk.edge_of[edge_half(t, j, i)][0])
    return halves


def test_subdivision_of_closed_input(sphere):
    fine = barycentric_subdivide(sphere)
    assert fine.tet_count == 24 * sphere.tet_count
    assert _topology(fine) == _topology(sphere)


def test_subdivision_of_solid_torus():
    tri = one_tet_solid_torus().triangulation
    fine = barycentric_subdivide(tri)
    assert fine.tet_count == 24
    assert _topology(fine) == _topology(tri)
    assert [c.describe() for c in validate(fine).boundary_components] == ["torus"]


def test_new_interior_edges_have_links_of_four_or_six(sphere):
    fine = barycentric_subdivide(sphere)
    sk = Skeleton(fine)
    halves = _half_classes(sphere, sk)
    lengths = {len(cls) for k, cls in enumerate(sk.edge_classes) if k not in halves}
    assert lengths == {4, 6}


def _link_growth(tri, rounds):
    """(link length of each tet-edge, link length of its half after rounds subdivisions)."""
    sk = Skeleton(tri)
    edges = [(t, i, j) for t in range(tri.tet_count) for i, j in EDGES]
    current, path = tri, list(edges)
    for _ in range(rounds):
        current = barycentric_subdivide(current)
        path = [edge_half(*edge) for edge in path]
    fine = Skeleton(current)
    return [
        (len(sk.edge_classes[sk.edge_of[edge][0]]), len(fine.edge_classes[fine.edge_of[half][0]]))
        for edge, half in zip(edges, path)
    ]


def test_halves_double_edge_links():
    tri = one_tet_solid_torus().triangulation
    for before, after in _link_growth(tri, 2):
        assert after == 4 * before, f"link {before} became {after}"


def test_three_subdivisions_multiply_links_by_eight(sphere):
    growth = _link_growth(sphere, 3)
    assert len(growth) == 12
    for before, after in growth:
        assert before == 2
        assert after == 8 * before, f"link {before} became {after}"


def test_layering_keeps_the_solid_torus():
    tri = one_tet_solid_torus().triangulation
    k = Skeleton(tri).boundary_edge_classes()[0]
    layered = layer_on_boundary_edge(tri, k)
    assert layered.tet_count == 2
    assert _topology(layered)[1:] == _topology(tri)[1:]


def test_layering_needs_a_boundary_edge(sphere):
    with pytest.raises(PreconditionError):
        layer_on_boundary_edge(sphere, 0)


def test_fill_needs_boundary_valence_three():
    tri = one_tet_solid_torus().triangulation
    with pytest.raises(PreconditionError):
        fill_three_faces(tri, 0)


def test_cone_boundary_closes_a_ball(ball):
    closed = cone_boundary(ball)
    assert closed.tet_count == 5
    assert closed.is_closed()
    report = validate(closed)
    assert report.valid_manifold
    assert report.euler_characteristic == 0
    assert homology(closed, 1).is_trivial()
