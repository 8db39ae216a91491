import pytest

from src.core.errors import StructuralError
from src.core.surface import (
    SurfaceBuilder,
    perm3_from_pairs,
    perm3_inverse,
    perm3_sign,
    subdivide_surface,
    surface_from_names,
)

# square A B C D split along A-C
SQUARE = [("A", "B", "C"), ("A", "C", "D")]


def test_perm3_helpers():
    pi = perm3_from_pairs({0: 1, 1: 2, 2: 0})
    assert pi == (1, 2, 0)
    assert perm3_inverse(pi) == (2, 0, 1)
    assert perm3_sign(pi) == 1
    assert perm3_sign((1, 0, 2)) == -1


def test_square_is_a_simplicial_disc():
    disc = surface_from_names(SQUARE)
    summary = disc.summary()
    assert summary.describe() == "disc"
    assert summary.euler_characteristic == 1
    assert disc.is_simplicial()
    walks = disc.boundary_walks()
    assert len(walks) == 1 and len(walks[0]) == 4


def test_boundary_walk_is_connected():
    disc = surface_from_names(SQUARE)
    index = disc.vertex_index()
    walk = disc.boundary_walks()[0]
    for (t, u, v), (t2, u2, _) in zip(walk, walk[1:] + walk[:1]):
        assert index[(t, v)] == index[(t2, u2)]


def test_octahedron_is_a_sphere():
    top, bottom = "N", "S"
    ring = ["a", "b", "c", "d"]
    triangles = []
    for i in range(4):
        j = (i + 1) % 4
        triangles.append((top, ring[i], ring[j]))
        triangles.append((bottom, ring[j], ring[i]))
    sphere = surface_from_names(triangles)
    assert sphere.summary().describe() == "sphere"
    assert sphere.boundary_walks() == []
    assert sphere.is_orientable()


def test_three_triangles_on_one_side():
    with pytest.raises(StructuralError):
        surface_from_names([("A", "B", "C"), ("A", "B", "D"), ("A", "B", "E")])
    with pytest.raises(StructuralError):
        surface_from_names([("A", "A", "B")])


def test_folded_disc_is_not_simplicial():
    b = SurfaceBuilder()
    t = b.add_triangle()
    b.glue_sides(t, (0, 2), t, (1, 2))
    disc = b.build()
    assert disc.summary().describe() == "disc"
    assert not disc.is_simplicial()


def test_subdivision_keeps_topology():
    b = SurfaceBuilder()
    t = b.add_triangle()
    b.glue_sides(t, (0, 2), t, (1, 2))
    fine = subdivide_surface(b.build())
    assert fine.triangle_count == 6
    assert fine.summary().describe() == "disc"

    square = subdivide_surface(surface_from_names(SQUARE))
    assert square.triangle_count == 12
    assert square.is_simplicial()
    assert len(square.boundary_walks()[0]) == 8

