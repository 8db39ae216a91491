import unittest

import pytest

from src.core.builders import base_surface, circle_bundle, reduce_boundary_torus
from src.core.builders.bundle import TETS_PER_PRISM
from src.core.errors import PreconditionError
from src.core.homology import AbelianGroup, homology
from src.core.skeleton import validate


def _kinds(tri):
    return [c.describe() for c in validate(tri).boundary_components]


def test_product_over_disc_is_a_solid_torus():
    tri, boundaries = circle_bundle(base_surface(True, 0, 1), twisted=False)
    assert tri.tet_count == TETS_PER_PRISM
    assert validate(tri).valid_manifold
    assert _kinds(tri) == ["torus"]
    assert homology(tri, 1) == AbelianGroup(1)
    assert len(boundaries) == 1
    labeled = boundaries[0]
    assert labeled.vectors["mu"] == (1, 0)
    assert labeled.vectors["lambda"] == (0, 1)
    labeled.check()


def test_product_over_annulus():
    tri, boundaries = circle_bundle(base_surface(True, 0, 2), twisted=False)
    assert tri.tet_count == 2 * TETS_PER_PRISM
    assert _kinds(tri) == ["torus", "torus"]
    assert homology(tri, 1) == AbelianGroup(2)
    assert all(b.is_one_vertex() for b in boundaries)


def test_twisted_bundle_over_mobius_band():
    tri, boundaries = circle_bundle(base_surface(False, 1, 1), twisted=True)
    assert tri.tet_count == TETS_PER_PRISM * base_surface(False, 1, 1).triangle_count
    report = validate(tri)
    assert report.valid_manifold
    assert report.orientable, "the twisted bundle over a nonorientable base is orientable"
    assert _kinds(tri) == ["torus"]
    assert homology(tri, 1) == AbelianGroup(1, (2,))


def test_untwisted_bundle_over_mobius_band_is_nonorientable():
    tri, _ = circle_bundle(base_surface(False, 1, 1), twisted=False)
    assert not validate(tri).orientable


def test_bundle_preconditions():
    with pytest.raises(PreconditionError):
        circle_bundle(base_surface(True, 0, 1), twisted=True)


class TestReduceBoundaryTorus(unittest.TestCase):
    def setUp(self):
        surface = base_surface(False, 1, 1, one_vertex_boundary=False)
        self.tri, self.boundaries = circle_bundle(surface, twisted=True)

    def test_two_vertex_boundary(self):
        self.assertEqual(len(self.boundaries), 1)
        self.assertFalse(self.boundaries[0].is_one_vertex())
        self.assertEqual(len(self.boundaries[0].faces()), 4)

    def test_reduction_uses_three_tets(self):
        reduced, labeled, report = reduce_boundary_torus(self.tri, self.boundaries[0])
        self.assertEqual(report.tets_used, 3)
        self.assertEqual(reduced.tet_count, self.tri.tet_count + 3)
        self.assertTrue(labeled.is_one_vertex())
        labeled.check()
        self.assertEqual(homology(reduced, 1), homology(self.tri, 1))
        self.assertEqual(_kinds(reduced), ["torus"])

    def test_one_vertex_torus_is_left_alone(self):
        tri, boundaries = circle_bundle(base_surface(True, 0, 1), twisted=False)
        same, labeled, report = reduce_boundary_torus(tri, boundaries[0])
        self.assertIs(same, tri)
        self.assertEqual(report.tets_used, 0)
