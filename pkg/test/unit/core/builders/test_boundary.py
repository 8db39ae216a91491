import pytest

from src.core.builders import BuildReport, one_tet_solid_torus, propagate
from src.core.builders.boundary import det, vector_of
from src.core.errors import BuildError
from src.core.farey import FareyTriangle
from src.core.skeleton import Skeleton


def test_build_report_ledger():
    report = BuildReport(budget=5)
    report.add("one-tet solid torus", 1)
    inner = BuildReport()
    inner.add("layer", 2)
    report.extend(inner, prefix="fibre 1 ")
    assert report.tets_used == 3
    assert report.within_budget()
    assert report.lines() == [
        "stage one-tet solid torus: 1 tets",
        "stage fibre 1 layer: 2 tets",
        "tets used: 3",
        "budget: 5",
    ]
    assert report.text().endswith("budget: 5\n")
    report.add("too many", 3)
    assert not report.within_budget()


def test_det():
    assert det((1, 0), (0, 1)) == 1
    assert det((0, 1), (1, 0)) == -1
    assert det((2, 3), (4, 6)) == 0


def test_propagate_recovers_the_third_edge():
    solid = one_tet_solid_torus()
    tri, labeled = solid.triangulation, solid.boundary
    seeds = {labeled.edges["mu"]: labeled.vectors["mu"], labeled.edges["lambda"]: labeled.vectors["lambda"]}
    vectors = propagate(tri, seeds)
    assert len(vectors) == 3
    sk = Skeleton(tri)
    assert vector_of(sk, vectors, labeled.edges["diag"]) == labeled.vectors["diag"]
    t, i, j = labeled.edges["mu"]
    mu = labeled.vectors["mu"]
    assert vector_of(sk, vectors, (t, j, i)) == (-mu[0], -mu[1])


def test_propagate_needs_two_independent_seeds():
    solid = one_tet_solid_torus()
    labeled = solid.boundary
    with pytest.raises(BuildError):
        propagate(solid.triangulation, {labeled.edges["mu"]: (1, 2)})
    t, i, j = labeled.edges["mu"]
    with pytest.raises(BuildError):
        propagate(solid.triangulation, {(t, i, j): (1, 2), (t, j, i): (1, 2)})


def test_labeled_boundary_of_one_tet_torus():
    labeled = one_tet_solid_torus().boundary
    assert labeled.is_one_vertex()
    assert labeled.component == 0
    assert isinstance(labeled.triangle(), FareyTriangle)
    a, b = labeled.basis_labels()
    assert det(labeled.vectors[a], labeled.vectors[b]) == 1
    assert set(labeled.ledger) == {"mu", "lambda", "diag"}
