from __future__ import annotations

from typing import Tuple

from src.core.builders.boundary import BuildReport
from src.core.builders.bundle import circle_bundle, reduce_boundary_torus
from src.core.builders.solid_torus import dehn_fill
from src.core.builders.surfaces import base_surface
from src.core.errors import VerificationError
from src.core.homology import homology
from src.core.seifert import SeifertData, expected_h1, format_seifert, upper_bound
from src.core.skeleton import validate
from src.core.triangulation import Triangulation
from src.helpers.logger import get_logger

logger = get_logger(__name__)


def build_sfs(d: SeifertData) -> Tuple[Triangulation, BuildReport]:
    """Triangulate the bounded Seifert fibred space d.

    The base surface gets one extra boundary circle per exceptional fibre;
    the circle bundle over it is built from prisms and each extra boundary
    torus is closed by a layered solid torus along p*section + q*fibre.
    """
    n = len(d.fibres)
    # the two-vertex Mobius boundary is the torus that needs reducing before a fill
    one_vertex = d.orientable_base or d.a != 1
    surface = base_surface(d.orientable_base, d.a, d.b + n, one_vertex_boundary=one_vertex)
    report = BuildReport(budget=upper_bound(d))

    tri, boundaries = circle_bundle(surface, twisted=not d.orientable_base)
    report.add(f"circle bundle over {surface.triangle_count} triangles", tri.tet_count)

    order = sorted(range(len(boundaries)), key=lambda k: (boundaries[k].is_one_vertex(), k))
    for i, (k, fibre) in enumerate(zip(order, d.fibres), start=1):
        tri, boundary, reduced = reduce_boundary_torus(tri, boundaries[k].rebind(tri))
        report.extend(reduced, prefix=f"fibre {i} ")
        tri, filled = dehn_fill(tri, boundary, fibre)
        report.add(f"fibre {i} fill {fibre.p}/{fibre.q}", filled.tets_used)
        logger.debug("fibre %d filled, %d tets so far", i, tri.tet_count)

    verify_sfs(tri, d, report)
    logger.info("built %s with %d tets (bound %d)", format_seifert(d), tri.tet_count, report.budget)
    return tri, report


def verify_sfs(tri: Triangulation, d: SeifertData, report: BuildReport) -> None:
    if report.tets_used != tri.tet_count:
        raise VerificationError("build ledger", f"stages add up to {report.tets_used}, triangulation has {tri.tet_count}")
    if not report.within_budget():
        raise VerificationError("tetrahedron bound", f"{report.tets_used} > {report.budget}")
    checked = validate(tri)
    if not checked.valid_manifold:
        raise VerificationError("valid manifold", "; ".join(checked.violations))
    if not checked.orientable:
        raise VerificationError("orientable total space")
    kinds = [c.describe() for c in checked.boundary_components]
    if kinds != ["torus"] * d.b:
        raise VerificationError("boundary tori", f"expected {d.b} tori, found {kinds}")
    h1, wanted = homology(tri, 1), expected_h1(d)
    if h1 != wanted:
        raise VerificationError("homology cross-check", f"H1 = {h1}, predicted {wanted}")
