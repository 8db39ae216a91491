from __future__ import annotations

from typing import Dict, List, Tuple

from src.core.builders.assembler import NamedAssembler
from src.core.builders.boundary import BuildReport
from src.core.errors import BuildError, PreconditionError, VerificationError
from src.core.homology import homology
from src.core.skeleton import Skeleton, face_vertices, validate
from src.core.surface import SurfaceTriangulation, subdivide_surface
from src.core.triangulation import Triangulation
from src.helpers.logger import get_logger

logger = get_logger(__name__)

MAX_TETS_PER_TRUNCATED = 14


def _is_annulus(surface: SurfaceTriangulation) -> bool:
    s = surface.summary()
    return s.connected and s.orientable and s.euler_characteristic == 0 and s.boundary_count == 2


def cone_annulus_to_d2xi(annulus: SurfaceTriangulation) -> Tuple[Triangulation, BuildReport]:
    """D^2 x I whose boundary contains the annulus as the vertical part.

    Each triangle is coned to a centre point and each boundary edge to the
    centre and to a cap point of its own boundary circle.
    """
    if not _is_annulus(annulus):
        raise PreconditionError(f"expected an annulus, got a {annulus.summary().describe()}")
    if not annulus.is_simplicial():
        annulus = subdivide_surface(annulus)
        logger.debug("annulus was not simplicial, subdivided to %d triangles", annulus.triangle_count)
        if not annulus.is_simplicial():
            raise PreconditionError("the annulus is not simplicial after one subdivision")

    index = annulus.vertex_index()
    boundary_edges = annulus.boundary_edges()
    if len(boundary_edges) > 2 * annulus.triangle_count:
        raise VerificationError("boundary edge count", f"{len(boundary_edges)} > 2 x {annulus.triangle_count}")

    asm = NamedAssembler()
    centre = "c"
    for t in range(annulus.triangle_count):
        asm.add_tet([index[(t, 0)], index[(t, 1)], index[(t, 2)], centre])
    for k, walk in enumerate(annulus.boundary_walks()):
        for t, u, v in walk:
            asm.add_tet([index[(t, u)], index[(t, v)], centre, ("cap", k)])
    asm.auto_glue()
    tri = asm.build()

    report = BuildReport(budget=3 * annulus.triangle_count)
    report.add("cone triangles", annulus.triangle_count)
    report.add("cone boundary edges", len(boundary_edges))
    checked = validate(tri)
    kinds = [c.describe() for c in checked.boundary_components]
    if not checked.valid_manifold or kinds != ["sphere"] or checked.euler_characteristic != 1:
        raise VerificationError("3-ball", f"coned annulus gave boundary {kinds}, chi {checked.euler_characteristic}")
    if not homology(tri, 1).is_trivial():
        raise VerificationError("3-ball", "H1 is not trivial")
    if not report.within_budget():
        raise VerificationError("coning budget", f"{report.tets_used} > {report.budget}")
    return tri, report


def _hexagon(t: int, f: int) -> List[Tuple[int, int, int]]:
    a, b, c = face_vertices(f)
    return [(t, a, b), (t, b, a), (t, b, c), (t, c, b), (t, c, a), (t, a, c)]


def _fan(points: List) -> List[Tuple]:
    return [(points[0], points[i], points[i + 1]) for i in range(1, 5)]


def truncate_ideal(tri: Triangulation) -> Tuple[Triangulation, BuildReport]:
    """Material triangulation of the manifold an ideal triangulation describes.

    Point (t, i, j) sits on edge i-j of tetrahedron t next to vertex i. Each
    truncated tetrahedron is cut along a fan of every hexagonal face and
    then coned from a point of largest valence.
    """
    if not tri.is_closed():
        raise PreconditionError("an ideal triangulation has no boundary faces")
    sk = Skeleton(tri)
    if sk.invalid_edges:
        raise PreconditionError(f"edges {sorted(sk.invalid_edges)} are identified with themselves in reverse")

    triangles: Dict[int, List[Tuple]] = {t: [] for t in range(tri.tet_count)}
    crossings = []
    for (t, f), (t2, f2, sigma) in sorted(tri.gluings.items()):
        if (t2, f2) < (t, f):
            continue
        fan = _fan(_hexagon(t, f))

        def image(p, t2=t2, sigma=sigma):
            return (t2, sigma(p[1]), sigma(p[2]))

        triangles[t].extend(fan)
        triangles[t2].extend(tuple(image(p) for p in face) for face in fan)
        crossings.append((fan, image))
    for t in range(tri.tet_count):
        for i in range(4):
            triangles[t].append(tuple((t, i, j) for j in range(4) if j != i))

    asm = NamedAssembler()
    report = BuildReport(budget=MAX_TETS_PER_TRUNCATED * tri.tet_count)
    for t in range(tri.tet_count):
        valence: Dict[Tuple[int, int, int], int] = {}
        for face in triangles[t]:
            for p in face:
                valence[p] = valence.get(p, 0) + 1
        apex = min(valence, key=lambda p: (-valence[p], p))
        if valence[apex] < 6:
            raise BuildError(f"truncated tetrahedron {t} has no point of valence 6")
        cone = [face for face in triangles[t] if apex not in face]
        for face in cone:
            asm.add_tet([apex, *face])
        report.add(f"truncated tetrahedron {t}", len(cone))
    asm.auto_glue()

    free = asm.free_faces()
    for fan, image in crossings:
        for face in fan:
            mapping = {p: image(p) for p in face}
            here, there = free.pop(frozenset(face)), free.pop(frozenset(mapping.values()))
            asm.glue_by_names(here[0], here[1], there[0], there[1], mapping)
    result = asm.build()

    checked = validate(result)
    if not checked.valid_manifold:
        raise VerificationError("valid manifold", "; ".join(checked.violations))
    links = sorted((s.euler_characteristic, s.orientable) for s in (sk.vertex_link(k).summary() for k in range(len(sk.vertex_classes))))
    found = sorted((s.euler_characteristic, s.orientable) for s in checked.boundary_components)
    if links != found:
        raise VerificationError("boundary matches vertex links", f"links {links}, boundary {found}")
    if not report.within_budget():
        raise VerificationError("truncation budget", f"{report.tets_used} > {report.budget}")
    logger.debug("truncated %d ideal tets into %d", tri.tet_count, result.tet_count)
    return result, report
