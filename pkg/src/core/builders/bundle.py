from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from src.core.builders.assembler import NamedAssembler
from src.core.builders.boundary import (
    BuildReport,
    LabeledBoundary,
    Vec,
    boundary_components_of,
    propagate,
    relabel_one_vertex,
)
from src.core.errors import BuildError, PreconditionError, StructuralError
from src.core.moves import fill_three_faces, layer_on_boundary_edge
from src.core.skeleton import Skeleton, TetEdge, face_vertices
from src.core.surface import SurfaceTriangulation, perm3_sign
from src.core.triangulation import Triangulation
from src.helpers.logger import get_logger

logger = get_logger(__name__)

# Twisted bundles over nonorientable bases use the same prism, so every base
# surface costs this many tetrahedra per triangle and never doubles.
TETS_PER_PRISM = 8


def _surface_orientation(surface: SurfaceTriangulation) -> List[int]:
    """+-1 per triangle from a spanning forest; consistent exactly when the surface is orientable."""
    orient: List[Optional[int]] = [None] * surface.triangle_count
    for start in range(surface.triangle_count):
        if orient[start] is not None:
            continue
        orient[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for e in range(3):
                g = surface.gluing(t, e)
                if g is not None and orient[g[0]] is None:
                    orient[g[0]] = -perm3_sign(g[2]) * orient[t]
                    stack.append(g[0])
    return orient


def _vertex(t: int, i: int, level: int):
    return (t, i, level)


def _cone(t: int):
    return ("c", t)


def circle_bundle(surface: SurfaceTriangulation, twisted: bool) -> Tuple[Triangulation, List[LabeledBoundary]]:
    """The circle bundle over surface, one prism of eight tetrahedra per triangle.

    The untwisted bundle is the product. The twisted one reverses the fibre
    across every edge where the spanning-forest orientation of the surface
    disagrees, which makes the total space orientable. Each boundary circle
    of the surface gives a boundary torus seeded with section (1, 0) and
    fibre (0, 1).
    """
    if not surface.boundary_edges():
        raise PreconditionError("the base surface needs at least one boundary component")
    if twisted and surface.is_orientable():
        raise PreconditionError("the twisted bundle needs a nonorientable base")

    orient = _surface_orientation(surface)
    # quad over the side of t opposite e: diagonal from (s, 0) to (o, 1)
    diagonal_start: Dict[Tuple[int, int], int] = {}
    flipped: Dict[Tuple[int, int], bool] = {}
    for t in range(surface.triangle_count):
        for e in range(3):
            if (t, e) in diagonal_start:
                continue
            s = min(i for i in range(3) if i != e)
            o = 3 - e - s
            diagonal_start[(t, e)] = s
            g = surface.gluing(t, e)
            if g is None:
                continue
            t2, e2, pi = g
            straight = not twisted or orient[t2] == -perm3_sign(pi) * orient[t]
            flipped[(t, e)] = flipped[(t2, e2)] = not straight
            diagonal_start[(t2, e2)] = pi[s] if straight else pi[o]

    asm = NamedAssembler()
    for t in range(surface.triangle_count):
        c = _cone(t)
        asm.add_tet([_vertex(t, 0, 0), _vertex(t, 1, 0), _vertex(t, 2, 0), c])
        asm.add_tet([_vertex(t, 0, 1), _vertex(t, 1, 1), _vertex(t, 2, 1), c])
        for e in range(3):
            s = diagonal_start[(t, e)]
            o = 3 - e - s
            asm.add_tet([_vertex(t, s, 0), _vertex(t, o, 0), _vertex(t, o, 1), c])
            asm.add_tet([_vertex(t, s, 0), _vertex(t, s, 1), _vertex(t, o, 1), c])
    asm.auto_glue()

    free = asm.free_faces()

    def glue(names: List, mapping: Dict) -> None:
        key = frozenset(names)
        image = frozenset(mapping[n] for n in names)
        if key not in free or image not in free:
            return
        (t1, f1), (t2, f2) = free.pop(key), free.pop(image)
        asm.glue_by_names(t1, f1, t2, f2, mapping)

    for t in range(surface.triangle_count):
        bottom = [_vertex(t, i, 0) for i in range(3)]
        glue(bottom, {_vertex(t, i, 0): _vertex(t, i, 1) for i in range(3)})
        for e in range(3):
            g = surface.gluing(t, e)
            if g is None:
                continue
            t2, _, pi = g
            swap = flipped[(t, e)]
            mapping = {
                _vertex(t, i, level): _vertex(t2, pi[i], 1 - level if swap else level)
                for i in range(3)
                if i != e
                for level in (0, 1)
            }
            s = diagonal_start[(t, e)]
            o = 3 - e - s
            glue([_vertex(t, s, 0), _vertex(t, o, 0), _vertex(t, o, 1)], mapping)
            glue([_vertex(t, s, 0), _vertex(t, s, 1), _vertex(t, o, 1)], mapping)

    tri = asm.build()
    if tri.tet_count != TETS_PER_PRISM * surface.triangle_count:
        raise BuildError(f"{tri.tet_count} tets for {surface.triangle_count} prisms")
    boundaries = []
    for walk in surface.boundary_walks():
        seeds: Dict[TetEdge, Vec] = {}
        edges: Dict[str, TetEdge] = {}
        vectors: Dict[str, Vec] = {}
        for k, (t, u, v) in enumerate(walk):
            edge = asm.edge(_vertex(t, u, 0), _vertex(t, v, 0))
            seeds[edge] = (1, 0) if k == 0 else (0, 0)
            label = "mu" if k == 0 else f"section{k + 1}"
            edges[label], vectors[label] = edge, seeds[edge]
        t, u, _ = walk[0]
        fibre = asm.edge(_vertex(t, u, 0), _vertex(t, u, 1))
        edges["lambda"], vectors["lambda"] = fibre, (0, 1)
        if len(walk) == 1:
            all_vectors = propagate(tri, {**seeds, fibre: (0, 1)})
            labeled = LabeledBoundary(tri, edges, vectors)
            diag = next(e for e in all_vectors if all_vectors[e] not in ((1, 0), (0, 1), (-1, 0), (0, -1)))
            labeled.edges["diag"], labeled.vectors["diag"] = diag, all_vectors[diag]
            boundaries.append(labeled)
        else:
            boundaries.append(LabeledBoundary(tri, edges, vectors))
    logger.debug(
        "circle bundle over %d triangles: %d tets, %d boundary tori", surface.triangle_count, tri.tet_count, len(boundaries)
    )
    return tri, boundaries


def _component_faces(tri: Triangulation, vectors: Dict[TetEdge, Vec]) -> List[Tuple[int, int]]:
    sk = Skeleton(tri)
    known = {sk.edge_of[e][0] for e in vectors}
    for faces in boundary_components_of(tri):
        for t, f in faces:
            a0, a1, a2 = face_vertices(f)
            if any(sk.edge_of[(t, i, j)][0] in known for i, j in ((a0, a1), (a1, a2), (a0, a2))):
                return faces
    raise BuildError("labeled edges are no longer on the boundary")


def _axis_score(vectors: Dict[TetEdge, Vec]) -> int:
    values = {(abs(x), abs(y)) for x, y in vectors.values()}
    return int((1, 0) in values) + int((0, 1) in values)


def reduce_boundary_torus(tri: Triangulation, boundary: LabeledBoundary) -> Tuple[Triangulation, LabeledBoundary, BuildReport]:
    """Turn a multi-vertex boundary torus into a one-vertex torus with two layerings and one 3-1 fill.

    A one-vertex torus is returned unchanged.
    """
    boundary = boundary.rebind(tri)
    faces = boundary.faces()
    sk = Skeleton(tri)
    vertices = {sk.vertex_of[(t, v)] for t, f in faces for v in face_vertices(f)}
    edge_classes = sorted({sk.edge_of[(t, i, j)][0] for t, f in faces for i, j in _face_pairs(f)})
    if len(vertices) - len(edge_classes) + len(faces) != 0:
        raise PreconditionError("boundary component is not a torus")
    report = BuildReport(budget=3)
    if len(faces) == 2:
        return tri, boundary, report

    vectors = boundary.all_vectors()
    best = None
    for e1 in edge_classes:
        try:
            once = layer_on_boundary_edge(tri, e1)
            once_vectors = propagate(once, vectors)
        except (PreconditionError, StructuralError, BuildError):
            continue
        once_faces = _component_faces(once, once_vectors)
        sk1 = Skeleton(once)
        for e2 in sorted({sk1.edge_of[(t, i, j)][0] for t, f in once_faces for i, j in _face_pairs(f)}):
            try:
                twice = layer_on_boundary_edge(once, e2)
                twice_vectors = propagate(twice, once_vectors)
            except (PreconditionError, StructuralError, BuildError):
                continue
            twice_faces = _component_faces(twice, twice_vectors)
            sk2 = Skeleton(twice)
            for v in sorted({sk2.vertex_of[(t, w)] for t, f in twice_faces for w in face_vertices(f)}):
                try:
                    filled = fill_three_faces(twice, v)
                    filled_vectors = propagate(filled, twice_vectors)
                except (PreconditionError, StructuralError, BuildError):
                    continue
                filled_faces = _component_faces(filled, filled_vectors)
                if len(filled_faces) != 2:
                    continue
                score = _axis_score(filled_vectors)
                if best is None or score > best[0]:
                    best = (score, (e1, e2, v), filled, filled_vectors, filled_faces)
                if score == 2:
                    break
            if best is not None and best[0] == 2:
                break
        if best is not None and best[0] == 2:
            break
    if best is None:
        raise BuildError("no two layerings and 3-1 fill reduce the boundary torus to one vertex")

    _, (e1, e2, v), result, result_vectors, result_faces = best
    report.add(f"layer edge {e1}", 1)
    report.add(f"layer edge {e2}", 1)
    report.add(f"fill vertex {v}", 1)
    labeled = relabel_one_vertex(result, result_vectors, result_faces)
    logger.debug("reduced boundary torus with (layer %d, layer %d, fill %d)", e1, e2, v)
    return result, labeled, report


def _face_pairs(f: int):
    a0, a1, a2 = face_vertices(f)
    return ((a0, a1), (a1, a2), (a0, a2))
