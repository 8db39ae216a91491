from __future__ import annotations

from itertools import permutations
from typing import List, Tuple

from src.core.errors import PreconditionError
from src.core.skeleton import Skeleton, TetEdge, boundary_surface, face_vertices
from src.core.triangulation import IDENTITY, Triangulation, TriangulationBuilder, VertexPerm
from src.helpers.logger import get_logger

logger = get_logger(__name__)

_FLAGS = [tuple(p) for p in permutations(range(4))]
_FLAG_INDEX = {p: i for i, p in enumerate(_FLAGS)}

BoundarySide = Tuple[int, int, int, int]  # (tet, face, a, b): edge a-b of a boundary face


def _swap(flag, i):
    out = list(flag)
    out[i], out[i + 1] = out[i + 1], out[i]
    return tuple(out)


def barycentric_subdivide(tri: Triangulation) -> Triangulation:
    """Replace every tetrahedron by the 24 tetrahedra on its flags.

    Small tetrahedron 24*t + k belongs to flag (p0, p1, p2, p3) = the k-th
    ordering of the labels; its vertex 0 is the old vertex p0, vertex 1 the
    midpoint of p0p1, vertex 2 the barycentre of p0p1p2 and vertex 3 the centre.
    """
    b = TriangulationBuilder(24 * tri.tet_count)
    for t in range(tri.tet_count):
        for flag in _FLAGS:
            here = 24 * t + _FLAG_INDEX[flag]
            for i in range(3):
                other = 24 * t + _FLAG_INDEX[_swap(flag, i)]
                if not b.is_glued(here, i):
                    b.glue(here, i, other, IDENTITY)
            g = tri.gluing(t, flag[3])
            if g is not None and not b.is_glued(here, 3):
                t2, _, sigma = g
                image = tuple(sigma(v) for v in flag)
                b.glue(here, 3, 24 * t2 + _FLAG_INDEX[image], IDENTITY)
    return b.build()


def edge_half(t: int, i: int, j: int) -> TetEdge:
    """In the subdivision, the half of edge i-j of t that touches vertex i."""
    k, l = [v for v in range(4) if v not in (i, j)]
    return (24 * t + _FLAG_INDEX[(i, j, k, l)], 0, 1)


def boundary_sides(tri: Triangulation, k: int) -> List[BoundarySide]:
    sk = Skeleton(tri)
    sides = []
    for t, f in tri.boundary_faces():
        verts = face_vertices(f)
        for x in range(3):
            for y in range(x + 1, 3):
                a, b = verts[x], verts[y]
                if sk.edge_of[(t, a, b)][0] == k:
                    sides.append((t, f, a, b))
    return sides


def matching_side(tri: Triangulation, side: BoundarySide) -> BoundarySide:
    """The other boundary face along the same edge, with endpoints matched to side's a, b."""
    t, f, a, b = side
    boundary = boundary_surface(tri)
    k = boundary.triangle_of(t, f)
    labels = boundary.labels[k]
    la, lb = labels.index(a), labels.index(b)
    g = boundary.surface.gluing(k, 3 - la - lb)
    k2, _, pi = g
    labels2 = boundary.labels[k2]
    t2, f2 = boundary.faces[k2]
    return (t2, f2, labels2[pi[la]], labels2[pi[lb]])


def layer_on_sides(tri: Triangulation, side: BoundarySide, other: BoundarySide) -> Tuple[Triangulation, int]:
    """Layer a tetrahedron N across two boundary faces sharing edge a-b.

    N's vertices 0, 1 sit on a, b and vertices 2, 3 on the far corners of the
    first and second face; the new boundary edge is N's edge 2-3.
    """
    t1, f1, a1, b1 = side
    t2, f2, a2, b2 = other
    if (t1, f1) == (t2, f2):
        raise PreconditionError(f"edge {a1}-{b1} of tetrahedron {t1} has both sides on one boundary face")
    c1 = next(v for v in range(4) if v not in (f1, a1, b1))
    c2 = next(v for v in range(4) if v not in (f2, a2, b2))
    b = tri.builder()
    n = b.add_tet()
    b.glue(n, 3, t1, VertexPerm((a1, b1, c1, f1)))
    b.glue(n, 2, t2, VertexPerm((a2, b2, f2, c2)))
    return b.build(), n


def layer_on_boundary_edge(tri: Triangulation, k: int) -> Triangulation:
    """2-2 move on the boundary: flip boundary edge class k."""
    sides = boundary_sides(tri, k)
    if not sides:
        raise PreconditionError(f"edge {k} is not a boundary edge")
    if len(sides) != 2:
        raise PreconditionError(f"edge {k} meets the boundary in {len(sides)} sides")
    side = sides[0]
    other = matching_side(tri, side)
    result, _ = layer_on_sides(tri, side, other)
    logger.debug("layered tetrahedron %d on boundary edge %d", result.tet_count - 1, k)
    return result


def fill_three_faces(tri: Triangulation, v: int) -> Triangulation:
    """3-1 move: cap the three boundary faces around boundary vertex class v."""
    sk = Skeleton(tri)
    corners = [
        (t, f, w)
        for t, f in tri.boundary_faces()
        for w in face_vertices(f)
        if sk.vertex_of[(t, w)] == v
    ]
    if len(corners) != 3 or len({(t, f) for t, f, _ in corners}) != 3:
        raise PreconditionError(f"vertex {v} has boundary valence {len(corners)}, not 3")

    boundary = boundary_surface(tri)
    t_a, f_a, w_a = corners[0]
    ka = boundary.triangle_of(t_a, f_a)
    la = boundary.labels[ka]
    iv = la.index(w_a)
    p, q = [i for i in range(3) if i != iv]

    kb, _, pi = boundary.surface.gluing(ka, p)
    kc, _, rho = boundary.surface.gluing(ka, q)
    if len({ka, kb, kc}) != 3:
        raise PreconditionError(f"faces around vertex {v} do not form a disc")
    lb, lc = boundary.labels[kb], boundary.labels[kc]
    # B and C must meet along their edge through v with z matched to z
    back = boundary.surface.gluing(kb, pi[q])
    if back is None or back[0] != kc or back[2][pi[iv]] != rho[iv] or back[2][pi[p]] != rho[q]:
        raise PreconditionError(f"faces around vertex {v} do not form a disc")

    (t_b, f_b), (t_c, f_c) = boundary.faces[kb], boundary.faces[kc]
    b = tri.builder()
    n = b.add_tet()
    # N: 0 = x, 1 = y, 2 = z, 3 = v
    b.glue(n, 2, t_a, VertexPerm((la[p], la[q], f_a, la[iv])))
    b.glue(n, 0, t_b, VertexPerm((f_b, lb[pi[q]], lb[pi[p]], lb[pi[iv]])))
    b.glue(n, 1, t_c, VertexPerm((lc[rho[p]], f_c, lc[rho[q]], lc[rho[iv]])))
    logger.debug("filled vertex %d with tetrahedron %d", v, n)
    return b.build()


def cone_boundary(tri: Triangulation) -> Triangulation:
    """Cone every boundary component to a new vertex of its own."""
    boundary = boundary_surface(tri)
    b = tri.builder()
    base = tri.tet_count
    for k, (t, f) in enumerate(boundary.faces):
        n = b.add_tet()
        labels = boundary.labels[k]
        b.glue(n, 3, t, VertexPerm((labels[0], labels[1], labels[2], f)))
    for (k, e), (k2, _, pi) in boundary.surface.gluings.items():
        if not b.is_glued(base + k, e):
            b.glue(base + k, e, base + k2, VertexPerm((pi[0], pi[1], pi[2], 3)))
    return b.build()
