from __future__ import annotations

from typing import Dict, List, Tuple

from src.core.errors import PreconditionError, VerificationError
from src.core.surface import SurfaceBuilder, SurfaceTriangulation, surface_from_names
from src.helpers.logger import get_logger

logger = get_logger(__name__)

Side = Tuple[int, Tuple[int, int]]


def _disc(b: SurfaceBuilder) -> None:
    # (D, D', E) with D-E folded onto D'-E; the boundary is the loop D-D'
    t = b.add_triangle()
    b.glue_sides(t, (0, 2), t, (1, 2))


def _annulus(b: SurfaceBuilder) -> None:
    # (P1, P2, Q1) and (Q2, Q3, P3); boundary loops P1-P2 and Q2-Q3
    t1, t2 = b.add_triangle(), b.add_triangle()
    b.glue_sides(t1, (1, 2), t2, (2, 0))
    b.glue_sides(t1, (0, 2), t2, (2, 1))


def _mobius(b: SurfaceBuilder, one_vertex_boundary: bool) -> None:
    # square (A, B, C, D) split along A-C, with D-A glued to B-C
    t1, t2 = b.add_triangle(), b.add_triangle()
    b.glue_sides(t1, (0, 2), t2, (0, 1))
    b.glue_sides(t2, (2, 0), t1, (1, 2))
    if one_vertex_boundary:
        # cap the boundary edges A-B and C-D, leaving the loop A-C
        t3 = b.add_triangle()
        b.glue_sides(t3, (0, 1), t1, (0, 1))
        b.glue_sides(t3, (2, 1), t2, (1, 2))


def _polygon_sides(n: int, first: int) -> List[Side]:
    """Sides P_j -> P_j+1 of an n-gon fanned from P_0, as (triangle, local endpoints)."""
    sides: List[Side] = [(first, (0, 1))]
    sides.extend((first + j - 1, (1, 2)) for j in range(1, n - 1))
    sides.append((first + n - 3, (2, 0)))
    return sides


def _closed(b: SurfaceBuilder, orientable: bool, a: int) -> None:
    """The 2a-gon with word a1 b1 a1^-1 b1^-1 ... or x1 x1 x2 x2 ..."""
    n = 2 * a
    first = b.triangle_count
    for _ in range(n - 2):
        b.add_triangle()
    for i in range(n - 3):
        b.glue_sides(first + i, (0, 2), first + i + 1, (0, 1))
    sides = _polygon_sides(n, first)

    def glue(j: int, k: int, reverse: bool) -> None:
        (t, (u, v)), (t2, (u2, v2)) = sides[j], sides[k]
        b.glue_sides(t, (u, v), t2, (v2, u2) if reverse else (u2, v2))

    if orientable:
        for block in range(0, n, 4):
            glue(block, block + 2, True)
            glue(block + 1, block + 3, True)
    else:
        for block in range(0, n, 2):
            glue(block, block + 1, False)


def add_boundary_component(b: SurfaceBuilder, t: int) -> int:
    """Punch a hole with a one-vertex boundary inside triangle t; returns the new boundary triangle.

    Triangle t = (A, B, C) is starred from a new vertex D into (D, A, B),
    (D, B, C) and (D, C, A); the star is cut open along D-A and the slit
    filled by (D1, D2, A), whose side D1-D2 is the new boundary loop.
    """
    old = {e: b.unglue(t, e) for e in range(3)}
    t2, t3, t4, t1 = t, b.add_triangle(), b.add_triangle(), b.add_triangle()
    # old local vertex -> local vertex of the triangle now carrying that side, keyed by the old edge
    remap: Dict[int, Tuple[int, Dict[int, int]]] = {
        2: (t2, {0: 1, 1: 2}),
        0: (t3, {1: 1, 2: 2}),
        1: (t4, {2: 1, 0: 2}),
    }
    done = set()
    for e, g in old.items():
        if g is None or e in done:
            continue
        partner, e2, pi = g
        here_t, here = remap[e]
        u, v = [i for i in range(3) if i != e]
        if partner == t:
            there_t, there = remap[e2]
            done.add(e2)
        else:
            there_t, there = partner, {i: i for i in range(3)}
        b.glue_sides(here_t, (here[u], here[v]), there_t, (there[pi[u]], there[pi[v]]))
        done.add(e)
    b.glue_sides(t2, (0, 2), t3, (0, 1))
    b.glue_sides(t3, (0, 2), t4, (0, 1))
    b.glue_sides(t2, (0, 1), t1, (0, 2))
    b.glue_sides(t4, (0, 2), t1, (1, 2))
    return t1


def base_surface(orientable: bool, a: int, boundary_count: int, one_vertex_boundary: bool = True) -> SurfaceTriangulation:
    """A surface with boundary_count boundary circles.

    a is twice the genus when orientable and the number of cross-caps
    otherwise. Every boundary circle has a single vertex, except the
    Mobius band built with one_vertex_boundary=False, whose boundary has two.
    """
    if a < 0 or boundary_count < 1:
        raise PreconditionError(f"need a >= 0 and at least one boundary component, got a={a}, b={boundary_count}")
    if orientable and a % 2:
        raise PreconditionError(f"orientable surfaces have even a, got {a}")
    if not orientable and a < 1:
        raise PreconditionError("nonorientable surfaces need a >= 1")

    b = SurfaceBuilder()
    holes = boundary_count
    if orientable and a == 0:
        if boundary_count == 1:
            _disc(b)
        else:
            _annulus(b)
        holes -= min(boundary_count, 2)
    elif not orientable and a == 1:
        _mobius(b, one_vertex_boundary)
        holes -= 1
    else:
        _closed(b, orientable, a)
    for _ in range(holes):
        add_boundary_component(b, 0)

    surface = b.build()
    summary = surface.summary()
    if summary.euler_characteristic != 2 - a - boundary_count or summary.orientable != orientable:
        raise VerificationError("base surface", f"built a {summary.describe()} for a={a}, b={boundary_count}")
    logger.debug("base surface %s with %d triangles", summary.describe(), surface.triangle_count)
    return surface


def simplicial_annulus(k: int) -> SurfaceTriangulation:
    """The annulus between the k-gons u_0..u_k-1 and w_0..w_k-1, with 2k triangles."""
    if k < 3:
        raise PreconditionError(f"a simplicial annulus needs k >= 3, got {k}")
    triangles = []
    for i in range(k):
        j = (i + 1) % k
        triangles.append((("u", i), ("u", j), ("w", i)))
        triangles.append((("u", j), ("w", j), ("w", i)))
    return surface_from_names(triangles)
