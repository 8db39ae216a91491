from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Tuple

from src.core.builders.boundary import (
    BuildReport,
    LabeledBoundary,
    Vec,
    det,
    propagate,
    vector_of,
)
from src.core.errors import BuildError, PreconditionError, StructuralError, VerificationError
from src.core.farey import (
    FareyTriangle,
    Slope,
    best_start,
    flip,
    format_walk,
    geodesic_to_slope,
    norm,
)
from src.core.homology import PeripheralBasis, homology, peripheral_kernel
from src.core.moves import boundary_sides, layer_on_sides, matching_side
from src.core.skeleton import Skeleton, TetEdge, face_vertices, tet_orientation, validate
from src.core.triangulation import SWAP01, Triangulation, TriangulationBuilder, VertexPerm, disjoint_union
from src.helpers.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class OneTetSolidTorus:
    triangulation: Triangulation
    boundary: LabeledBoundary
    # distance in the Farey graph from the boundary ledger to the meridian
    depth: int


def _is_one_tet_solid_torus(tri: Triangulation) -> bool:
    try:
        report = validate(tri)
    except StructuralError:
        return False
    if not (report.valid_manifold and report.orientable and len(report.vertex_classes) == 1):
        return False
    if [c.describe() for c in report.boundary_components] != ["torus"]:
        return False
    h1 = homology(tri, 1)
    return h1.rank == 1 and not h1.invariant_factors


def _coordinates(v: Vec, m: Vec, l: Vec) -> Vec:
    """Coordinates of v in the basis (m, l), which must be unimodular."""
    d = det(m, l)
    return (det(v, l) * d, det(m, v) * d)


@lru_cache(maxsize=None)
def one_tet_solid_torus() -> OneTetSolidTorus:
    """The single tetrahedron with two faces glued, framed so that the meridian is (1, 0)."""
    tri = None
    for f1 in range(4):
        for f2 in range(f1 + 1, 4):
            for sigma in VertexPerm.all():
                if sigma(f1) != f2:
                    continue
                b = TriangulationBuilder(1)
                b.glue(0, f1, 0, sigma)
                candidate = b.build()
                if _is_one_tet_solid_torus(candidate):
                    tri = candidate
                    break
            if tri is not None:
                break
        if tri is not None:
            break
    if tri is None:  # pragma: no cover
        raise BuildError("no self-gluing of one tetrahedron is a solid torus")

    sk = Skeleton(tri)
    edge_a, edge_b = [sk.edge_classes[k][0] for k in sk.boundary_edge_classes()[:2]]
    raw = propagate(tri, {edge_a: (1, 0), edge_b: (0, 1)})
    kernel = peripheral_kernel(tri, PeripheralBasis(0, edge_a, edge_b)).vector()

    longitude = next(e for e, v in sorted(raw.items()) if abs(det(v, kernel)) == 1)
    l_vec = raw[longitude]
    for sign in (1, -1):
        m_vec = (sign * kernel[0], sign * kernel[1])
        framed = {e: _coordinates(v, m_vec, l_vec) for e, v in raw.items()}
        others = [v for e, v in framed.items() if e != longitude]
        if all(v[0] * v[1] > 0 for v in others):
            break
    else:  # pragma: no cover
        raise BuildError("cannot frame the one-tetrahedron solid torus")

    start = FareyTriangle(frozenset(Slope.from_vector(*v) for v in framed.values()))
    depth = len(geodesic_to_slope(start, Slope.from_vector(1, 0))) - 1
    mu, diag = sorted((e for e in framed if e != longitude), key=lambda e: Slope.from_vector(*framed[e]))
    boundary = LabeledBoundary(
        tri,
        {"mu": mu, "lambda": longitude, "diag": diag},
        {"mu": framed[mu], "lambda": framed[longitude], "diag": framed[diag]},
    )
    logger.debug("one-tet solid torus %s, ledger %s, depth %d", tri.gluings, start, depth)
    return OneTetSolidTorus(tri, boundary, depth)


def _path_to(host: FareyTriangle, meridian: Slope, depth: int) -> List[FareyTriangle]:
    """Ledgers from the one-tet torus boundary out to host, meridian kept fixed."""
    walk = geodesic_to_slope(host, meridian)
    d = len(walk) - 1
    if d == 0:
        raise BuildError(f"meridian {meridian} is already an edge of {host}")
    if d >= depth:
        return list(reversed(walk[: d - depth + 1]))
    path = [host]
    current, toward = walk[0], walk[1]
    for _ in range(depth - d):
        shared = sorted(current.vertices & toward.vertices)
        away = flip(current, shared[0])
        path.insert(0, away)
        current, toward = away, current
    return path


def _frame_map(base: OneTetSolidTorus, start: FareyTriangle, meridian: Slope) -> Tuple[Vec, Vec, str, str]:
    """Images of two base labels under a unimodular map taking the base ledger to start and (1, 0) to meridian."""
    vectors = base.boundary.vectors
    la, lb = base.boundary.basis_labels()
    lc = next(k for k in vectors if k not in (la, lb))
    va, vb, vc = vectors[la], vectors[lb], vectors[lc]
    targets = [s.vector() for s in start.ordered()]
    for i, j in permutations(range(3), 2):
        third = Slope.from_vector(*targets[3 - i - j])
        for ea in (1, -1):
            for eb in (1, -1):
                wa = (ea * targets[i][0], ea * targets[i][1])
                wb = (eb * targets[j][0], eb * targets[j][1])
                if abs(det(wa, wb)) != 1:
                    continue

                def image(v: Vec) -> Vec:
                    alpha, beta = _coordinates(v, va, vb)
                    return (alpha * wa[0] + beta * wb[0], alpha * wa[1] + beta * wb[1])

                if Slope.from_vector(*image(vc)) != third:
                    continue
                if Slope.from_vector(*image((1, 0))) != meridian:
                    continue
                return wa, wb, la, lb
    raise BuildError(f"no frame carries the one-tet ledger onto {start} with meridian {meridian}")


def _slope_class(tri: Triangulation, vectors: Dict[TetEdge, Vec], slope: Slope) -> int:
    sk = Skeleton(tri)
    for edge, v in vectors.items():
        if Slope.from_vector(*v) == slope:
            return sk.edge_of[edge][0]
    raise BuildError(f"no boundary edge has slope {slope}")


def layered_solid_torus(
    host: FareyTriangle, meridian: Slope, report: Optional[BuildReport] = None
) -> Tuple[Triangulation, Dict[TetEdge, Vec], List[FareyTriangle]]:
    """A layered solid torus with boundary ledger host and the given meridian.

    Edge vectors are in the frame of host's slopes. The returned path lists
    the boundary ledger after each tetrahedron.
    """
    base = one_tet_solid_torus()
    path = _path_to(host, meridian, base.depth)
    wa, wb, la, lb = _frame_map(base, path[0], meridian)
    tri = base.triangulation
    vectors = propagate(tri, {base.boundary.edges[la]: wa, base.boundary.edges[lb]: wb})
    if report is not None:
        report.add(f"one-tet solid torus {path[0]}", 1)

    for current, following in zip(path, path[1:]):
        (leaving,) = current.vertices - following.vertices
        (arriving,) = following.vertices - current.vertices
        k = _slope_class(tri, vectors, leaving)
        side = boundary_sides(tri, k)[0]
        tri, n = layer_on_sides(tri, side, matching_side(tri, side))
        vectors = propagate(tri, vectors)
        sk = Skeleton(tri)
        new_slope = Slope.from_vector(*vector_of(sk, vectors, (n, 2, 3)))
        if new_slope != arriving:
            raise BuildError(f"layering on {leaving} produced {new_slope}, expected {arriving}")
        if report is not None:
            report.add(f"layer {following}", 1)
    return tri, vectors, path


def _face_map(
    sk_h: Skeleton, vec_h: Dict[TetEdge, Vec], face_h, sk_l: Skeleton, vec_l: Dict[TetEdge, Vec], face_l, sign: int
) -> Optional[VertexPerm]:
    (t, f), (t2, f2) = face_h, face_l
    hv, lv = face_vertices(f), face_vertices(f2)
    for image in permutations(lv):
        if all(
            vector_of(sk_l, vec_l, (t2, image[x], image[y]))
            == tuple(sign * c for c in vector_of(sk_h, vec_h, (t, hv[x], hv[y])))
            for x, y in ((0, 1), (1, 2), (0, 2))
        ):
            return VertexPerm.from_mapping({f: f2, **{hv[i]: image[i] for i in range(3)}})
    return None


def _mirrored(tri: Triangulation, vectors: Dict[TetEdge, Vec]) -> Tuple[Triangulation, Dict[TetEdge, Vec]]:
    mirror = tri.mirror()
    seeds = {(t, SWAP01(i), SWAP01(j)): v for (t, i, j), v in vectors.items()}
    return mirror, propagate(mirror, seeds)


def glue_solid_torus(host: LabeledBoundary, lst: Triangulation, lst_vectors: Dict[TetEdge, Vec]) -> Triangulation:
    """Glue lst onto the host boundary so that equal vectors meet, preferring an orientable result."""
    tri = host.triangulation
    sk_h = Skeleton(tri)
    vec_h = host.all_vectors()
    host_faces = host.faces()
    fallback = None
    for candidate, vec_l in ((lst, lst_vectors), _mirrored(lst, lst_vectors)):
        union, offsets = disjoint_union(tri, candidate)
        sk_l = Skeleton(candidate)
        lst_faces = candidate.boundary_faces()
        for pairing in (lst_faces, list(reversed(lst_faces))):
            for sign in (1, -1):
                maps = [
                    _face_map(sk_h, vec_h, fh, sk_l, vec_l, fl, sign)
                    for fh, fl in zip(host_faces, pairing)
                ]
                if any(m is None for m in maps):
                    continue
                b = union.builder()
                for (t, f), (t2, _), sigma in zip(host_faces, pairing, maps):
                    b.glue(t, f, t2 + offsets[1], sigma)
                result = b.build()
                if Skeleton(result).invalid_edges:
                    continue
                if tet_orientation(result) is not None or tet_orientation(tri) is None:
                    return result
                if fallback is None:
                    fallback = result
    if fallback is not None:
        return fallback
    raise BuildError("the solid torus boundary does not match the host boundary")


def dehn_fill(tri: Triangulation, boundary: LabeledBoundary, slope: Slope) -> Tuple[Triangulation, BuildReport]:
    """Close off a one-vertex torus boundary by a layered solid torus with meridian p*mu + q*lambda."""
    if slope.is_infinite or not 0 < abs(slope.q) < slope.p:
        raise PreconditionError(f"filling slope must satisfy 0 < |q| < p, got {slope}")
    boundary = boundary.rebind(tri)
    try:
        boundary.check()
    except VerificationError as e:
        raise PreconditionError(f"invalid boundary basis: {e}") from e

    report = BuildReport(budget=norm(slope) + 2)
    lst, vectors, path = layered_solid_torus(boundary.triangle(), slope, report)
    report.walk = path
    result = glue_solid_torus(boundary, lst, vectors)
    logger.info("filled boundary along %s with %d tets", slope, report.tets_used)
    if not report.within_budget():
        raise VerificationError("filling budget", f"{report.tets_used} > {report.budget}")
    return result, report


def _oriented_labels(tri: Triangulation, vectors: Dict[TetEdge, Vec], wanted: Dict[str, Vec]) -> LabeledBoundary:
    """Label the boundary edges carrying the wanted vectors, reversing edges pointing the other way."""
    edges, found = {}, {}
    for label, target in wanted.items():
        for (t, i, j), v in vectors.items():
            if v == target:
                edges[label], found[label] = (t, i, j), v
            elif v == (-target[0], -target[1]):
                edges[label], found[label] = (t, j, i), target
        if label not in edges:
            raise BuildError(f"no boundary edge carries {target}")
    return LabeledBoundary(tri, edges, found)


def standalone_lst(slope: Slope) -> Tuple[Triangulation, LabeledBoundary, BuildReport]:
    """Layered solid torus whose meridian is p*mu + q*lambda, for 0 < q < p."""
    if slope.is_infinite or not 0 < slope.q < slope.p:
        raise PreconditionError(f"layered solid torus needs 0 < q < p, got {slope}")
    start, walk = best_start(slope)
    report = BuildReport(budget=norm(slope) + 2)
    tri, vectors, _ = layered_solid_torus(start, slope, report)
    report.walk = walk
    diag = next(s for s in start.vertices if not s.is_infinite and s.q != 0)
    labeled = _oriented_labels(tri, vectors, {"mu": (1, 0), "lambda": (0, 1), "diag": diag.vector()})
    logger.info("layered solid torus for %s: %d tets, walk %s", slope, report.tets_used, format_walk(walk))
    if not report.within_budget():
        raise VerificationError("layered solid torus budget", f"{report.tets_used} > {report.budget}")
    return tri, labeled, report
