from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.core.errors import StructuralError
from src.core.surface import SurfaceSummary, SurfaceTriangulation, _UnionFind, perm3_from_pairs
from src.core.triangulation import Triangulation
from src.helpers.logger import get_logger

logger = get_logger(__name__)

EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

TetEdge = Tuple[int, int, int]


def face_vertices(f: int) -> Tuple[int, int, int]:
    return tuple(v for v in range(4) if v != f)


def oriented_edge(t: int, i: int, j: int) -> Tuple[TetEdge, int]:
    """The sorted tet-edge for i -> j and the sign relating the two directions."""
    return ((t, i, j), 1) if i < j else ((t, j, i), -1)


class _ParityUnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.parity = {x: 0 for x in items}

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root, acc = x, 0
        for node in reversed(path):
            acc ^= self.parity[node]
            self.parity[node] = acc
            self.parent[node] = root
        return root

    def parity_of(self, x) -> int:
        self.find(x)
        return self.parity[x]

    def union(self, a, b, rel: int) -> bool:
        """Record orient(a) = orient(b) xor rel; False on a contradiction."""
        ra, rb = self.find(a), self.find(b)
        pa, pb = self.parity[a], self.parity[b]
        if ra == rb:
            return (pa ^ pb) == rel
        if rb < ra:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ rel
        return True


class Skeleton:
    """Orbit classes of vertices, edges and faces with orientation data."""

    def __init__(self, tri: Triangulation):
        self.tri = tri
        n = tri.tet_count
        gluings = tri.gluings

        vertices = _UnionFind([(t, v) for t in range(n) for v in range(4)])
        edges = _ParityUnionFind([(t, i, j) for t in range(n) for i, j in EDGES])
        invalid_members = []
        for (t, f), (t2, _, sigma) in gluings.items():
            verts = face_vertices(f)
            for v in verts:
                vertices.union((t, v), (t2, sigma(v)))
            for a in range(3):
                for b in range(a + 1, 3):
                    i, j = verts[a], verts[b]
                    image, sign = oriented_edge(t2, sigma(i), sigma(j))
                    if not edges.union((t, i, j), image, 0 if sign > 0 else 1):
                        invalid_members.append((t, i, j))

        self.vertex_classes: List[List[Tuple[int, int]]] = vertices.classes()
        self.vertex_of: Dict[Tuple[int, int], int] = {
            m: k for k, cls in enumerate(self.vertex_classes) for m in cls
        }

        groups: Dict = {}
        for x in edges.parent:
            groups.setdefault(edges.find(x), []).append(x)
        ordered = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
        self.edge_classes: List[List[TetEdge]] = ordered
        self.edge_of: Dict[TetEdge, Tuple[int, int]] = {}
        invalid_roots = {edges.find(m) for m in invalid_members}
        self.invalid_edges = set()
        for k, cls in enumerate(ordered):
            rep_parity = edges.parity_of(cls[0])
            for m in cls:
                self.edge_of[m] = (k, -1 if edges.parity_of(m) ^ rep_parity else 1)
            if edges.find(cls[0]) in invalid_roots:
                self.invalid_edges.add(k)

        self.face_classes: List[List[Tuple[int, int]]] = []
        self.face_of: Dict[Tuple[int, int], Tuple[int, int]] = {}
        for t in range(n):
            for f in range(4):
                if (t, f) in self.face_of:
                    continue
                k = len(self.face_classes)
                self.face_of[(t, f)] = (k, 1)
                g = gluings.get((t, f))
                if g is None:
                    self.face_classes.append([(t, f)])
                    continue
                t2, f2, sigma = g
                self.face_of[(t2, f2)] = (k, _face_sign(f, f2, sigma))
                self.face_classes.append([(t, f), (t2, f2)])

    def edge_class_of(self, t: int, i: int, j: int) -> Tuple[int, int]:
        """Edge class of the directed tet-edge i -> j and its sign against the class direction."""
        member, sign = oriented_edge(t, i, j)
        k, s = self.edge_of[member]
        return k, s * sign

    def edge_endpoints(self, k: int) -> Tuple[int, int]:
        t, i, j = self.edge_classes[k][0]
        return self.vertex_of[(t, i)], self.vertex_of[(t, j)]

    def boundary_face_classes(self) -> List[int]:
        return [k for k, cls in enumerate(self.face_classes) if len(cls) == 1]

    def boundary_edge_classes(self) -> List[int]:
        found = set()
        for k in self.boundary_face_classes():
            t, f = self.face_classes[k][0]
            verts = face_vertices(f)
            for a in range(3):
                for b in range(a + 1, 3):
                    found.add(self.edge_of[(t, verts[a], verts[b])][0])
        return sorted(found)

    def euler_characteristic(self) -> int:
        return (
            len(self.vertex_classes)
            - len(self.edge_classes)
            + len(self.face_classes)
            - self.tri.tet_count
        )

    def vertex_link(self, k: int) -> SurfaceTriangulation:
        corners = self.vertex_classes[k]
        position = {c: i for i, c in enumerate(corners)}
        gluings = {}
        for (t, v) in corners:
            local = face_vertices(v)
            for f in local:
                g = self.tri.gluing(t, f)
                if g is None:
                    continue
                t2, _, sigma = g
                other = face_vertices(sigma(v))
                pi = tuple(other.index(sigma(w)) for w in local)
                gluings[(position[(t, v)], local.index(f))] = (position[(t2, sigma(v))], other.index(sigma(f)), pi)
        return SurfaceTriangulation(len(corners), gluings)


def _face_sign(f: int, f2: int, sigma) -> int:
    """Parity of the order in which sigma carries the sorted vertices of face f onto face f2."""
    images = [sigma(v) for v in face_vertices(f)]
    inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if images[a] > images[b])
    return -1 if inversions % 2 else 1


def tet_orientation(tri: Triangulation) -> Optional[List[int]]:
    """A consistent +-1 per tetrahedron, or None when nonorientable."""
    orient: List[Optional[int]] = [None] * tri.tet_count
    for start in range(tri.tet_count):
        if orient[start] is not None:
            continue
        orient[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for f in range(4):
                g = tri.gluing(t, f)
                if g is None:
                    continue
                t2, _, sigma = g
                want = -sigma.sign() * orient[t]
                if orient[t2] is None:
                    orient[t2] = want
                    stack.append(t2)
                elif orient[t2] != want:
                    return None
    return orient


@dataclass
class BoundarySurface:
    surface: SurfaceTriangulation
    # boundary triangle k is the tet face faces[k]; its local vertex i is tet label labels[k][i]
    faces: List[Tuple[int, int]]
    labels: List[Tuple[int, int, int]]

    def triangle_of(self, t: int, f: int) -> int:
        return self.faces.index((t, f))

    def components(self) -> List[List[int]]:
        return self.surface.components()


def boundary_surface(tri: Triangulation) -> BoundarySurface:
    faces = tri.boundary_faces()
    labels = [face_vertices(f) for _, f in faces]
    index = {face: k for k, face in enumerate(faces)}
    gluings = {}
    for k, (t, f) in enumerate(faces):
        for e in range(3):
            if (k, e) in gluings:
                continue
            a, b = [i for i in range(3) if i != e]
            x, y = labels[k][a], labels[k][b]
            cur_t, cur_in = t, f
            for _ in range(4 * tri.tet_count + 4):
                g_face = next(v for v in range(4) if v not in (x, y, cur_in))
                g = tri.gluing(cur_t, g_face)
                if g is None:
                    break
                cur_t, cur_in, sigma = g
                x, y = sigma(x), sigma(y)
            else:
                raise StructuralError(f"walk around boundary edge of face {t} {f} does not close")
            k2 = index[(cur_t, g_face)]
            a2, b2 = labels[k2].index(x), labels[k2].index(y)
            e2 = 3 - a2 - b2
            if (k2, e2) == (k, e):
                raise StructuralError(f"boundary edge of face {t} {f} is glued to itself")
            pi = perm3_from_pairs({a: a2, b: b2, e: e2})
            gluings[(k, e)] = (k2, e2, pi)
            gluings[(k2, e2)] = (k, e, tuple(pi.index(i) for i in range(3)))
    return BoundarySurface(SurfaceTriangulation(len(faces), gluings), faces, labels)


@dataclass
class SkeletonReport:
    tet_count: int
    vertex_classes: List[List[Tuple[int, int]]]
    edge_classes: List[List[TetEdge]]
    face_classes: List[List[Tuple[int, int]]]
    euler_characteristic: int
    orientable: bool
    valid_manifold: bool
    boundary_components: List[SurfaceSummary]
    edge_link_lengths: Dict[int, int]
    vertex_links: List[SurfaceSummary] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)

    @property
    def boundary_euler_characteristic(self) -> int:
        return sum(c.euler_characteristic for c in self.boundary_components)

    def lines(self) -> List[str]:
        out = [
            f"tetrahedra: {self.tet_count}",
            f"vertices: {len(self.vertex_classes)} edges: {len(self.edge_classes)} faces: {len(self.face_classes)}",
            f"euler characteristic: {self.euler_characteristic}",
            f"orientable: {'yes' if self.orientable else 'no'}",
            f"valid manifold: {'yes' if self.valid_manifold else 'no'}",
        ]
        if self.boundary_components:
            out.append("boundary: " + ", ".join(c.describe() for c in self.boundary_components))
        else:
            out.append("boundary: none")
        out.extend(f"violation: {v}" for v in self.violations)
        return out


def validate(tri: Triangulation) -> SkeletonReport:
    """Orbit structure and manifold checks. Structural errors surface from Triangulation itself."""
    sk = Skeleton(tri)
    violations = []
    links = []
    for k in range(len(sk.vertex_classes)):
        summary = sk.vertex_link(k).summary()
        links.append(summary)
        sphere = summary.euler_characteristic == 2 and summary.boundary_count == 0
        disc = summary.euler_characteristic == 1 and summary.boundary_count == 1
        if not (sphere or disc):
            violations.append(f"vertex {k} link is a {summary.describe()}")
    for k in sorted(sk.invalid_edges):
        violations.append(f"edge {k} is identified with itself in reverse")

    components = [surface.summary() for surface, _ in boundary_component_surfaces(tri)]

    report = SkeletonReport(
        tet_count=tri.tet_count,
        vertex_classes=sk.vertex_classes,
        edge_classes=sk.edge_classes,
        face_classes=sk.face_classes,
        euler_characteristic=sk.euler_characteristic(),
        orientable=tet_orientation(tri) is not None,
        valid_manifold=not violations,
        boundary_components=components,
        edge_link_lengths={k: len(cls) for k, cls in enumerate(sk.edge_classes)},
        vertex_links=links,
        violations=violations,
    )
    if violations:
        logger.debug("triangulation with %d tets is not a manifold: %s", tri.tet_count, "; ".join(violations))
    return report


def _sub_surface(surface: SurfaceTriangulation, triangles: List[int]) -> SurfaceTriangulation:
    position = {t: i for i, t in enumerate(triangles)}
    gluings = {}
    for t in triangles:
        for e in range(3):
            g = surface.gluing(t, e)
            if g is not None:
                gluings[(position[t], e)] = (position[g[0]], g[1], g[2])
    return SurfaceTriangulation(len(triangles), gluings)


def boundary_component_surfaces(tri: Triangulation) -> List[Tuple[SurfaceTriangulation, List[int]]]:
    """Each boundary component as its own surface, with the boundary triangles it came from."""
    boundary = boundary_surface(tri)
    return [(_sub_surface(boundary.surface, comp), comp) for comp in boundary.surface.components()]
