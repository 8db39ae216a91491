from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from src.core.errors import StructuralError

Perm3 = Tuple[int, int, int]
Edge = Tuple[int, int]
EdgeGluing = Tuple[int, int, Perm3]


def perm3_inverse(p: Perm3) -> Perm3:
    inv = [0, 0, 0]
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm3_sign(p: Perm3) -> int:
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
    return -1 if inversions % 2 else 1


def perm3_from_pairs(pairs: Mapping[int, int]) -> Perm3:
    images = dict(pairs)
    rest_src = [i for i in range(3) if i not in images]
    rest_dst = [i for i in range(3) if i not in images.values()]
    for s, d in zip(rest_src, rest_dst):
        images[s] = d
    perm = tuple(images[i] for i in range(3))
    if sorted(perm) != [0, 1, 2]:
        raise StructuralError(f"cannot complete {pairs} to a permutation of 012")
    return perm


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self) -> List[List]:
        groups: Dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


@dataclass(frozen=True)
class SurfaceSummary:
    euler_characteristic: int
    orientable: bool
    boundary_count: int
    connected: bool

    @property
    def genus(self) -> int:
        """Orientable genus, or the number of cross-caps when nonorientable."""
        if self.orientable:
            return (2 - self.euler_characteristic - self.boundary_count) // 2
        return 2 - self.euler_characteristic - self.boundary_count

    def describe(self) -> str:
        if self.orientable and self.boundary_count == 0:
            names = {0: "sphere", 1: "torus"}
            return names.get(self.genus, f"genus-{self.genus} surface")
        if self.orientable:
            if self.genus == 0:
                names = {1: "disc", 2: "annulus"}
                return names.get(self.boundary_count, f"sphere with {self.boundary_count} holes")
            return f"genus-{self.genus} surface with {self.boundary_count} holes"
        if self.boundary_count == 0:
            names = {1: "projective plane", 2: "Klein bottle"}
            return names.get(self.genus, f"nonorientable genus-{self.genus} surface")
        if self.genus == 1 and self.boundary_count == 1:
            return "Mobius band"
        return f"nonorientable genus-{self.genus} surface with {self.boundary_count} holes"


class SurfaceTriangulation:
    """Triangles with edge pairings; edge e of a triangle is opposite vertex e.

    A gluing (t, e) -> (t2, e2, pi) sends vertex i of t to vertex pi[i] of t2.
    """

    def __init__(self, triangle_count: int, gluings: Mapping[Edge, EdgeGluing]):
        self.triangle_count = int(triangle_count)
        self._gluings: Dict[Edge, EdgeGluing] = dict(gluings)
        for (t, e), (t2, e2, pi) in self._gluings.items():
            if not (0 <= t < self.triangle_count and 0 <= t2 < self.triangle_count):
                raise StructuralError(f"edge gluing {t} {e} -> {t2} {e2} out of range")
            if (t, e) == (t2, e2):
                raise StructuralError(f"edge {t} {e} glued to itself")
            if pi[e] != e2:
                raise StructuralError(f"edge gluing {t} {e} -> {t2} {e2} does not map {e} to {e2}")
            back = self._gluings.get((t2, e2))
            if back is None or back[:2] != (t, e) or back[2] != perm3_inverse(pi):
                raise StructuralError(f"edge gluing {t} {e} -> {t2} {e2} is not an involution")

    @property
    def gluings(self) -> Mapping[Edge, EdgeGluing]:
        return dict(self._gluings)

    def gluing(self, t: int, e: int) -> Optional[EdgeGluing]:
        return self._gluings.get((t, e))

    def orientation_bit(self, t: int, e: int) -> int:
        """1 when the gluing is orientation-preserving in the labels, 0 otherwise."""
        g = self._gluings[(t, e)]
        return 1 if perm3_sign(g[2]) > 0 else 0

    def boundary_edges(self) -> List[Edge]:
        return [(t, e) for t in range(self.triangle_count) for e in range(3) if (t, e) not in self._gluings]

    def vertex_classes(self) -> List[List[Tuple[int, int]]]:
        uf = _UnionFind([(t, v) for t in range(self.triangle_count) for v in range(3)])
        for (t, e), (t2, _, pi) in self._gluings.items():
            for v in range(3):
                if v != e:
                    uf.union((t, v), (t2, pi[v]))
        return uf.classes()

    def vertex_index(self) -> Dict[Tuple[int, int], int]:
        return {corner: i for i, cls in enumerate(self.vertex_classes()) for corner in cls}

    def edge_classes(self) -> List[List[Edge]]:
        uf = _UnionFind([(t, e) for t in range(self.triangle_count) for e in range(3)])
        for (t, e), (t2, e2, _) in self._gluings.items():
            uf.union((t, e), (t2, e2))
        return uf.classes()

    def euler_characteristic(self) -> int:
        return len(self.vertex_classes()) - len(self.edge_classes()) + self.triangle_count

    def components(self) -> List[List[int]]:
        uf = _UnionFind(list(range(self.triangle_count)))
        for (t, _), (t2, _, _) in self._gluings.items():
            uf.union(t, t2)
        return uf.classes()

    def orientation(self) -> Optional[List[int]]:
        """A consistent +-1 per triangle, or None when nonorientable."""
        orient: List[Optional[int]] = [None] * self.triangle_count
        for start in range(self.triangle_count):
            if orient[start] is not None:
                continue
            orient[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for e in range(3):
                    g = self._gluings.get((t, e))
                    if g is None:
                        continue
                    t2, _, pi = g
                    want = -perm3_sign(pi) * orient[t]
                    if orient[t2] is None:
                        orient[t2] = want
                        stack.append(t2)
                    elif orient[t2] != want:
                        return None
        return orient

    def is_orientable(self) -> bool:
        return self.orientation() is not None

    def boundary_cycles(self) -> List[List[Edge]]:
        """Boundary edges grouped into boundary circles."""
        index = self.vertex_index()
        edges = self.boundary_edges()
        uf = _UnionFind(list(range(len(edges))))
        by_vertex: Dict[int, List[int]] = {}
        for k, (t, e) in enumerate(edges):
            for v in range(3):
                if v != e:
                    by_vertex.setdefault(index[(t, v)], []).append(k)
        for members in by_vertex.values():
            for k in members[1:]:
                uf.union(members[0], k)
        return [[edges[k] for k in cls] for cls in uf.classes()]

    def boundary_walks(self) -> List[List[Tuple[int, int, int]]]:
        """Boundary circles as ordered directed sides (t, u, v), each leaving the vertex the previous one entered."""
        walks = []
        seen = set()
        for t, e in self.boundary_edges():
            if (t, e) in seen:
                continue
            u, v = [i for i in range(3) if i != e]
            walk = []
            side = (t, u, v)
            while (side[0], 3 - side[1] - side[2]) not in seen:
                seen.add((side[0], 3 - side[1] - side[2]))
                walk.append(side)
                side = self._next_boundary_side(*side)
            walks.append(walk)
        return walks

    def _next_boundary_side(self, t: int, u: int, v: int) -> Tuple[int, int, int]:
        cur, corner, came = t, v, u
        for _ in range(3 * self.triangle_count + 1):
            other = 3 - corner - came
            g = self._gluings.get((cur, came))
            if g is None:
                return (cur, corner, other)
            cur, _, pi = g
            corner, came = pi[corner], pi[other]
        raise StructuralError(f"vertex {v} of triangle {t} has no next boundary side")

    def boundary_vertex_classes(self) -> List[int]:
        index = self.vertex_index()
        return sorted({index[(t, v)] for t, e in self.boundary_edges() for v in range(3) if v != e})

    def summary(self) -> SurfaceSummary:
        return SurfaceSummary(
            euler_characteristic=self.euler_characteristic(),
            orientable=self.is_orientable(),
            boundary_count=len(self.boundary_cycles()),
            connected=len(self.components()) <= 1,
        )

    def is_simplicial(self) -> bool:
        index = self.vertex_index()
        edge_ends: Dict[int, frozenset] = {}
        seen_pairs = set()
        seen_triangles = set()
        edge_id = {member: i for i, cls in enumerate(self.edge_classes()) for member in cls}
        for t in range(self.triangle_count):
            verts = [index[(t, v)] for v in range(3)]
            if len(set(verts)) != 3:
                return False
            key = frozenset(verts)
            if key in seen_triangles:
                return False
            seen_triangles.add(key)
            for e in range(3):
                ends = frozenset(verts[v] for v in range(3) if v != e)
                cls = edge_id[(t, e)]
                if cls in edge_ends:
                    continue
                if ends in seen_pairs:
                    return False
                edge_ends[cls] = ends
                seen_pairs.add(ends)
        return True

    def __repr__(self) -> str:
        return f"SurfaceTriangulation(triangles={self.triangle_count}, glued_edges={len(self._gluings)})"


class SurfaceBuilder:
    def __init__(self):
        self.triangle_count = 0
        self._gluings: Dict[Edge, EdgeGluing] = {}

    def add_triangle(self) -> int:
        self.triangle_count += 1
        return self.triangle_count - 1

    def glue_sides(self, t: int, side: Sequence[int], t2: int, side2: Sequence[int]) -> None:
        """Glue the side of t through local vertices side[0], side[1] to side2, matching in order."""
        a, b = side
        c, d = side2
        e = 3 - a - b
        e2 = 3 - c - d
        pi = perm3_from_pairs({a: c, b: d, e: e2})
        if (t, e) in self._gluings or (t2, e2) in self._gluings:
            raise StructuralError(f"edge {t} {e} or {t2} {e2} already glued")
        if (t, e) == (t2, e2):
            raise StructuralError(f"edge {t} {e} glued to itself")
        self._gluings[(t, e)] = (t2, e2, pi)
        self._gluings[(t2, e2)] = (t, e, perm3_inverse(pi))

    def unglue(self, t: int, e: int) -> Optional[EdgeGluing]:
        g = self._gluings.pop((t, e), None)
        if g is not None:
            self._gluings.pop((g[0], g[1]))
        return g

    def gluing(self, t: int, e: int) -> Optional[EdgeGluing]:
        return self._gluings.get((t, e))

    def build(self) -> SurfaceTriangulation:
        return SurfaceTriangulation(self.triangle_count, self._gluings)


def subdivide_surface(surface: SurfaceTriangulation) -> SurfaceTriangulation:
    """Barycentric subdivision: six triangles per triangle.

    Small triangle (t, k) for k in 0..5 has vertices 0 = corner, 1 = edge
    midpoint, 2 = barycentre, on the flag given by the k-th ordering of the
    triangle's labels.
    """
    orders = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    position = {o: k for k, o in enumerate(orders)}
    b = SurfaceBuilder()
    for _ in range(6 * surface.triangle_count):
        b.add_triangle()

    def small(t, order):
        return 6 * t + position[order]

    for t in range(surface.triangle_count):
        for order in orders:
            x, y, z = order
            here = small(t, order)
            # across the ray from corner to barycentre: swap the last two
            partner = small(t, (x, z, y))
            if (here, 1) not in b._gluings:
                b.glue_sides(here, (0, 2), partner, (0, 2))
            # across the ray from midpoint to barycentre: swap the first two
            partner = small(t, (y, x, z))
            if (here, 0) not in b._gluings:
                b.glue_sides(here, (1, 2), partner, (1, 2))
            # across the old edge between x and y
            g = surface.gluing(t, z)
            if g is not None and (here, 2) not in b._gluings:
                t2, _, pi = g
                b.glue_sides(here, (0, 1), small(t2, (pi[x], pi[y], pi[z])), (0, 1))
    return b.build()


def surface_from_names(triangles: Sequence[Sequence[Hashable]]) -> SurfaceTriangulation:
    """Triangles given by vertex names; sides carrying the same pair of names are glued."""
    b = SurfaceBuilder()
    sides: Dict[frozenset, List[Tuple[int, Tuple[int, int]]]] = {}
    for names in triangles:
        if len(names) != 3 or len(set(names)) != 3:
            raise StructuralError(f"a triangle needs three distinct vertex names, got {tuple(names)}")
        t = b.add_triangle()
        for x, y in ((0, 1), (1, 2), (0, 2)):
            sides.setdefault(frozenset((names[x], names[y])), []).append((t, (x, y)))
    for key, found in sides.items():
        if len(found) > 2:
            raise StructuralError(f"{len(found)} triangles share the side {sorted(map(str, key))}")
        if len(found) == 2:
            (t, (x, y)), (t2, (x2, y2)) = found
            if triangles[t][x] == triangles[t2][x2]:
                b.glue_sides(t, (x, y), t2, (x2, y2))
            else:
                b.glue_sides(t, (x, y), t2, (y2, x2))
    return b.build()
