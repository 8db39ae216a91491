from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from src.core.errors import BuildError, VerificationError
from src.core.farey import FareyTriangle, Slope, farey_adjacent
from src.core.homology import PeripheralBasis, peripheral_kernel
from src.core.skeleton import Skeleton, TetEdge, boundary_surface, face_vertices
from src.core.triangulation import Triangulation

Vec = Tuple[int, int]


def _scale(v: Vec, s: int) -> Vec:
    return (s * v[0], s * v[1])


def det(u: Vec, v: Vec) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass
class BuildReport:
    budget: int = 0
    stages: List[Tuple[str, int]] = field(default_factory=list)
    walk: List[FareyTriangle] = field(default_factory=list)

    @property
    def tets_used(self) -> int:
        return sum(k for _, k in self.stages)

    def add(self, name: str, tets: int) -> None:
        self.stages.append((name, tets))

    def extend(self, other: "BuildReport", prefix: str = "") -> None:
        for name, k in other.stages:
            self.stages.append((f"{prefix}{name}", k))

    def within_budget(self) -> bool:
        return self.tets_used <= self.budget

    def lines(self) -> List[str]:
        out = [f"stage {name}: {k} tets" for name, k in self.stages]
        out.append(f"tets used: {self.tets_used}")
        out.append(f"budget: {self.budget}")
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def boundary_components_of(tri: Triangulation) -> List[List[Tuple[int, int]]]:
    boundary = boundary_surface(tri)
    return [[boundary.faces[k] for k in comp] for comp in boundary.surface.components()]


def _face_edges(sk: Skeleton, t: int, f: int) -> List[int]:
    a0, a1, a2 = face_vertices(f)
    return [sk.edge_of[(t, i, j)][0] for i, j in ((a0, a1), (a1, a2), (a0, a2))]


def _face_equation(sk: Skeleton, t: int, f: int) -> Dict[int, int]:
    """d(a0->a1) + d(a1->a2) - d(a0->a2) = 0 as coefficients on edge classes."""
    a0, a1, a2 = face_vertices(f)
    coeffs: Dict[int, int] = {}
    for (i, j), c in (((a0, a1), 1), ((a1, a2), 1), ((a0, a2), -1)):
        k, s = sk.edge_class_of(t, i, j)
        coeffs[k] = coeffs.get(k, 0) + c * s
    return {k: c for k, c in coeffs.items() if c}


def propagate(tri: Triangulation, seeds: Dict[TetEdge, Vec]) -> Dict[TetEdge, Vec]:
    """Vectors of every edge on the boundary components touched by the seeds.

    Each boundary triangle forces the vector of its third edge from the other
    two. Keys of the result are the class representatives, directed i < j.
    """
    sk = Skeleton(tri)
    known: Dict[int, Vec] = {}
    components = boundary_components_of(tri)
    edge_component: Dict[int, int] = {}
    for c, faces in enumerate(components):
        for t, f in faces:
            for k in _face_edges(sk, t, f):
                edge_component[k] = c
    for (t, i, j), vec in seeds.items():
        k, s = sk.edge_class_of(t, i, j)
        if k not in edge_component:
            continue
        value = _scale(vec, s)
        if known.get(k, value) != value:
            raise BuildError(f"conflicting seed vectors on edge {k}")
        known[k] = value
    touched = {edge_component[k] for k in known}
    equations = [_face_equation(sk, t, f) for c in sorted(touched) for t, f in components[c]]

    progress = True
    while progress:
        progress = False
        for eq in equations:
            unknown = [k for k in eq if k not in known]
            if len(unknown) != 1 or abs(eq[unknown[0]]) != 1:
                continue
            k = unknown[0]
            x = -sum(c * known[j][0] for j, c in eq.items() if j != k) * eq[k]
            y = -sum(c * known[j][1] for j, c in eq.items() if j != k) * eq[k]
            known[k] = (x, y)
            progress = True

    for eq in equations:
        if any(k not in known for k in eq):
            raise BuildError("boundary vectors are underdetermined by the seeds")
        total = (sum(c * known[k][0] for k, c in eq.items()), sum(c * known[k][1] for k, c in eq.items()))
        if total != (0, 0):
            raise BuildError("boundary vectors do not close up around a triangle")
    return {sk.edge_classes[k][0]: v for k, v in known.items()}


def vector_of(sk: Skeleton, vectors: Dict[TetEdge, Vec], edge: TetEdge) -> Vec:
    """Vector of a directed tet-edge from class-representative vectors."""
    t, i, j = edge
    k, s = sk.edge_class_of(t, i, j)
    return _scale(vectors[sk.edge_classes[k][0]], s)


@dataclass
class LabeledBoundary:
    """Named boundary edges of one torus component with their vectors in a (mu, lambda) frame.

    A one-vertex torus carries the labels mu, lambda and diag; a strip torus
    coming out of the circle bundle carries mu, section2 and lambda until it
    is reduced.
    """

    triangulation: Triangulation
    edges: Dict[str, TetEdge]
    vectors: Dict[str, Vec]

    def rebind(self, tri: Triangulation) -> "LabeledBoundary":
        return LabeledBoundary(tri, dict(self.edges), dict(self.vectors))

    def all_vectors(self) -> Dict[TetEdge, Vec]:
        return propagate(self.triangulation, {self.edges[k]: self.vectors[k] for k in self.edges})

    @property
    def component(self) -> int:
        sk = Skeleton(self.triangulation)
        target = sk.edge_class_of(*next(iter(self.edges.values())))[0]
        for c, faces in enumerate(boundary_components_of(self.triangulation)):
            if any(target in _face_edges(sk, t, f) for t, f in faces):
                return c
        raise BuildError("labeled edge is not on the boundary")

    def faces(self) -> List[Tuple[int, int]]:
        return boundary_components_of(self.triangulation)[self.component]

    def is_one_vertex(self) -> bool:
        return len(self.faces()) == 2

    @property
    def ledger(self) -> Dict[str, Slope]:
        return {k: Slope.from_vector(*v) for k, v in self.vectors.items() if v != (0, 0)}

    def triangle(self) -> FareyTriangle:
        return FareyTriangle(frozenset(self.ledger.values()))

    def check(self) -> None:
        if not self.is_one_vertex():
            raise VerificationError("labeled boundary", "component is not a one-vertex torus")
        sk = Skeleton(self.triangulation)
        classes = {sk.edge_class_of(*e)[0] for e in self.edges.values()}
        if len(classes) != 3:
            raise VerificationError("labeled boundary", "labels do not name three distinct edges")
        slopes = list(self.ledger.values())
        for a in range(3):
            for b in range(a + 1, 3):
                if not farey_adjacent(slopes[a], slopes[b]):
                    raise VerificationError("labeled boundary", f"slopes {slopes[a]} and {slopes[b]} are not adjacent")
        actual = self.all_vectors()
        for label, edge in self.edges.items():
            if vector_of(sk, actual, edge) != self.vectors[label]:
                raise VerificationError("labeled boundary", f"edge {label} disagrees with its neighbours")

    def basis_labels(self) -> Tuple[str, str]:
        labels = sorted(self.edges)
        for a in labels:
            for b in labels:
                if a != b and det(self.vectors[a], self.vectors[b]) == 1:
                    return a, b
        raise BuildError("no two labeled edges form a positive basis")

    def kernel_slope(self) -> Slope:
        """Peripheral kernel expressed in the (mu, lambda) frame."""
        a, b = self.basis_labels()
        basis = PeripheralBasis(self.component, self.edges[a], self.edges[b])
        k = peripheral_kernel(self.triangulation, basis)
        x, y = k.vector()
        va, vb = self.vectors[a], self.vectors[b]
        return Slope.from_vector(x * va[0] + y * vb[0], x * va[1] + y * vb[1])


def relabel_one_vertex(tri: Triangulation, vectors: Dict[TetEdge, Vec], faces: List[Tuple[int, int]]) -> LabeledBoundary:
    """Label the three edges of a one-vertex torus: mu and lambda closest to the axes, diag the third."""
    sk = Skeleton(tri)
    edges = {}
    for t, f in faces:
        for k in _face_edges(sk, t, f):
            rep = sk.edge_classes[k][0]
            edges[rep] = vectors[rep]
    if len(edges) != 3:
        raise BuildError(f"expected a one-vertex torus, found {len(edges)} boundary edges")
    ordered = sorted(edges.items(), key=lambda kv: (abs(kv[1][1]), abs(kv[1][0]), kv[0]))
    mu = ordered[0]
    rest = sorted(ordered[1:], key=lambda kv: (abs(kv[1][0]), abs(kv[1][1]), kv[0]))
    lam, diag = rest[0], rest[1]
    return LabeledBoundary(
        tri,
        {"mu": mu[0], "lambda": lam[0], "diag": diag[0]},
        {"mu": mu[1], "lambda": lam[1], "diag": diag[1]},
    )
