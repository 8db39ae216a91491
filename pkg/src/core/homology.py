from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from src.core.errors import KernelRankError, PreconditionError, VerificationError
from src.core.farey import Slope
from src.core.skeleton import Skeleton, TetEdge, boundary_surface, face_vertices, tet_orientation
from src.core.triangulation import Triangulation
from src.helpers.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in factors):
            raise PreconditionError(f"invariant factors must be >= 2, got {factors}")
        if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            raise PreconditionError(f"invariant factors {factors} do not form a divisibility chain")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_diagonal(cls, generators: int, diagonal: Sequence[int]) -> "AbelianGroup":
        """Cokernel of a relation matrix on `generators` generators with the given SNF diagonal."""
        nonzero = [abs(d) for d in diagonal if d]
        return cls(generators - len(nonzero), tuple(sorted(d for d in nonzero if d > 1)))

    @property
    def order(self) -> Optional[int]:
        if self.rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class IntMatrix:
    entries: Tuple[Tuple[int, ...], ...]
    cols: int = 0

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        width = len(rows[0]) if rows else self.cols
        if any(len(r) != width for r in rows):
            raise PreconditionError("ragged matrix")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "cols", width)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int = 0) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows), cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def to_lists(self) -> List[List[int]]:
        return [list(r) for r in self.entries]

    def as_array(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=object).reshape(self.rows, self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        product = self.as_array().dot(other.as_array())
        return IntMatrix.from_rows(product.tolist(), other.cols)

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise PreconditionError("determinant of a non-square matrix")
        if self.rows == 0:
            return 1
        return int(sympy.Matrix(self.to_lists()).det())


@dataclass
class SmithForm:
    factors: List[int]
    diagonal: IntMatrix
    U: IntMatrix
    V: IntMatrix

    def verify(self, m: IntMatrix) -> None:
        if self.U @ m @ self.V != self.diagonal:
            raise VerificationError("smith form", "U*M*V differs from the diagonal")
        for name, t in (("U", self.U), ("V", self.V)):
            if abs(t.determinant()) != 1:
                raise VerificationError("smith form", f"{name} is not unimodular")


def _diagonalize(a: List[List[int]], rows: int, cols: int, track: bool):
    """In-place Smith reduction of a; returns (diagonal, U, V)."""
    u = [[int(i == j) for j in range(rows)] for i in range(rows)] if track else None
    v = [[int(i == j) for j in range(cols)] for i in range(cols)] if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            if track:
                u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        if k:
            for row in a:
                row[dst] += k * row[src]
            if track:
                for row in v:
                    row[dst] += k * row[src]

    diagonal = []
    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return diagonal, u, v
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            while True:
                pivot = a[t][t]
                for i in range(t + 1, rows):
                    add_row(i, t, -(a[i][t] // pivot))
                for j in range(t + 1, cols):
                    add_col(j, t, -(a[t][j] // pivot))
                rest = [(abs(a[i][t]), i, None) for i in range(t + 1, rows) if a[i][t]]
                rest += [(abs(a[t][j]), None, j) for j in range(t + 1, cols) if a[t][j]]
                if not rest:
                    break
                _, i, j = min(rest, key=lambda r: r[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
            pivot = a[t][t]
            offender = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % pivot),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
        diagonal.append(a[t][t])
    return diagonal, u, v


def smith_normal_form(m: IntMatrix) -> SmithForm:
    a = m.to_lists()
    diagonal, u, v = _diagonalize(a, m.rows, m.cols, track=True)
    return SmithForm(
        factors=diagonal,
        diagonal=IntMatrix.from_rows(a, m.cols),
        U=IntMatrix.from_rows(u, m.rows),
        V=IntMatrix.from_rows(v, m.cols),
    )


SparseRows = List[Dict[int, int]]


def invariant_factors(rows: SparseRows) -> List[int]:
    """Nonzero SNF diagonal of a sparse integer matrix, ones included.

    Unit pivots are eliminated sparsely first; whatever is left goes through
    the dense reduction.
    """
    live: Dict[int, Dict[int, int]] = {r: {c: x for c, x in row.items() if x} for r, row in enumerate(rows)}
    live = {r: row for r, row in live.items() if row}
    cols: Dict[int, set] = {}
    for r, row in live.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    units = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(live):
            row = live.get(r)
            if row is None:
                continue
            unit_cols = [c for c, x in row.items() if abs(x) == 1]
            if not unit_cols:
                continue
            c = min(unit_cols, key=lambda col: len(cols[col]))
            x = row[c]
            for r2 in list(cols[c]):
                if r2 == r:
                    continue
                other = live[r2]
                k = other[c] * x
                for c2, y in row.items():
                    value = other.get(c2, 0) - k * y
                    if value:
                        if c2 not in other:
                            cols.setdefault(c2, set()).add(r2)
                        other[c2] = value
                    elif c2 in other:
                        del other[c2]
                        cols[c2].discard(r2)
                if not other:
                    del live[r2]
            for c2 in row:
                cols[c2].discard(r)
            del live[r]
            units += 1
            progress = True

    remaining_cols = sorted({c for row in live.values() for c in row})
    position = {c: i for i, c in enumerate(remaining_cols)}
    dense = [[0] * len(remaining_cols) for _ in live]
    for i, row in enumerate(live.values()):
        for c, x in row.items():
            dense[i][position[c]] = x
    diagonal, _, _ = _diagonalize(dense, len(dense), len(remaining_cols), track=False)
    return [1] * units + sorted(diagonal)


@dataclass
class ChainComplex:
    """Boundary maps over the orbit classes; boundary[k][c] is the sparse boundary of k-cell c."""

    sizes: Tuple[int, int, int, int]
    boundary: Dict[int, SparseRows] = field(default_factory=dict)

    def dense(self, k: int) -> IntMatrix:
        """The k-th boundary map as a (k-1)-cells by k-cells matrix."""
        rows = self.sizes[k - 1]
        out = [[0] * self.sizes[k] for _ in range(rows)]
        for c, col in enumerate(self.boundary[k]):
            for r, x in col.items():
                out[r][c] = x
        return IntMatrix.from_rows(out, self.sizes[k])


def _add(vec: Dict[int, int], key: int, value: int) -> None:
    total = vec.get(key, 0) + value
    if total:
        vec[key] = total
    else:
        vec.pop(key, None)


def chain_complex(tri: Triangulation, sk: Optional[Skeleton] = None) -> ChainComplex:
    sk = sk or Skeleton(tri)
    cx = ChainComplex((len(sk.vertex_classes), len(sk.edge_classes), len(sk.face_classes), tri.tet_count))
    d1 = []
    for k in range(len(sk.edge_classes)):
        tail, head = sk.edge_endpoints(k)
        col: Dict[int, int] = {}
        _add(col, head, 1)
        _add(col, tail, -1)
        d1.append(col)
    d2 = []
    for cls in sk.face_classes:
        t, f = cls[0]
        a0, a1, a2 = face_vertices(f)
        col = {}
        for (i, j), coeff in (((a1, a2), 1), ((a0, a2), -1), ((a0, a1), 1)):
            k, s = sk.edge_of[(t, i, j)]
            _add(col, k, coeff * s)
        d2.append(col)
    d3 = []
    for t in range(tri.tet_count):
        col = {}
        for f in range(4):
            k, s = sk.face_of[(t, f)]
            _add(col, k, (-1) ** f * s)
        d3.append(col)
    cx.boundary = {1: d1, 2: d2, 3: d3}
    return cx


def homology_all(tri: Triangulation) -> List[AbelianGroup]:
    """H0..H3 of the glued complex."""
    cx = chain_complex(tri)
    factors = {k: invariant_factors(cx.boundary[k]) for k in (1, 2, 3)}
    factors[0] = []
    factors[4] = []
    groups = []
    for k in range(4):
        rank = cx.sizes[k] - len(factors[k]) - len(factors[k + 1])
        torsion = tuple(sorted(d for d in factors[k + 1] if d > 1))
        groups.append(AbelianGroup(rank, torsion))
    if groups[1].rank > 6 * tri.tet_count:
        raise VerificationError("H1 rank bound", f"rank {groups[1].rank} exceeds 6 x {tri.tet_count}")
    return groups


def homology(tri: Triangulation, k: int) -> AbelianGroup:
    if k not in (0, 1, 2, 3):
        raise PreconditionError(f"homology degree must be 0..3, got {k}")
    return homology_all(tri)[k]


def ideal_h1(tri: Triangulation) -> AbelianGroup:
    """H1 of the manifold an ideal triangulation describes, via its dual spine."""
    if not tri.is_closed():
        raise PreconditionError("an ideal triangulation has no boundary faces")
    if tet_orientation(tri) is None:
        raise PreconditionError("dual spine homology is computed for orientable triangulations")
    cx = chain_complex(tri)
    d2 = invariant_factors(cx.boundary[2])
    r3 = len(invariant_factors(cx.boundary[3]))
    return AbelianGroup(cx.sizes[2] - r3 - len(d2), tuple(sorted(d for d in d2 if d > 1)))


def edge_chain(sk: Skeleton, edge: TetEdge) -> Dict[int, int]:
    """The 1-chain of a directed tet-edge (t, i, j)."""
    t, i, j = edge
    k, s = sk.edge_class_of(t, i, j)
    return {k: s}


@dataclass(frozen=True)
class PeripheralBasis:
    """Two directed boundary tet-edges whose classes form a basis of a boundary torus."""

    component: int
    mu: TetEdge
    lam: TetEdge

    def validate(self, tri: Triangulation) -> None:
        sk = Skeleton(tri)
        boundary = boundary_surface(tri)
        components = boundary.surface.components()
        if not 0 <= self.component < len(components):
            raise PreconditionError(f"no boundary component {self.component}")
        faces = [boundary.faces[k] for k in components[self.component]]
        relations = []
        edges = set()
        for t, f in faces:
            a0, a1, a2 = face_vertices(f)
            row: Dict[int, int] = {}
            for (i, j), coeff in (((a1, a2), 1), ((a0, a2), -1), ((a0, a1), 1)):
                k, s = sk.edge_of[(t, i, j)]
                edges.add(k)
                _add(row, k, coeff * s)
            relations.append(row)
        mu, lam = edge_chain(sk, self.mu), edge_chain(sk, self.lam)
        if not set(mu) <= edges or not set(lam) <= edges:
            raise PreconditionError("basis edges are not on the chosen boundary component")
        if set(mu) == set(lam):
            raise PreconditionError("mu and lambda are the same edge class")
        if len(edges) != 3 or len(faces) != 2:
            raise PreconditionError("peripheral bases live on one-vertex boundary tori")
        if invariant_factors(relations + [mu, lam]) != [1, 1, 1]:
            raise PreconditionError("mu and lambda do not form a basis of the boundary torus")


def peripheral_kernel(tri: Triangulation, basis: PeripheralBasis) -> Slope:
    """Primitive (p, q) with p*mu + q*lambda null-homologous over Q in tri."""
    basis.validate(tri)
    sk = Skeleton(tri)
    cx = chain_complex(tri, sk)
    form = smith_normal_form(cx.dense(2))
    rank = len(form.factors)
    vectors = []
    for edge in (basis.mu, basis.lam):
        chain = edge_chain(sk, edge)
        vectors.append([sum(row[k] * x for k, x in chain.items()) for row in form.U.entries])
    system = [(vectors[0][i], vectors[1][i]) for i in range(rank, cx.sizes[1])]
    system = [row for row in system if row != (0, 0)]
    if not system:
        raise KernelRankError(2)
    alpha, beta = system[0]
    if any(alpha * y - beta * x for x, y in system[1:]):
        raise KernelRankError(0)
    x, y = beta, -alpha
    g = gcd(x, y)
    logger.debug("peripheral kernel of %d-tet triangulation: (%d, %d)", tri.tet_count, x // g, y // g)
    return Slope.from_vector(x // g, y // g)
