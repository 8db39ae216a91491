from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.core.errors import PreconditionError, StructuralError, TriangulationParseError

_ALL_PERMS = [tuple(p) for p in permutations(range(4))]
_PERM_INDEX = {p: i for i, p in enumerate(_ALL_PERMS)}


@dataclass(frozen=True)
class VertexPerm:
    """A permutation of the vertex labels {0,1,2,3}; images[i] is the image of i."""

    images: Tuple[int, int, int, int]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != [0, 1, 2, 3]:
            raise StructuralError(f"not a permutation of 0123: {self.images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def parse(cls, text: str) -> "VertexPerm":
        if len(text) != 4 or not text.isdigit():
            raise StructuralError(f"permutation must be four digits, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_index(cls, index: int) -> "VertexPerm":
        return cls(_ALL_PERMS[index])

    @classmethod
    def all(cls) -> List["VertexPerm"]:
        return [cls(p) for p in _ALL_PERMS]

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "VertexPerm":
        """Complete a partial injective map on {0,1,2,3} (three or four entries)."""
        images = dict(mapping)
        missing_src = [i for i in range(4) if i not in images]
        missing_dst = [i for i in range(4) if i not in images.values()]
        if len(missing_src) != len(missing_dst) or len(missing_src) > 1:
            raise StructuralError(f"cannot complete {mapping} to a permutation")
        for s, d in zip(missing_src, missing_dst):
            images[s] = d
        return cls(tuple(images[i] for i in range(4)))

    @property
    def index(self) -> int:
        return _PERM_INDEX[self.images]

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "VertexPerm") -> "VertexPerm":
        """self after other."""
        return VertexPerm(tuple(self.images[other.images[i]] for i in range(4)))

    def inverse(self) -> "VertexPerm":
        inv = [0] * 4
        for i, j in enumerate(self.images):
            inv[j] = i
        return VertexPerm(tuple(inv))

    def sign(self) -> int:
        inversions = sum(
            1 for i in range(4) for j in range(i + 1, 4) if self.images[i] > self.images[j]
        )
        return -1 if inversions % 2 else 1

    def __str__(self) -> str:
        return "".join(str(i) for i in self.images)


IDENTITY = VertexPerm((0, 1, 2, 3))
SWAP01 = VertexPerm((1, 0, 2, 3))

Face = Tuple[int, int]
Gluing = Tuple[int, int, VertexPerm]


class Triangulation:
    """Tetrahedra 0..n-1 with face pairings.

    Face f of a tetrahedron is the face opposite vertex f. A gluing
    (t, f) -> (t2, f2, sigma) sends vertex i of t to vertex sigma(i) of t2,
    with sigma(f) == f2.
    """

    def __init__(self, tet_count: int, gluings: Mapping[Face, Gluing]):
        self._n = int(tet_count)
        self._gluings: Dict[Face, Gluing] = dict(gluings)
        self._check()

    def _check(self):
        if self._n < 0:
            raise StructuralError("negative tetrahedron count")
        for (t, f), (t2, f2, sigma) in self._gluings.items():
            if not (0 <= t < self._n and 0 <= t2 < self._n and 0 <= f < 4 and 0 <= f2 < 4):
                raise StructuralError(f"gluing {t} {f} -> {t2} {f2} out of range")
            if (t, f) == (t2, f2):
                raise StructuralError(f"face {t} {f} glued to itself")
            if sigma(f) != f2:
                raise StructuralError(f"gluing {t} {f} -> {t2} {f2} has permutation {sigma} not sending {f} to {f2}")
            back = self._gluings.get((t2, f2))
            if back is None or back[0] != t or back[1] != f or back[2] != sigma.inverse():
                raise StructuralError(f"gluing {t} {f} -> {t2} {f2} is not an involution")

    @property
    def tet_count(self) -> int:
        return self._n

    @property
    def gluings(self) -> Mapping[Face, Gluing]:
        return dict(self._gluings)

    def gluing(self, t: int, f: int) -> Optional[Gluing]:
        return self._gluings.get((t, f))

    def boundary_faces(self) -> List[Face]:
        return [(t, f) for t in range(self._n) for f in range(4) if (t, f) not in self._gluings]

    def is_closed(self) -> bool:
        return len(self._gluings) == 4 * self._n

    def builder(self) -> "TriangulationBuilder":
        b = TriangulationBuilder(self._n)
        b._gluings = dict(self._gluings)
        return b

    def components(self) -> List[List[int]]:
        seen = [False] * self._n
        result = []
        for start in range(self._n):
            if seen[start]:
                continue
            seen[start] = True
            stack, comp = [start], []
            while stack:
                t = stack.pop()
                comp.append(t)
                for f in range(4):
                    g = self._gluings.get((t, f))
                    if g and not seen[g[0]]:
                        seen[g[0]] = True
                        stack.append(g[0])
            result.append(sorted(comp))
        return result

    def relabel(self, order: Sequence[int], perms: Sequence[VertexPerm]) -> "Triangulation":
        """Tetrahedron t becomes order[t]; its vertex i becomes perms[t](i)."""
        if sorted(order) != list(range(self._n)) or len(perms) != self._n:
            raise PreconditionError("relabel needs a permutation of the tetrahedra and one VertexPerm each")
        glued = {}
        for (t, f), (t2, f2, sigma) in self._gluings.items():
            new_sigma = perms[t2].compose(sigma).compose(perms[t].inverse())
            glued[(order[t], perms[t](f))] = (order[t2], perms[t2](f2), new_sigma)
        return Triangulation(self._n, glued)

    def mirror(self) -> "Triangulation":
        """The same complex with every tetrahedron relabeled by an odd permutation."""
        return self.relabel(list(range(self._n)), [SWAP01] * self._n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Triangulation) and self._n == other._n and self._gluings == other._gluings

    def __hash__(self) -> int:
        return hash((self._n, frozenset((k, v[0], v[1], v[2].images) for k, v in self._gluings.items())))

    def __repr__(self) -> str:
        return f"Triangulation(tets={self._n}, glued_faces={len(self._gluings)})"


class TriangulationBuilder:
    """Mutable handle producing immutable Triangulation values."""

    def __init__(self, tet_count: int = 0):
        self.tet_count = tet_count
        self._gluings: Dict[Face, Gluing] = {}

    def add_tet(self) -> int:
        self.tet_count += 1
        return self.tet_count - 1

    def is_glued(self, t: int, f: int) -> bool:
        return (t, f) in self._gluings

    def gluing(self, t: int, f: int) -> Optional[Gluing]:
        return self._gluings.get((t, f))

    def glue(self, t: int, f: int, t2: int, sigma: VertexPerm) -> None:
        f2 = sigma(f)
        if (t, f) == (t2, f2):
            raise StructuralError(f"face {t} {f} glued to itself")
        for face in ((t, f), (t2, f2)):
            if face in self._gluings:
                raise StructuralError(f"face {face[0]} {face[1]} is already glued")
        self._gluings[(t, f)] = (t2, f2, sigma)
        self._gluings[(t2, f2)] = (t, f, sigma.inverse())

    def unglue(self, t: int, f: int) -> None:
        g = self._gluings.pop((t, f))
        self._gluings.pop((g[0], g[1]))

    def build(self) -> Triangulation:
        return Triangulation(self.tet_count, self._gluings)


def disjoint_union(*parts: Triangulation) -> Tuple[Triangulation, List[int]]:
    """Union of the parts and the offset at which each part's tetrahedra start."""
    offsets, glued, total = [], {}, 0
    for part in parts:
        offsets.append(total)
        for (t, f), (t2, f2, sigma) in part.gluings.items():
            glued[(t + total, f)] = (t2 + total, f2, sigma)
        total += part.tet_count
    return Triangulation(total, glued), offsets


def to_text(tri: Triangulation) -> str:
    lines = [f"tri {tri.tet_count}"]
    for (t, f), (t2, f2, sigma) in sorted(tri.gluings.items(), key=lambda kv: kv[0]):
        lines.append(f"{t} {f} : {t2} {f2} {sigma}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Triangulation:
    lines = [(i + 1, line.strip()) for i, line in enumerate(text.splitlines())]
    lines = [(n, line) for n, line in lines if line and not line.startswith("#")]
    if not lines:
        raise TriangulationParseError("empty input", 1)
    header_line, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "tri" or not parts[1].isdigit():
        raise TriangulationParseError(f"expected 'tri <count>', got {header!r}", header_line)
    n = int(parts[1])

    entries: Dict[Face, Tuple[int, int, VertexPerm, int]] = {}
    for line_no, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != 6 or tokens[2] != ":":
            raise TriangulationParseError(f"expected '<t> <f> : <t2> <f2> <perm>', got {line!r}", line_no)
        try:
            t, f, t2, f2 = int(tokens[0]), int(tokens[1]), int(tokens[3]), int(tokens[4])
            sigma = VertexPerm.parse(tokens[5])
        except (ValueError, StructuralError) as e:
            raise TriangulationParseError(str(e), line_no) from e
        if not (0 <= t < n and 0 <= t2 < n and 0 <= f < 4 and 0 <= f2 < 4):
            raise TriangulationParseError(f"face out of range in {line!r}", line_no)
        if (t, f) == (t2, f2):
            raise TriangulationParseError(f"face {t} {f} glued to itself", line_no)
        if sigma(f) != f2:
            raise TriangulationParseError(f"permutation {sigma} does not send face {f} to {f2}", line_no)
        if (t, f) in entries:
            raise TriangulationParseError(f"face {t} {f} glued twice", line_no)
        entries[(t, f)] = (t2, f2, sigma, line_no)

    for (t, f), (t2, f2, sigma, line_no) in entries.items():
        back = entries.get((t2, f2))
        if back is None:
            raise TriangulationParseError(f"gluing {t} {f} -> {t2} {f2} has no reverse line", line_no)
        if back[0] != t or back[1] != f or back[2] != sigma.inverse():
            raise TriangulationParseError(f"gluing {t} {f} -> {t2} {f2} is not an involution", line_no)
    return Triangulation(n, {k: v[:3] for k, v in entries.items()})


def write_triangulation(tri: Triangulation, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_text(tri))


def read_triangulation(path) -> Triangulation:
    with open(path, "r", encoding="utf-8") as f:
        return from_text(f.read())


_ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+-"


def _encode(value: int, width: int) -> str:
    digits = []
    for _ in range(width):
        value, r = divmod(value, 64)
        digits.append(_ALPHABET[r])
    return "".join(reversed(digits))


def _decode(chunk: str) -> int:
    value = 0
    for c in chunk:
        value = value * 64 + _ALPHABET.index(c)
    return value


def _relabeled_table(tri: Triangulation, start: int, perm: VertexPerm, best: Optional[List[int]]):
    """Gluing table under breadth-first relabeling from (start, perm).

    Returns None as soon as the table is known to exceed best.
    """
    n = tri.tet_count
    new_index = {start: 0}
    labeling = {start: perm}
    order = [start]
    table: List[int] = []
    pos = 0
    equal_so_far = best is not None
    for old in order:
        pi = labeling[old]
        pi_inv = pi.inverse()
        for new_face in range(4):
            g = tri.gluing(old, pi_inv(new_face))
            if g is None:
                entry = (n, 0)
            else:
                t2, _, sigma = g
                if t2 not in new_index:
                    new_index[t2] = len(order)
                    order.append(t2)
                    labeling[t2] = pi.compose(sigma.inverse())
                entry = (new_index[t2], labeling[t2].compose(sigma).compose(pi_inv).index)
            for value in entry:
                table.append(value)
                if equal_so_far:
                    if value > best[pos]:
                        return None
                    if value < best[pos]:
                        equal_so_far = False
                pos += 1
    return table


def canonical_signature(tri: Triangulation) -> str:
    """Relabeling-invariant string: equal iff the triangulations are isomorphic."""
    n = tri.tet_count
    if n and len(tri.components()) != 1:
        raise PreconditionError("canonical signature needs a connected triangulation")
    best: Optional[List[int]] = None
    for start in range(n):
        for perm in VertexPerm.all():
            table = _relabeled_table(tri, start, perm, best)
            if table is not None and (best is None or table < best):
                best = table
    width = 1
    while 64 ** width <= max(n, 23):
        width += 1
    body = "".join(_encode(v, width) for v in (best or []))
    return "sig:" + _ALPHABET[width] + _encode(n, width) + body


def parse_signature(signature: str) -> Triangulation:
    if not signature.startswith("sig:") or len(signature) < 6:
        raise StructuralError(f"not a signature: {signature!r}")
    body = signature[4:]
    try:
        width = _ALPHABET.index(body[0])
        n = _decode(body[1:1 + width])
        values = [_decode(body[i:i + width]) for i in range(1 + width, len(body), width)]
    except ValueError as e:
        raise StructuralError(f"bad signature character in {signature!r}") from e
    if width == 0 or len(values) != 8 * n:
        raise StructuralError(f"signature length does not match {n} tetrahedra")
    gluings = {}
    for k in range(4 * n):
        t, f = divmod(k, 4)
        dest, perm_index = values[2 * k], values[2 * k + 1]
        if dest < n:
            sigma = VertexPerm.from_index(perm_index)
            gluings[(t, f)] = (dest, sigma(f), sigma)
    return Triangulation(n, gluings)
