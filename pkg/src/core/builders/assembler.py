from __future__ import annotations

from typing import Dict, Hashable, List, Sequence, Tuple

from src.core.errors import StructuralError
from src.core.skeleton import TetEdge
from src.core.triangulation import Triangulation, TriangulationBuilder, VertexPerm


class NamedAssembler:
    """Tetrahedra given by four distinct vertex names.

    Faces carrying the same set of names are glued to each other by
    `auto_glue`; anything else is glued explicitly through a name map.
    """

    def __init__(self):
        self.names: List[Tuple[Hashable, ...]] = []
        self._builder = TriangulationBuilder(0)

    def add_tet(self, names: Sequence[Hashable]) -> int:
        names = tuple(names)
        if len(names) != 4 or len(set(names)) != 4:
            raise StructuralError(f"a tetrahedron needs four distinct vertex names, got {names}")
        self.names.append(names)
        return self._builder.add_tet()

    def face_names(self, t: int, f: int) -> frozenset:
        return frozenset(n for i, n in enumerate(self.names[t]) if i != f)

    def auto_glue(self) -> None:
        groups: Dict[frozenset, List[Tuple[int, int]]] = {}
        for t in range(len(self.names)):
            for f in range(4):
                if not self._builder.is_glued(t, f):
                    groups.setdefault(self.face_names(t, f), []).append((t, f))
        for key, faces in groups.items():
            if len(faces) > 2:
                raise StructuralError(f"{len(faces)} faces share the vertex names {sorted(map(str, key))}")
            if len(faces) == 2:
                (t, f), (t2, f2) = faces
                self.glue_by_names(t, f, t2, f2, {n: n for n in key})

    def glue_by_names(self, t: int, f: int, t2: int, f2: int, mapping: Dict[Hashable, Hashable]) -> None:
        """Glue face f of t to face f2 of t2 sending each name of the first face to mapping[name]."""
        src, dst = self.names[t], self.names[t2]
        images = {f: f2}
        for i, name in enumerate(src):
            if i != f:
                images[i] = dst.index(mapping[name])
        self._builder.glue(t, f, t2, VertexPerm.from_mapping(images))

    def free_faces(self) -> Dict[frozenset, Tuple[int, int]]:
        out = {}
        for t in range(len(self.names)):
            for f in range(4):
                if not self._builder.is_glued(t, f):
                    out[self.face_names(t, f)] = (t, f)
        return out

    def edge(self, a: Hashable, b: Hashable) -> TetEdge:
        """A directed tet-edge running from the vertex named a to the one named b."""
        for t, names in enumerate(self.names):
            if a in names and b in names:
                return (t, names.index(a), names.index(b))
        raise StructuralError(f"no tetrahedron contains both {a} and {b}")

    @property
    def tet_count(self) -> int:
        return len(self.names)

    def build(self) -> Triangulation:
        return self._builder.build()
