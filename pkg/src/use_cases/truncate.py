from src.core.base_usecase import BaseUseCase
from src.core.builders import truncate_ideal
from src.core.homology import homology, ideal_h1
from src.core.skeleton import validate
from src.core.triangulation import read_triangulation


class Truncate(BaseUseCase):
    """Material triangulation of the manifold an ideal triangulation describes."""

    name = "truncate"

    def report(self) -> str:
        ideal = read_triangulation(self.args.file)
        tri, build = truncate_ideal(ideal)
        checked = validate(tri)
        h1 = homology(tri, 1)
        spine = ideal_h1(ideal) if checked.orientable else None
        lines = build.lines()
        lines.extend(checked.lines())
        lines.append(f"H1: {h1}")
        if spine is not None:
            lines.append(f"H1 from the dual spine: {spine}")
        lines.extend(self.emit(tri, "truncated.tri", h1))
        ok = checked.valid_manifold and (spine is None or spine == h1)
        return self.render(lines, ok, ideal_tets=ideal.tet_count, tets=tri.tet_count)
