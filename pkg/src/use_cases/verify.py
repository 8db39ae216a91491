from src.core.base_usecase import BaseUseCase
from src.core.homology import homology_all
from src.core.skeleton import validate
from src.core.triangulation import read_triangulation


class Verify(BaseUseCase):
    name = "verify"

    def report(self) -> str:
        tri = read_triangulation(self.args.file)
        checked = validate(tri)
        lines = checked.lines()
        if checked.valid_manifold:
            groups = homology_all(tri)
            lines.extend(f"H{k}: {g}" for k, g in enumerate(groups))
        return self.render(lines, checked.valid_manifold, tets=tri.tet_count, valid="yes" if checked.valid_manifold else "no")
