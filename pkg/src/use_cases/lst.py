from src.core.base_usecase import BaseUseCase
from src.core.builders import standalone_lst
from src.core.farey import Slope
from src.core.homology import homology
from src.core.skeleton import validate


class LayeredSolidTorus(BaseUseCase):
    """Build the layered solid torus with meridian p*mu + q*lambda and check its peripheral kernel."""

    name = "lst"

    def report(self) -> str:
        p, q = self.args.p, self.args.q
        slope = Slope(q, p)
        tri, boundary, build = standalone_lst(slope)
        checked = validate(tri)
        h1 = homology(tri, 1)
        kernel = boundary.kernel_slope()
        lines = build.lines()
        lines.extend(checked.lines())
        lines.append(f"H1: {h1}")
        lines.append(f"peripheral kernel: {kernel.p} mu + {kernel.q} lambda")
        lines.extend(self.emit(tri, f"lst_{p}_{q}.tri", h1))
        ok = (
            checked.valid_manifold
            and checked.orientable
            and h1.rank == 1
            and not h1.invariant_factors
            and kernel == slope
            and build.within_budget()
        )
        return self.render(lines, ok, p=p, q=q, tets=tri.tet_count, budget=build.budget)
