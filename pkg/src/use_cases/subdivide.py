from src.core.base_usecase import BaseUseCase
from src.core.homology import homology
from src.core.moves import barycentric_subdivide
from src.core.skeleton import validate
from src.core.triangulation import read_triangulation


def _invariants(report, h1):
    return (
        report.euler_characteristic,
        report.orientable,
        sorted(c.describe() for c in report.boundary_components),
        h1,
    )


class Subdivide(BaseUseCase):
    """Repeated barycentric subdivision with a check that nothing topological moved."""

    name = "subdivide"

    def report(self) -> str:
        tri = read_triangulation(self.args.file)
        rounds = self.args.n
        before = validate(tri)
        h1 = homology(tri, 1)
        expected = _invariants(before, h1)
        lines = [f"round 0: {tri.tet_count} tets, chi {before.euler_characteristic}, H1 {h1}"]
        ok = True
        current = tri
        for k in range(1, rounds + 1):
            previous = current.tet_count
            current = barycentric_subdivide(current)
            checked = validate(current)
            found = _invariants(checked, homology(current, 1))
            same = found == expected and current.tet_count == 24 * previous
            ok = ok and same
            lines.append(
                f"round {k}: {current.tet_count} tets, chi {checked.euler_characteristic}, "
                f"H1 {found[3]}, {'invariant' if same else 'CHANGED'}"
            )
        lines.extend(self.emit(current, f"subdivided_{rounds}.tri", h1))
        return self.render(lines, ok, rounds=rounds, tets=current.tet_count)
