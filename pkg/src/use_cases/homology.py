from src.core.base_usecase import BaseUseCase
from src.core.homology import homology
from src.core.triangulation import read_triangulation


class Homology(BaseUseCase):
    name = "homology"

    def report(self) -> str:
        tri = read_triangulation(self.args.file)
        k = self.args.k
        group = homology(tri, k)
        return self.render([f"H{k}: {group}"], k=k, group=str(group).replace(" ", ""))
