from src.core.base_usecase import BaseUseCase
from src.core.farey import INFINITY, best_start, format_walk, farey_line_distance_oracle, norm, parse_slope


class Walk(BaseUseCase):
    """Farey geodesic from the cheaper base triangle, checked against the dual-tree oracle."""

    name = "walk"

    def report(self) -> str:
        slope = parse_slope(self.args.slope)
        depth = self.args.depth if self.args.depth is not None else self.config.farey_depth
        start, walk = best_start(slope)
        length = len(walk) - 1
        distance = farey_line_distance_oracle(INFINITY, slope, depth)
        lines = [
            f"start: {start}",
            f"walk: {format_walk(walk)}",
            f"length: {length}",
            f"oracle distance from 1/0: {distance}",
        ]
        ok = length == distance == norm(slope) - 1
        return self.render(lines, ok, slope=slope, length=length)
