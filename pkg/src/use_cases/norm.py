from src.core.base_usecase import BaseUseCase
from src.core.farey import Slope, complement_slope, continued_fraction, norm, parse_slope


class Norm(BaseUseCase):
    """Continued fraction and norm of a slope q/p."""

    name = "norm"

    def report(self) -> str:
        slope = parse_slope(self.args.slope)
        value = norm(slope)
        cf = continued_fraction(Slope(abs(slope.q), slope.p))
        lines = [f"{cf} norm={value}"]
        if 0 < slope.q < slope.p:
            other = complement_slope(slope)
            lines.append(f"complement {other}: norm={norm(other)}")
        return self.render(lines, slope=slope, norm=value)
