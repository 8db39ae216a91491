from src.core.base_usecase import BaseUseCase
from src.core.seifert import parse_seifert, theorem_bound_report


class Bound(BaseUseCase):
    name = "bound"

    def report(self) -> str:
        bound = theorem_bound_report(parse_seifert(self.args.seifert))
        return self.render(bound.lines(), upper=bound.upper_bound, proxy=bound.proxy)
