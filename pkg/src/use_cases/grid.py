import multiprocessing
from dataclasses import dataclass
from typing import List

from src.core.base_usecase import BaseUseCase
from src.core.builders import build_sfs
from src.core.errors import SfsTriError
from src.core.seifert import format_seifert, grid_instances, parse_seifert, upper_bound
from src.helpers.logger import get_logger

logger = get_logger(__name__)


@dataclass
class GridRow:
    data: str
    tets: int
    bound: int
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        text = f"{status}  {self.data}  tets={self.tets} bound={self.bound}"
        return f"{text}  {self.detail}" if self.detail else text


def run_instance(text: str) -> GridRow:
    """Build and verify one instance; build_sfs raises on any violated check."""
    d = parse_seifert(text)
    try:
        tri, _ = build_sfs(d)
    except SfsTriError as e:
        logger.warning("grid instance %s failed: %s", text, e)
        return GridRow(text, 0, upper_bound(d), False, str(e))
    return GridRow(text, tri.tet_count, upper_bound(d), True)


class Grid(BaseUseCase):
    """Build the deterministic sweep from grid_instances and tabulate pass/fail."""

    name = "grid"

    def report(self) -> str:
        options = self.config.grid
        pmax = self.args.pmax if self.args.pmax is not None else options.pmax
        chi_min = self.args.chi_min if self.args.chi_min is not None else options.chi_min
        workers = self.args.workers if self.args.workers is not None else options.workers
        instances = [
            format_seifert(d)
            for d in grid_instances(pmax, chi_min, options.b_max, options.max_fibres, options.orientable_only)
        ]
        logger.info("grid: %d instances on %d workers", len(instances), workers)

        rows: List[GridRow]
        if workers > 1:
            with multiprocessing.Pool(processes=workers) as pool:
                rows = pool.map(run_instance, instances)
        else:
            rows = [run_instance(text) for text in instances]

        failed = [r for r in rows if not r.passed]
        worst = max((r.tets / r.bound for r in rows if r.passed), default=0.0)
        lines = [r.line() for r in rows]
        lines.append(f"instances: {len(rows)} passed: {len(rows) - len(failed)} failed: {len(failed)}")
        lines.append(f"largest tets/bound: {worst:.3f}")
        return self.render(lines, not failed, pmax=pmax, chi_min=chi_min, instances=len(rows), failed=len(failed))
