import os
from argparse import Namespace
from typing import List

from src.core.configuration import BaseOptions, Configuration
from src.core.homology import AbelianGroup, homology
from src.core.skeleton import validate
from src.core.triangulation import Triangulation, read_triangulation, write_triangulation


class BaseUseCase:
    name = ""

    def __init__(self, config: Configuration, args: Namespace):
        self.config = config
        self.args = args
        self.options: BaseOptions = getattr(config.use_case_options, self.name, BaseOptions())
        self.ok = True

    # Returns the report text; its last line is the RESULT line
    def report(self) -> str:
        raise NotImplementedError("Subclasses must implement the report method")

    def result(self, ok: bool = True, **fields) -> str:
        self.ok = self.ok and ok
        status = "ok" if self.ok else "fail"
        pairs = " ".join(f"{k}={v}" for k, v in fields.items())
        return f"RESULT {status} {self.name} {pairs}".rstrip()

    def render(self, lines: List[str], ok: bool = True, **fields) -> str:
        return "\n".join([*lines, self.result(ok, **fields)])

    def output_path(self, default_name: str) -> str:
        out = getattr(self.args, "out", None)
        if out:
            return out
        os.makedirs(self.config.output_dir, exist_ok=True)
        return os.path.join(self.config.output_dir, default_name)

    def emit(self, tri: Triangulation, default_name: str, h1: AbelianGroup) -> List[str]:
        """Write tri and check that the file reads back as a valid manifold with the same H1."""
        path = self.output_path(default_name)
        write_triangulation(tri, path)
        again = read_triangulation(path)
        checked = validate(again)
        reread_h1 = homology(again, 1)
        self.ok = self.ok and again == tri and checked.valid_manifold and reread_h1 == h1
        return [f"written: {path}", f"reread: {'ok' if self.ok else 'mismatch'} (H1 = {reread_h1})"]
