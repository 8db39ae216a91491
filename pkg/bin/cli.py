import argparse
import sys
from typing import List, Optional

from src.core.configuration import parse_sfstri_yaml
from src.core.errors import (
    BuildError,
    FareyDepthError,
    KernelRankError,
    PreconditionError,
    StructuralError,
    VerificationError,
)
from src.helpers.logger import configure_logging
from src.use_cases.bound import Bound
from src.use_cases.build import Build
from src.use_cases.grid import Grid
from src.use_cases.homology import Homology
from src.use_cases.lst import LayeredSolidTorus
from src.use_cases.norm import Norm
from src.use_cases.subdivide import Subdivide
from src.use_cases.truncate import Truncate
from src.use_cases.verify import Verify
from src.use_cases.walk import Walk

USE_CASES = {
    "norm": (Norm, "Continued Fraction Norm"),
    "walk": (Walk, "Farey Walk"),
    "lst": (LayeredSolidTorus, "Layered Solid Torus"),
    "build": (Build, "Seifert Fibred Space Build"),
    "verify": (Verify, "Triangulation Verification"),
    "homology": (Homology, "Homology"),
    "subdivide": (Subdivide, "Barycentric Subdivision"),
    "truncate": (Truncate, "Ideal Truncation"),
    "bound": (Bound, "Complexity Bounds"),
    "grid": (Grid, "Acceptance Grid"),
}


# ANSI color codes for terminal output
class Colors:
    RESET = '\033[0m'
    BOLD = '\033[1m'
    BRIGHT_CYAN = '\033[96m'
    BRIGHT_RED = '\033[91m'
    BRIGHT_GREEN = '\033[92m'


def colorized_title(text, color=Colors.BRIGHT_CYAN):
    """Create a colorized title; plain text when stdout is not a terminal."""
    if not sys.stdout.isatty():
        return f"{text}\n" + "=" * len(text)
    return f"{Colors.BOLD}{color}{text}{Colors.RESET}\n" + "=" * len(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sfstri", description="Triangulations of bounded Seifert fibred spaces")
    parser.add_argument("--config-dir", default=".", help="directory holding .sfstri.yaml")
    verbs = parser.add_subparsers(dest="verb", required=True)

    verbs.add_parser("norm", help="continued fraction and norm of q/p").add_argument("slope")
    walk = verbs.add_parser("walk", help="Farey geodesic to q/p")
    walk.add_argument("slope")
    walk.add_argument("--depth", type=int, default=None)

    lst = verbs.add_parser("lst", help="layered solid torus with meridian p mu + q lambda")
    lst.add_argument("p", type=int)
    lst.add_argument("q", type=int)
    lst.add_argument("--out", default=None)

    build = verbs.add_parser("build", help="triangulate Seifert data")
    build.add_argument("seifert")
    build.add_argument("--out", default=None)

    verbs.add_parser("verify", help="validate a triangulation file").add_argument("file")
    homology = verbs.add_parser("homology", help="H_k of a triangulation file")
    homology.add_argument("file")
    homology.add_argument("k", type=int, nargs="?", default=1)

    subdivide = verbs.add_parser("subdivide", help="barycentric subdivision")
    subdivide.add_argument("file")
    subdivide.add_argument("n", type=int, nargs="?", default=1)
    subdivide.add_argument("--out", default=None)

    truncate = verbs.add_parser("truncate", help="truncate an ideal triangulation")
    truncate.add_argument("file")
    truncate.add_argument("--out", default=None)

    verbs.add_parser("bound", help="complexity bounds without building").add_argument("seifert")
    grid = verbs.add_parser(
        "grid", help="build a fixed sweep: each base with no fibres, every single fibre and runs of consecutive fibres"
    )
    grid.add_argument("pmax", type=int, nargs="?", default=None)
    grid.add_argument("chi_min", type=int, nargs="?", default=None)
    grid.add_argument("--workers", type=int, default=None)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        config = parse_sfstri_yaml(args.config_dir)
    except SystemExit as e:
        return int(e.code)
    configure_logging(config.log_level)

    uc_class, title = USE_CASES[args.verb]
    uci = uc_class(config, args)
    if not uci.options.enabled:
        print(f"{args.verb} is disabled in .sfstri.yaml")
        print(f"RESULT fail {args.verb} reason=disabled")
        return 2
    print(colorized_title(title))
    try:
        print(uci.report())
    except (VerificationError, BuildError, KernelRankError) as e:
        print(f"verification failed: {e}")
        invariant = getattr(e, "invariant", type(e).__name__)
        print(f"RESULT fail {args.verb} invariant={invariant.replace(' ', '_')}")
        return 1
    except (StructuralError, PreconditionError, FareyDepthError, OSError) as e:
        print(f"Error: {e}")
        print(f"RESULT fail {args.verb} error={type(e).__name__}")
        return 2
    if not uci.ok and config.fail_on_issues:
        return 1
    return 0


def main():
    """Entry point for the sfstri CLI."""
    sys.exit(run())


# This allows the script to be run directly
if __name__ == "__main__":
    main()
