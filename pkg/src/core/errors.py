class SfsTriError(Exception):
    """Base class of every error raised by sfstri."""


class StructuralError(SfsTriError):
    """Gluing data is malformed (not an involution, self-glued face, bad permutation)."""


class TriangulationParseError(StructuralError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class PreconditionError(SfsTriError, ValueError):
    """An operation was called outside of its domain."""


class FareyDepthError(SfsTriError):
    def __init__(self, depth: int):
        super().__init__(f"depth insufficient (depth={depth})")
        self.depth = depth


class KernelRankError(SfsTriError):
    def __init__(self, rank: int):
        super().__init__(f"kernel rank {rank}")
        self.rank = rank


class BuildError(SfsTriError):
    """A construction could not realize its contract."""


class VerificationError(SfsTriError):
    def __init__(self, invariant: str, detail: str = ""):
        message = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(message)
        self.invariant = invariant
