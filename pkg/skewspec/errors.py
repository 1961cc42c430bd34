from typing import Optional, Tuple

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_SIZE_LIMIT = 3


class SkewSpecError(Exception):
    """
    Base class for every error raised by the library.

    Each subclass carries the exit code the command-line surface returns
    when the error reaches it.
    """

    exit_code = EXIT_INPUT


class GraphError(SkewSpecError):
    """A graph or orientation violates its structural invariants."""


class NotBipartite(GraphError):
    def __init__(self, edge: Tuple[int, int]):
        self.edge = edge
        super().__init__(f"graph is not bipartite: edge {edge[0]}-{edge[1]} closes an odd cycle")


class NotRegular(GraphError):
    def __init__(self, degrees: Tuple[int, ...]):
        self.degrees = degrees
        super().__init__(f"graph is not regular (degrees range {min(degrees, default=0)}..{max(degrees, default=0)})")


class WrongCompleteOrder(GraphError):
    pass


class NotSkewSymmetric(SkewSpecError):
    pass


class DimensionMismatch(SkewSpecError):
    pass


class InvalidSpectrum(SkewSpecError):
    pass


class OrderMismatch(SkewSpecError):
    pass


class UnknownFamily(SkewSpecError):
    pass


class ConfigError(SkewSpecError):
    pass


class GraphParseError(SkewSpecError):
    """Malformed graph file; ``line_no`` is 1-based, or None for whole-document errors."""

    def __init__(self, message: str, line_no: Optional[int] = None, source: str = "<input>"):
        self.line_no = line_no
        self.source = source
        where = f"{source}:{line_no}" if line_no is not None else source
        super().__init__(f"{where}: {message}")


class SizeLimit(SkewSpecError):
    exit_code = EXIT_SIZE_LIMIT

    def __init__(self, what: str, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"{what} {size} exceeds the size limit {limit}")


class NonConvergence(SkewSpecError):
    exit_code = EXIT_FAILURE

    def __init__(self, sweeps: int, residual: float):
        self.sweeps = sweeps
        self.residual = residual
        super().__init__(f"Jacobi iteration did not converge after {sweeps} sweeps (residual {residual:.3e})")


class CertificateFailed(SkewSpecError):
    exit_code = EXIT_FAILURE


class ConstructionMismatch(SkewSpecError):
    """The arc-rule construction and the matrix formula produced different matrices."""

    exit_code = EXIT_FAILURE


class MatrixOverflow(SkewSpecError):
    exit_code = EXIT_FAILURE


class NotSymmetric(SkewSpecError):
    pass
