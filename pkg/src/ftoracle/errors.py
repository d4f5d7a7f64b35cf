"""Exception hierarchy."""


class FtOracleError(Exception):
    """Base class for every error raised by this package."""


class GraphError(FtOracleError, ValueError):
    """The graph violates a structural requirement (self-loop, duplicate, ...)."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}" + (f", column {column}" if column else "")
        super().__init__(f"{where}: {message}")


class ContractError(FtOracleError, ValueError):
    """A precondition of an operation was violated by the caller."""


class ParameterError(FtOracleError, ValueError):
    pass


class BuildError(FtOracleError):
    """Preprocessing cannot proceed (e.g. a bridge in strict mode)."""


class QueryError(FtOracleError, ValueError):
    pass


class ContainerError(FtOracleError):
    """Unreadable, corrupt or mismatched oracle container."""


class LowerBoundError(FtOracleError, ValueError):
    """Infeasible lower-bound parameters."""
