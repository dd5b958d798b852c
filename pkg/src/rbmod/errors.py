"""Exception hierarchy.  The CLI maps ``ParseError`` to exit 2 and ``DomainError`` to exit 1."""


class RBModError(Exception):
    """Base class for every error raised by the package."""


class ParseError(RBModError, ValueError):
    """Malformed text input; ``position`` is a 0-based character offset when known."""

    def __init__(self, message: str, position: int | None = None, source: str | None = None,
                 line: int | None = None):
        self.message = message
        self.position = position
        self.source = source
        self.line = line
        # compiler style: source:line:col, with "col N" alone for bare strings
        where = [str(source)] if source is not None else []
        if line is not None:
            where.append(str(line))
            if position is not None:
                where.append(str(position + 1))
        elif position is not None:
            where.append(f"col {position + 1}")
        self.location = ":".join(where) if where else None
        super().__init__(f"{message} (at {self.location})" if where else message)


class ScalarSyntaxError(ParseError):
    pass


class ModuleFileError(ParseError):
    pass


class DomainError(RBModError, ValueError):
    """Well-formed input that violates a mathematical precondition."""


class ScalarDomainError(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class SingularMatrixError(DomainError):
    pass


class SpanMismatch(DomainError):
    """The A-spans of an (M, N) pair do not split V as M~ + V0 + N~ with A M_f = A N_f."""


class SingularShapeMismatch(DomainError):
    """The k[t^-1]-part is not a complement of the O-lattice inside V0."""


class NoRegularPart(DomainError):
    pass


class ScalarDivisionByZero(ScalarDomainError, ZeroDivisionError):
    """Inverting the zero scalar."""
