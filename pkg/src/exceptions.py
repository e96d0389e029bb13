"""
Error types for the Figurate Toolkit
"""
from typing import Optional


class FigurateError(Exception):
    """Base error for every toolkit failure"""


class InvalidKindError(FigurateError, ValueError):
    """Unknown figurate family or polygonal order below 3"""


class InvalidArgumentError(FigurateError, ValueError):
    """Argument outside the operation's domain"""


class NotAPosetError(FigurateError):
    """Generator relations violate antisymmetry"""


class UnknownElementError(FigurateError, KeyError):
    """Element label not present in the poset"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown element"


class IncompleteRepresentationError(FigurateError):
    """Representation does not cover every element"""


class PartitionParseError(FigurateError):
    """Partition text could not be read back"""


class TableShapeError(FigurateError):
    """Rows handed to the table emitter are ragged"""


class PosetParseError(FigurateError):
    """Malformed poset file"""

    def __init__(self, message: str, line: int, column: int = 1, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")
