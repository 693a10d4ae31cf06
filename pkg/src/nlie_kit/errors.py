"""Exception types shared across the package."""


class NLieError(Exception):
    pass


class ArityError(NLieError, ValueError):
    pass


class ShapeError(NLieError, ValueError):
    pass


class IndexPatternError(NLieError, IndexError):
    pass


class ConsistencyError(NLieError, RuntimeError):
    """A constructed object failed an internal exact check."""


class ParseError(NLieError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
