"""Exception hierarchy shared by every module."""


class OospcError(Exception):
    """Base class for all errors raised by this package."""


class AmbientMismatchError(OospcError):
    """Two objects live over different groups Z_m x Z_n."""


class ParameterError(OospcError, ValueError):
    """Numeric parameters violate a stated hypothesis."""


class ParseError(OospcError, ValueError):
    """A design file does not conform to the schema.

    ``path`` is a JSON-pointer-like location of the offending value.
    """

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class HypothesisError(OospcError):
    """An input design fails a structural hypothesis of a construction."""


class ConstructionError(OospcError):
    """A construction stage produced (or was fed) a design that does not verify."""

    def __init__(self, message, stage=None, report=None):
        self.stage = stage
        self.report = report
        prefix = f"[{stage}] " if stage else ""
        super().__init__(prefix + message)
