"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Dimensions of the inputs do not fit together."""


class StructureIncomplete(ValueError):
    """A multiplication component needed for an evaluation is missing."""


class InvalidStructure(ValueError):
    """A functor was handed a structure that fails its validator.

    The failing report is kept on ``.report`` so callers can show witnesses.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConsistencyError(RuntimeError):
    """An internal invariant that should hold by construction did not."""


class PathError(ValueError):
    """A round-trip path chains functors whose kinds do not match."""


class SchemaError(ValueError):
    """A structure file does not follow the JSON schema."""
