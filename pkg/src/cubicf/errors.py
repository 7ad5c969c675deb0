"""Exception types shared across the package."""


class CubicfError(Exception):
    """Base class for every error raised by this package."""


class ZeroPolynomialError(CubicfError):
    pass


class DegreeError(CubicfError):
    pass


class DegreeDropError(CubicfError):
    """A fractional-linear substitution lowered the degree (root at the pole)."""


class EndpointRootError(CubicfError):
    """A Sturm-count endpoint is a root; the caller must perturb it."""


class NotSquarefreeError(CubicfError):
    pass


class RootSelectionError(CubicfError):
    pass


class ReducibleInputError(CubicfError):
    """An irrational root was required but the selected root is rational."""


class RationalElementError(CubicfError):
    pass


class CubicRequiredError(CubicfError):
    """Raised by facilities that are specific to degree-3 inputs."""


class PolyParseError(CubicfError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class EngineInvariantError(CubicfError):
    """An exact internal invariant failed; this always indicates a bug."""


class CrossCheckError(EngineInvariantError):
    """The carried tail polynomial disagrees with its direct recomputation."""
