"""Exception types shared across the engine."""


class NetshareError(Exception):
    """Base class for all engine errors."""


class DomainError(NetshareError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BracketError(NetshareError):
    """Root finding was given (or could not discover) a sign-changing bracket."""


class ConvergenceError(NetshareError):
    """An iterative routine hit its iteration cap before converging."""


class DegenerateMonopolyError(NetshareError):
    """Monopoly pricing requested with zero unit cost (price formula degenerates)."""


class DegenerateEquilibriumError(NetshareError):
    """The closed-form quantity ratio is undefined for these cost parameters."""


class NoDriveOutError(NetshareError):
    """No quantity exists at which the aggressor shuts the rival out of the market."""


class NonMonotoneThresholdError(NetshareError):
    """The rival's best-attainable profit does not cross zero exactly once."""


class ExternalityBasisError(NetshareError):
    """A competitive-basis profit split was requested but no equilibrium exists."""


class NoCapError(NetshareError):
    """Regulated sharing needs a competitive price cap but the equilibrium is non-viable."""


class StructureError(NetshareError):
    """Parameters fall outside the regime the price-competition construction covers."""


class WrongScenarioError(NetshareError):
    """A multi-region operation was called with an incompatible footprint shape."""


class ConfigError(NetshareError):
    """Scenario document is malformed or violates a parameter invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
