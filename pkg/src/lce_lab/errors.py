"""Exception hierarchy shared by all lab modules."""


class LabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LabError):
    """Input outside an operation's mathematical domain (non-dyadic, out of range)."""


class ConfigError(LabError):
    """Invalid configuration: bad constants, malformed entries, unusable files."""


class PreconditionError(LabError):
    """A caller-supplied function violated a validated precondition (e.g. monotonicity)."""


class DegenerateApproximationError(LabError):
    """An approximation reached its limit, so a gap or ratio is undefined."""


class WitnessDegenerateError(LabError):
    """A witness produced no positive residual at any string of the requested length."""


class SearchExhaustedError(LabError):
    """An index search hit its cap before the required inequality was met."""


class PrefixFreeError(LabError):
    """A machine table is not prefix-free; carries the offending code pair."""

    def __init__(self, shorter: str, longer: str):
        self.pair = (shorter, longer)
        super().__init__(f"prefix violation ({shorter}, {longer})")


class MachineFormatError(LabError):
    """A machine file or table is structurally invalid (duplicate or non-binary codes)."""


class ConstructionError(LabError):
    """A machine construction failed; carries the offending source codes."""

    def __init__(self, message: str, codes=()):
        self.codes = tuple(codes)
        super().__init__(message)
