"""
Domain Errors

Every failure the toolkit reports on purpose derives from CycleToolError.
The command line maps each family onto its own exit status.
"""

from typing import Optional


class CycleToolError(Exception):
    """Base class for toolkit errors"""


class ConfigError(CycleToolError):
    """
    A run configuration could not be parsed or validated

    Attributes:
        field: Dotted path of the offending field, if known
        line: 1-based source line in the config file, if known
    """

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if field:
            location.append(f"field '{field}'")
        if line is not None:
            location.append(f"line {line}")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


class OutOfRangeError(CycleToolError, ValueError):
    """An input lies outside the modelled range"""


class NotApplicableError(CycleToolError, ValueError):
    """A correlation was asked for outside its domain"""


class FuelNotFoundError(CycleToolError, LookupError):
    """Unknown fuel name"""

    def __init__(self, name: str, available: list):
        self.name = name
        self.available = list(available)
        super().__init__(f"unknown fuel '{name}'; available: {', '.join(self.available)}")

    def __str__(self) -> str:
        # LookupError would otherwise repr() the message
        return self.args[0]


class InvalidRatioError(CycleToolError, ValueError):
    """A pressure or bypass ratio is outside its physical domain"""


class InfeasibleCycleError(CycleToolError):
    """
    The cycle cannot be closed at some station

    Attributes:
        station: Station identifier where the cycle broke down (may be None
            until run_cycle attaches it)
    """

    def __init__(self, message: str, station=None):
        self.station = station
        self.reason = message
        super().__init__(self._format())

    def _format(self) -> str:
        if self.station is None:
            return self.reason
        label = getattr(self.station, "label", str(self.station))
        return f"station {label}: {self.reason}"

    def at_station(self, station) -> "InfeasibleCycleError":
        """Return a copy of this error tagged with the failing station"""
        if self.station is not None:
            return self
        return InfeasibleCycleError(self.reason, station=station)


class UndefinedMetricError(CycleToolError, ValueError):
    """A performance metric has no finite value for this cycle"""


class DegenerateColumnError(CycleToolError, ValueError):
    """A decision-matrix column cannot be normalized"""

    def __init__(self, criterion: str):
        self.criterion = criterion
        super().__init__(f"criterion '{criterion}' has an all-zero column")
