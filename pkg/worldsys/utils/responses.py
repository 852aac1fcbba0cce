"""
Error classes, exit codes and report envelopes shared by every command
"""
from typing import Any, Dict, Optional, Type
import logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_VALIDATION = 5
EXIT_NUMERICAL = 6
EXIT_STEP_FAILED = 7


class WorldSysError(Exception):
    """Base error; carries the process exit code and optional details"""
    exit_code: int = EXIT_UNEXPECTED

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        data = {"error": type(self).__name__, "message": self.message}
        if self.details:
            data["details"] = self.details
        return data


class DataIOError(WorldSysError):
    """Missing, unreadable or unwritable path"""
    exit_code = EXIT_IO


class DataParseError(WorldSysError):
    """Malformed CSV row or parameter line"""
    exit_code = EXIT_PARSE


class InputValidationError(WorldSysError):
    """Input parses but violates an invariant"""
    exit_code = EXIT_VALIDATION


class NumericalAbort(WorldSysError):
    """A computation stopped on a numerical condition"""
    exit_code = EXIT_NUMERICAL


class BlowUpError(NumericalAbort):
    """State left the overflow guard or became non-finite"""

    def __init__(self, message: str, year: float, trace: Any = None,
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, {"year": year, **(details or {})})
        self.year = year
        self.trace = trace


class NegativeSurplusError(NumericalAbort):
    """Surplus reached zero or below (Malthusian floor)"""

    def __init__(self, message: str, year: float, trace: Any = None):
        super().__init__(message, {"year": year})
        self.year = year
        self.trace = trace


class PositivityError(NumericalAbort):
    """A state variable that must stay positive did not"""

    def __init__(self, message: str, year: float, trace: Any = None):
        super().__init__(message, {"year": year})
        self.year = year
        self.trace = trace


class SearchFailureError(NumericalAbort):
    """Objective non-finite over the whole search bracket"""


class TrendDomainError(NumericalAbort, ValueError):
    """Trend evaluated at or beyond its singularity"""


class DegenerateDataError(NumericalAbort, ValueError):
    """Zero variance, all-equal design or singular normal matrix"""


def error_response(
    message: str,
    error_cls: Type[WorldSysError] = WorldSysError,
    details: Optional[Dict] = None
) -> WorldSysError:
    """Log an error and raise it as ``error_cls``"""
    logger.error(f"{error_cls.__name__}: {message} - {details}")
    raise error_cls(message, details)

