"""
Error types for the engine.

Every error carries the process exit code the command line reports for it,
the same way request handlers carry a status code.
"""
from typing import Any, Dict, Optional

EXIT_OK = 0
EXIT_PREDICATE_FAILED = 1
EXIT_USAGE = 2
EXIT_UNDECIDABLE = 3


class SyzygyError(Exception):
    """Base error with an exit code and optional structured details"""

    exit_code: int = EXIT_USAGE

    def __init__(self, detail: str, exit_code: Optional[int] = None, details: Optional[Dict[str, Any]] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code
        self.details = details or {}


class UsageError(SyzygyError):
    """Invalid flag combination or violated caller precondition"""


class MalformedInputError(UsageError):
    """Shapes or degrees that cannot describe a valid input"""


class TruncationError(SyzygyError):
    """A computation needs a graded piece beyond the module's degree window"""


class FieldTooSmallError(SyzygyError):
    """Not enough field elements for the requested random draw"""


class DegenerateModelError(SyzygyError):
    """A random model failed certification; the caller should re-draw"""

    def __init__(self, detail: str, seed: Optional[int] = None, details: Optional[Dict[str, Any]] = None):
        super().__init__(detail, details=details)
        self.seed = seed


class EvaluationInjectivityError(SyzygyError):
    """Too few sample points to separate sections of the requested degree"""


class FormulaError(SyzygyError):
    """A closed Betti formula evaluated to a non-integer"""


class ImplementationError(SyzygyError):
    """A mathematically impossible intermediate result"""


class UndecidableError(SyzygyError):
    """The computed window is too small to decide a predicate"""

    exit_code = EXIT_UNDECIDABLE
