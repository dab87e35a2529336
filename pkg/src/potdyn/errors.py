"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain where a quantity is defined.

    ``field`` names the offending parameter when one can be singled out.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class UnsupportedRegimeError(DomainError):
    """The operation is undefined for the stability regime of the system."""


class UnknownUnitError(DomainError):
    """A unit (or unit pair) is not in the conversion registry."""


class UnknownPresetError(DomainError):
    """No preset is registered under the requested id."""


class TableParseError(ValueError):
    """A CSV row could not be parsed; ``row`` is the 1-based data row index."""

    def __init__(self, message, row=None):
        super().__init__(message if row is None else f"row {row}: {message}")
        self.row = row


class TableWarning(UserWarning):
    """Non-fatal validation finding in ingested table data."""


class StepSizeWarning(UserWarning):
    """Integration step exceeds the recommended fraction of the turnover times."""
