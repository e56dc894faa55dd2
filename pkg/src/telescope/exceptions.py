"""Exception hierarchy shared by all telescope modules."""


class TelescopeError(Exception):
    """Base class for every error raised by this package."""


class DataError(TelescopeError, ValueError):
    """Input data violates a precondition (maps to CLI exit code 2)."""


class EmptySeries(DataError):
    def __init__(self):
        super().__init__("series is empty")


class NonFinite(DataError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"non-finite value at index {index}")


class NonPositiveValue(DataError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"value at index {index} is not strictly positive")


class TooShort(DataError):
    pass


class PeriodTooLargeForSeries(DataError):
    pass


class SchemaMismatch(DataError):
    pass


class TooFewRows(DataError):
    pass


class LengthMismatch(DataError):
    pass


class EmptyCorpus(DataError):
    pass


class RecommenderNotTrained(TelescopeError):
    pass
