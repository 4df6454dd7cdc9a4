class SpectraError(Exception):
    pass


class LiteralError(SpectraError):

    def __init__(self, message: str, position: int = -1):
        self.position = position
        if position >= 0:
            message = f'{message} (at column {position})'
        super().__init__(message)


class PartialSequenceError(SpectraError):

    def __init__(self, message: str = 'sequence has no periodic tail; complete it with extremal_tail first'):
        super().__init__(message)


class ComparisonError(SpectraError):
    pass


class LedgerFormatError(SpectraError):

    def __init__(self, message: str, line_no: int = 0):
        self.line_no = line_no
        if line_no:
            message = f'line {line_no}: {message}'
        super().__init__(message)


class ResourceBudgetError(SpectraError):

    def __init__(self, count: int, budget: int):
        self.count = count
        self.budget = budget
        super().__init__(f'live window count {count} exceeds budget {budget}')


class VerificationError(SpectraError):

    def __init__(self, message: str, value=None):
        self.value = value
        super().__init__(message)


class ThresholdError(SpectraError):
    pass


class EmptySubshiftError(SpectraError):
    pass


class ConfigError(SpectraError):
    pass
