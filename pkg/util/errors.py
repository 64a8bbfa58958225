"""
Exception hierarchy shared by every module.

Each error maps to a CLI exit code and knows how to describe itself as a
machine-readable payload, so engine.py never has to inspect messages.
"""


class RainbowError(Exception):
    exit_code = 1
    kind = 'error'

    def payload(self):
        return {}

    def to_json(self):
        out = {'error': self.kind, 'message': str(self)}
        out.update(self.payload())
        return out


class BudgetExceeded(RainbowError):
    """A search hit its node / partition / enumeration cap.

    `best` is the best value known when the search stopped, `proven` tells
    whether that value is already certified optimal, `emitted` counts the
    objects produced by a stream before it was cut.
    """
    exit_code = 2
    kind = 'budget'

    def __init__(self, message, best=None, proven=False, emitted=None):
        super(BudgetExceeded, self).__init__(message)
        self.best = best
        self.proven = proven
        self.emitted = emitted

    def payload(self):
        return {'best': self.best, 'proven': self.proven, 'emitted': self.emitted}


class Graph6ParseError(RainbowError, ValueError):
    exit_code = 3
    kind = 'parse'

    def __init__(self, message, offset):
        super(Graph6ParseError, self).__init__(f'{message} (offset {offset})')
        self.offset = offset

    def payload(self):
        return {'offset': self.offset}


class DomainError(RainbowError, ValueError):
    """Parameters outside the domain of an operation (k = 0, infeasible m, ...)."""
    exit_code = 3
    kind = 'domain'


class InvariantViolation(RainbowError, AssertionError):
    exit_code = 4
    kind = 'invariant'


class ColoringError(InvariantViolation):
    kind = 'coloring'
