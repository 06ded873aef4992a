#! /usr/bin/python3

class ParseError(Exception):
    def __init__(self, msg, position=None):
        if position is not None:
            msg = '{} (at position {})'.format(msg, position)
        super(ParseError, self).__init__(msg)
        self.position = position

class TermError(Exception):
    pass

class OpenTermError(TermError):
    def __init__(self, msg, free=None):
        super(OpenTermError, self).__init__(msg)
        self.free = free

class SizeTooLargeError(TermError):
    pass

class PreconditionError(Exception):
    pass

class DeterminismError(Exception):
    pass

class MachineError(Exception):
    pass

class MalformedStateError(MachineError):
    pass

class DualityViolation(MachineError):
    pass

class UsageError(Exception):
    pass

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
