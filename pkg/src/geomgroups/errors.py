"""Exception types shared across the package."""


class GeomError(Exception):
    """Base class for every error raised by geomgroups."""


class TreeSyntaxError(GeomError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class WordSyntaxError(GeomError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class MalformedPolish(GeomError, ValueError):
    def __init__(self, position):
        super().__init__(f"malformed Polish expression at position {position}")
        self.position = position


class EmptyInput(GeomError, ValueError):
    pass


class AddressOutsideSkeleton(GeomError, KeyError):
    def __init__(self, address):
        super().__init__(f"address {address or 'e'!s} is outside the skeleton")
        self.address = address

    def __str__(self):
        return self.args[0]


class UnboundLabel(GeomError, KeyError):
    def __init__(self, label):
        super().__init__(f"substitution is not defined on label {label!r}")
        self.label = label

    def __str__(self):
        return self.args[0]


class NonInjectiveLabels(GeomError, ValueError):
    pass


class UndefinedAction(GeomError):
    """A generator (or a prefix of a word) does not apply to a tree.

    ``prefix`` is the length of the shortest undefined prefix of the word,
    i.e. the position (from 1) of the failing letter; ``None`` for a single
    generator.
    """

    def __init__(self, gen, address, reason, prefix=None):
        where = address or "e"
        msg = f"{gen} undefined: {reason} at address {where}"
        if prefix is not None:
            msg += f" (undefined prefix of length {prefix})"
        super().__init__(msg)
        self.gen = gen
        self.address = address
        self.reason = reason
        self.prefix = prefix


class NonCancellativeBracket(GeomError):
    pass


class UnexpandedAlias(GeomError, ValueError):
    pass


class NoHeir(GeomError):
    pass


class CapExceeded(GeomError):
    def __init__(self, count, cap):
        super().__init__(f"orbit exploration exceeded cap {cap} ({count} states found)")
        self.count = count
        self.cap = cap


class TwistedNotSupported(GeomError):
    pass


class SigmaHasNoLinearExpansion(GeomError):
    pass


class OverlappingSets(GeomError, ValueError):
    pass


class DomainNeverIntersects(GeomError):
    pass


class CarrierMismatch(GeomError, TypeError):
    pass


class BudgetExhausted(GeomError):
    pass


class ProbeUnstable(GeomError):
    pass


class NotAnFSeed(GeomError, ValueError):
    pass
