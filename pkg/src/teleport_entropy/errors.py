"""Exception types raised by the simulator."""


class TeleportEntropyError(ValueError):
    """Base class for all errors raised by this package."""


class NotHermitian(TeleportEntropyError):
    pass


class DimensionOverflow(TeleportEntropyError):
    pass


class DimensionMismatch(TeleportEntropyError):
    pass


class NotNormalized(TeleportEntropyError):
    pass


class ArityMismatch(TeleportEntropyError):
    pass


class UnknownLabel(TeleportEntropyError):
    pass


class EmptyKeepSet(TeleportEntropyError):
    pass


class EmptyMeasureSet(TeleportEntropyError):
    pass


class InconsistentOutcomes(TeleportEntropyError):
    pass


class BadPartition(TeleportEntropyError):
    pass


class OverlappingSets(TeleportEntropyError):
    pass


class WrongRegister(TeleportEntropyError):
    pass


class UnknownQuantity(TeleportEntropyError):
    pass


class UnknownStage(TeleportEntropyError):
    pass
