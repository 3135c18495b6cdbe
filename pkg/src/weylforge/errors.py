class WeylForgeError(Exception):
    """Base class for all library errors."""


class DecompositionFailure(WeylForgeError):
    """A KAK reconstruction missed its tolerance after all degeneracy handling.

    This indicates a numerical bug rather than bad input.
    """


class NotLocallyEquivalent(WeylForgeError):
    pass


class NotEntangling(WeylForgeError):
    pass


class OutOfReach(WeylForgeError):
    """Target class is not generated by the given pair of interaction strengths."""


class MalformedCircuit(WeylForgeError):
    pass
