"""Exception hierarchy shared by every layer of the engine."""


class SatnormError(Exception):
    """Base class for all engine errors."""


class PolySyntaxError(SatnormError, ValueError):
    pass


class UnknownVariable(SatnormError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NonPrimeCharacteristicLiteral(SatnormError, ValueError):
    """A rational literal whose denominator vanishes in the prime field."""


class RingMismatch(SatnormError, TypeError):
    pass


class AmbientMismatch(SatnormError, TypeError):
    pass


class InvalidMorphism(SatnormError, ValueError):
    pass


class CompositionMismatch(SatnormError, ValueError):
    pass


class InvalidSequence(SatnormError, ValueError):
    pass


class NonCommuting(SatnormError, ValueError):
    pass


class NotMonomial(SatnormError, ValueError):
    pass


class InvalidWitness(SatnormError, ValueError):
    pass


class SchemaError(SatnormError, ValueError):
    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class ValidationError(SatnormError, ValueError):
    pass


class UnresolvedReference(SatnormError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
