"""Exception types raised by orbihom."""


class OrbihomError(Exception):
    """Base class for all library errors."""


class ValidationError(OrbihomError):
    """A complex, map or chain complex violates a structural axiom."""


class NonDivisibleChain(ValidationError):
    def __init__(self, simplex, weights):
        self.simplex = tuple(simplex)
        self.weights = tuple(weights)
        super().__init__(
            f"vertex weights {list(self.weights)} of simplex {list(self.simplex)} "
            "admit no divisibility chain"
        )


class FaceDivisibilityViolation(ValidationError):
    def __init__(self, face, face_weight, simplex, weight):
        self.face = tuple(face)
        self.simplex = tuple(simplex)
        super().__init__(
            f"weight {face_weight} of face {list(self.face)} does not divide "
            f"weight {weight} of simplex {list(self.simplex)}"
        )


class UnknownVertex(ValidationError):
    pass


class SimplexNotInComplex(ValidationError):
    pass


class NotDivisiblyWeighted(ValidationError):
    pass


class NotASubcomplex(ValidationError):
    pass


class CompositionNotZero(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidMap(ValidationError):
    pass


class MorphismOnStHomology(OrbihomError):
    """Morphisms do not induce maps on stratified homology."""


class InvalidSpec(OrbihomError):
    pass


class ParseError(OrbihomError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
