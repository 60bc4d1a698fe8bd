"""Exception types shared by all modules."""


class CatGaloisError(Exception):
    """Base class for every error raised by the package."""


class ParseError(CatGaloisError):
    pass


class AxiomViolation(CatGaloisError):
    """A signature axiom fails; ``witness`` is the first failing tuple."""

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"axiom {axiom!r} fails at {self.witness}")


class NotNormal(CatGaloisError):
    pass


class NotSurjective(CatGaloisError):
    pass


class NotCommutative(CatGaloisError):
    pass


class AmbientMismatch(CatGaloisError):
    pass


class TooLarge(CatGaloisError):
    pass


class BasisMismatch(CatGaloisError):
    pass


class InternalMismatch(CatGaloisError):
    """Two independent computations of the same object disagree."""


class NotNormalExtension(CatGaloisError):
    pass


class NotBCentral(CatGaloisError):
    pass


class NotBirkhoffInner(CatGaloisError):
    pass
