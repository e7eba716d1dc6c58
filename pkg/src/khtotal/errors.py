"""Exception hierarchy for the khtotal package."""


class KhtotalError(Exception):
    """Base class for all khtotal errors."""


# --- diagram errors ---------------------------------------------------------

class MalformedSyntax(KhtotalError):
    """PD text does not conform to the grammar."""


class BadIncidence(KhtotalError):
    """An edge label does not appear exactly twice."""


class EmptyDiagram(KhtotalError):
    """No crossings and no free loops."""


class LengthMismatch(KhtotalError):
    """Resolution choice vector has the wrong length."""


# --- configuration errors ---------------------------------------------------

class NonPlanar(KhtotalError):
    """Configuration fails the genus-0 ribbon check."""


class NotAFace(KhtotalError):
    """Cube vertices u, v do not satisfy u <= v coordinatewise."""


class BadIndex(KhtotalError):
    """Arc index out of range."""


class WrongDimension(KhtotalError):
    """Configuration has the wrong number of arcs for this operation."""


class TooLarge(KhtotalError):
    """Input exceeds a configured size bound."""


# --- linear algebra errors --------------------------------------------------

class BasisMismatch(KhtotalError):
    """Maps are typed on incompatible bases."""


class CircleCollision(KhtotalError):
    """Tensor factors share circle identifiers."""


class NotAComplex(KhtotalError):
    """Consecutive differentials do not compose to zero."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# --- fixtures / uniqueness errors -------------------------------------------

class UnknownFixture(KhtotalError):
    """Fixture family name not recognised."""


class ParamOutOfRange(KhtotalError):
    """Fixture parameter outside its documented range."""


class FixtureRangeError(ParamOutOfRange):
    """Lemma-check parameter outside fixture range."""


class InconsistentFamily(KhtotalError):
    """Dual-partner pairing of a configuration family is not consistent."""
