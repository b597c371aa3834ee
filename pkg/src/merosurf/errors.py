"""Exception hierarchy.

User-facing input problems raise subclasses of InputError (CLI exit code 2).
InternalError subclasses signal a broken invariant inside the library itself
(CLI exit code 3); they should never fire on valid input.
"""


class MerosurfError(Exception):
    pass


class InputError(MerosurfError):
    """Bad data supplied by the caller."""


class MalformedSignature(InputError):
    pass


class InvalidDatum(InputError):
    """A zippered datum that fails validation was passed to a constructor."""


class NonPositiveRealPart(InputError):
    pass


class Disconnected(InputError):
    pass


class OutOfRange(InputError):
    pass


class NotTwoSimplePoles(InputError):
    pass


class NotGenusOne(InputError):
    pass


class GenusZero(InputError):
    pass


class SpinUndefined(InputError):
    pass


class NotClosed(InputError):
    pass


class NoEmbeddedBasis(MerosurfError):
    """The embedded-cycle search failed; recorded explicitly, never guessed."""


class InternalError(MerosurfError):
    """A library invariant broke; indicates a bug, not a user error."""


class AngleNotMultipleOf2Pi(InternalError):
    pass


class EulerMismatch(InternalError):
    pass


class IndexNotInteger(InternalError):
    pass
