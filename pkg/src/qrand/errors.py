"""Exception hierarchy shared by all qrand modules.

Every error raised by the library derives from QrandError so callers (and
the CLI) can distinguish domain failures from programming errors.
"""


class QrandError(Exception):
    """Base class for all library errors."""


class DimensionError(QrandError):
    """Operands have incompatible lengths or dimensions."""


class UnsupportedDegreeError(QrandError):
    """Requested field extension degree is outside the supported range."""


class InternalInvariantError(QrandError):
    """A compiled-in constant failed its load-time verification."""


class CapacityError(QrandError):
    """Input is too large for the exhaustive/dense code path."""


class InvalidTestError(QrandError):
    """A statistical test was requested with a degenerate witness."""


class SymmetryError(QrandError):
    """Matrix input is not Hermitian within tolerance."""


class NotAbelianError(QrandError):
    """Generator set contains an anti-commuting pair."""


class DependentGeneratorsError(QrandError):
    """Generator rows are linearly dependent over GF(2)."""


class InconsistentSignsError(QrandError):
    """Sign assignment stabilizes the zero subspace."""


class NotApplicableError(QrandError):
    """Operation requires provenance data the object does not carry."""
