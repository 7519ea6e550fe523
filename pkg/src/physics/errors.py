"""Exception hierarchy for the correlation library."""


class QCorrError(Exception):
    """Base error; `error_code` mirrors the codes reported by the CLI."""

    error_code = "QCORR_ERROR"


class OutOfRangeError(QCorrError, ValueError):
    """A parameter lies outside its admissible interval."""

    error_code = "OUT_OF_RANGE"

    def __init__(self, field: str, value: float, bounds: str):
        self.field = field
        self.value = value
        super().__init__(f"{field}={value!r} outside {bounds}")


class NotHermitianError(QCorrError, ValueError):
    """Matrix asymmetry exceeds the Hermiticity tolerance."""

    error_code = "NOT_HERMITIAN"


class InvalidStateError(QCorrError, ValueError):
    """Matrix is not a valid density matrix (or not of the expected shape)."""

    error_code = "INVALID_STATE"


class InvalidChannelError(QCorrError, ValueError):
    """Kraus operators do not sum to the identity."""

    error_code = "INVALID_CHANNEL"


class TheoremNotApplicableError(QCorrError):
    """Neither optimal-measurement condition holds; use the brute-force search."""

    error_code = "THEOREM_NOT_APPLICABLE"
