"""Exception types shared across the package."""


class BudgetExceededError(RuntimeError):
    """An exact enumeration would exceed its configured point budget."""


class CertificationError(RuntimeError):
    """Positivity could not be certified at the maximum grid refinement."""


class InstanceInvalidError(RuntimeError):
    """A problem instance violates one of the hypotheses it was assumed to satisfy."""


class InstanceFormatError(ValueError):
    """An instance file is malformed; the message names the offending key."""


class ScaleLimitError(RuntimeError):
    """Form values over the requested dilation would leave the 64-bit fast path."""


class BadPrimeError(RuntimeError):
    """The first-order Euler factor formula does not apply at this prime; use the exact route."""
