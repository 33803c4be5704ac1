class TwistRankError(ValueError):
    """Base class for domain errors raised by this package."""


class TwoTorsionError(TwistRankError):
    """A Kummer coordinate is the image of a 2-torsion point (or infinity)."""


class BadReductionError(TwistRankError):
    """The requested prime is not a prime of good reduction."""


class ScanExhaustedError(TwistRankError):
    """A prime scan reached its configured bound without success."""


class CertificateError(TwistRankError):
    """A serialized certificate does not re-verify."""
