"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PhotonSpinorError(Exception):
    """Base class for all domain errors raised by the package."""


class ConfigError(PhotonSpinorError):
    """Malformed run configuration or input file."""


class ZeroWaveVector(PhotonSpinorError):
    """A polarization construction received k = 0."""


class GridMismatch(PhotonSpinorError):
    """Two grid fields (or a field and its samples) do not share a grid."""


class BoundaryUnsupported(PhotonSpinorError):
    """The requested boundary treatment is not implemented."""


class IncommensurateMode(PhotonSpinorError):
    """A wave vector is not a lattice vector of the periodic box."""


class AsymmetricGrid(PhotonSpinorError):
    """The grid is not symmetric under x -> -x."""


class NonTransverseInput(PhotonSpinorError):
    """The field carries a divergence above the transversality tolerance.

    Attributes
    ----------
    div_e, div_h : float
        Max-norm of the finite-difference divergence of E and H.
    report : object or None
        The certificate computed before the check tripped, for inspection.
    """

    def __init__(self, message: str, div_e: float, div_h: float, report=None):
        super().__init__(message)
        self.div_e = div_e
        self.div_h = div_h
        self.report = report


class NonPositiveMedium(PhotonSpinorError):
    """Permittivity or permeability is not strictly positive."""


class SVEAViolated(PhotonSpinorError):
    """The slowly varying envelope ratios exceed the configured threshold."""


class DegenerateMass(PhotonSpinorError):
    """The effective mass vanishes where the envelope equation divides by it."""


class DomainViolation(PhotonSpinorError):
    """A coordinate lies outside the chart (horizon or coordinate singularity)."""


class InvalidAngularMomentum(PhotonSpinorError):
    """Angular momentum parameter below the m^2 >= 4 threshold."""


class RootNotBracketed(PhotonSpinorError):
    """No sign change of the target function was found on the scan.

    Attributes
    ----------
    scan : list of (float, float)
        Sampled abscissae and function values used for bracketing.
    """

    def __init__(self, message: str, scan=None):
        super().__init__(message)
        self.scan = scan or []


class ExpressionError(ConfigError):
    """Syntax or evaluation error in a profile expression string."""
