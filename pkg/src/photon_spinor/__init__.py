"""Six-component spinor electrodynamics.

The electromagnetic field is carried as a six-component spinor in either
the standard layout ``(E, iH)/sqrt(2)`` or the chiral Riemann-Silberstein
layout.  Submodules:

``algebra``        beta/alpha/Sigma matrices, generators, identity checks
``polarization``   linear and circular polarization bases, mode spinors
``field``          grid fields, plane-wave synthesis, residuals, observables
``symmetries``     P, T, C, chiral and gauge transforms, Lorentz certificate
``medium``         Dirac-like operator in linear inhomogeneous media
``gravity``        spin connection and circular photon orbits in Schwarzschild
``cli``            the ``photon-spinor`` command
"""

from .algebra import Representation, build_matrices
from .errors import PhotonSpinorError
from .reports import CheckRecord, SuiteReport

__version__ = "0.1.0"

__all__ = ["CheckRecord", "PhotonSpinorError", "Representation", "SuiteReport", "build_matrices", "__version__"]
