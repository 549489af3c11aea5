"""Eigenfunctions of the Askey-Wilson second order difference operator.

Covers the regimes ``0 < q < 1`` (basic hypergeometric series, q-gamma)
and ``|q| = 1`` (hyperbolic gamma, contour integrals).
"""
from .params import (AWParameters, DeformationParameter, GroupParameters,
                     Regime, SpectralPoint, dual_aw_parameters,
                     dual_parameters, eigenvalue_E, link_parameters, q_pow)

__all__ = [
    "AWParameters", "DeformationParameter", "GroupParameters", "Regime",
    "SpectralPoint", "dual_aw_parameters", "dual_parameters", "eigenvalue_E",
    "link_parameters", "q_pow",
]
__version__ = "0.1.0"
