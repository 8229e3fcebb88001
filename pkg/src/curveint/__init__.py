"""curveint: exact local intersection multiplicities of plane projective
curves, computed by three independent engines (local-ring length, resultant
order, infinitesimal deformation counting) and summed to verify Bezout's
theorem."""

from .fields import QQ, ExtensionField, PrimeField
from .poly import MultiPoly

__all__ = ["QQ", "PrimeField", "ExtensionField", "MultiPoly"]
__version__ = "0.1.0"
