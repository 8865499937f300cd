"""Dense floating-point sampling of the signature function.

This is a check on :func:`concordkit.signature.rho_zero`, not a second
way to compute it: it shares no code with the exact path (no root finding,
no rational sample points, no exact congruence).
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .seifert import SeifertMatrix, alexander_polynomial


def midpoint_turns(n_points: int) -> np.ndarray:
    return (np.arange(n_points, dtype=np.float64) + 0.5) / n_points


def sampled_rho(s: SeifertMatrix, n_points: int = 1_000_000, kernel=None) -> float:
    """Midpoint-rule average of sigma_omega over ``n_points`` equally spaced omegas."""
    kernel = kernel or _kernels.signature_samples
    sig = kernel(s.array(), midpoint_turns(n_points))
    return float(sig.sum()) / n_points


def sampled_jump_count(s: SeifertMatrix, n_points: int = 100_000, kernel=None) -> int:
    """Number of sign changes of the real circle profile of Delta (roots on the circle, odd multiplicity)."""
    kernel = kernel or _kernels.circle_profile
    coeffs = np.array([float(c) for c in alexander_polynomial(s).poly.coeffs])
    if coeffs.shape[0] < 3:
        return 0
    vals = kernel(coeffs, midpoint_turns(n_points))
    signs = np.sign(vals)
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
