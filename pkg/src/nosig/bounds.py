"""Positivity bounds on the free correlation term and their CHSH sums.

With the b-marginal weight f and the single-party biases a, c of one
measurement triple fixed, the joint term h can only range over
[-f + |a+c|, f - |a-c|]; outcome-wise sums bound the A-C correlator, and
the signed four-measurement combination bounds the CHSH value of every
completion.  A family whose lower bound exceeds 2 (or upper bound falls
below -2) would force a CHSH violation on any no-signaling completion.

Two evaluation paths coexist on purpose.  The dataclass path goes through
one measurement at a time and is convenient for reports and tests; the
array path evaluates a whole batch of 14-parameter families at once and
is the optimizer's hot loop (single-core vectorization).  The test suite
pins them together at 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .correlations import fach_closed_form
from .errors import InvalidMarginalError
from .measurements import BlochSetting, QutritBasis, SettingsFamily


def h_bounds(f, a, c):
    """Range [lower, upper] of the correlation term h given (f, a, c).

    Accepts scalars or same-shape arrays; requires f >= max(|a|, |c|) up
    to slack, which is exactly when the four sign probabilities can all
    be nonnegative.  A degenerate outcome f=0 forces a=c=0 and pins h=0.
    """
    f = np.asarray(f, dtype=float)
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    if np.any(f < np.maximum(np.abs(a), np.abs(c)) - tol.MARGINAL_FEASIBLE):
        raise InvalidMarginalError("f < max(|a|, |c|): no nonnegative completion")
    lower = -f + np.abs(a + c)
    upper = f - np.abs(a - c)
    if f.ndim == 0:
        return float(lower), float(upper)
    return lower, upper


@dataclass(frozen=True)
class BoundsReport:
    """Per-outcome h ranges and their sums for one measurement triple."""
    lower_b: np.ndarray
    upper_b: np.ndarray
    lower_sum: float
    upper_sum: float


def measurement_bounds(alpha: float, a: BlochSetting, b: QutritBasis,
                       c: BlochSetting) -> BoundsReport:
    """Bounds on the A-C correlator for one measurement triple."""
    f, abias, cbias = fach_closed_form(alpha, a, b, c)
    lower, upper = h_bounds(f, abias, cbias)
    return BoundsReport(lower_b=lower, upper_b=upper,
                        lower_sum=float(np.sum(lower)),
                        upper_sum=float(np.sum(upper)))


@dataclass(frozen=True)
class FamilyBounds:
    """Correlator bounds of the four measurement pairs and the CHSH window.

    chsh_lower = L11 + L12 + L21 - U22 and chsh_upper = U11 + U12 + U21
    - L22 bracket the CHSH value of every distribution with the quantum
    two-party marginals.
    """
    m11: BoundsReport
    m12: BoundsReport
    m21: BoundsReport
    m22: BoundsReport
    chsh_lower: float
    chsh_upper: float

    @property
    def forces_violation(self) -> bool:
        """True when every completion must violate CHSH (strict at 1e-9)."""
        return (self.chsh_lower > 2.0 + tol.VIOLATION_STRICT
                or self.chsh_upper < -2.0 - tol.VIOLATION_STRICT)


def family_bounds(alpha: float, fam: SettingsFamily) -> FamilyBounds:
    """CHSH bound window of a four-measurement family with shared B basis."""
    m11 = measurement_bounds(alpha, fam.a1, fam.b, fam.c1)
    m12 = measurement_bounds(alpha, fam.a1, fam.b, fam.c2)
    m21 = measurement_bounds(alpha, fam.a2, fam.b, fam.c1)
    m22 = measurement_bounds(alpha, fam.a2, fam.b, fam.c2)
    return FamilyBounds(
        m11=m11, m12=m12, m21=m21, m22=m22,
        chsh_lower=m11.lower_sum + m12.lower_sum + m21.lower_sum - m22.upper_sum,
        chsh_upper=m11.upper_sum + m12.upper_sum + m21.upper_sum - m22.lower_sum)


def _batched_bloch(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)],
                    axis=-1)


def _batched_givens(n: int, j: int, k: int, theta: np.ndarray,
                    phi: np.ndarray) -> np.ndarray:
    g = np.zeros((theta.shape[0], 3, 3), dtype=np.complex128)
    g[:, 0, 0] = g[:, 1, 1] = g[:, 2, 2] = 1.0
    c = np.cos(theta)
    s = np.sin(theta)
    e = np.exp(1j * phi)
    g[:, j, j] = c
    g[:, k, k] = c
    g[:, j, k] = -s * e
    g[:, k, j] = s * e.conj()
    return g


def batched_columns(b_angles: np.ndarray) -> np.ndarray:
    """Batched qutrit basis matrices, shape (R, 3, 3), from (R, 6) angles."""
    t1, p1, t2, p2, t3, p3 = (b_angles[:, i] for i in range(6))
    return (_batched_givens(3, 0, 1, t1, p1)
            @ _batched_givens(3, 0, 2, t2, p2)
            @ _batched_givens(3, 1, 2, t3, p3))


def family_chsh_bounds(alpha: float, params: np.ndarray
                       ) -> tuple[np.ndarray, np.ndarray]:
    """(chsh_lower, chsh_upper) for a batch of parameter vectors.

    params has shape (R, 14) laid out as SettingsFamily.to_params; the
    result is a pair of (R,) arrays.  Same math as family_bounds, fused
    across the batch; the two paths agree to 1e-12 by test.
    """
    p = np.asarray(params, dtype=float)
    if p.ndim == 1:
        p = p[None, :]
    na1 = _batched_bloch(p[:, 0], p[:, 1])
    na2 = _batched_bloch(p[:, 2], p[:, 3])
    nc1 = _batched_bloch(p[:, 4], p[:, 5])
    nc2 = _batched_bloch(p[:, 6], p[:, 7])
    u = batched_columns(p[:, 8:14])
    b0, b1, b2 = u[:, 0, :], u[:, 1, :], u[:, 2, :]
    n0 = b0.real ** 2 + b0.imag ** 2
    n1 = b1.real ** 2 + b1.imag ** 2
    n2 = b2.real ** 2 + b2.imag ** 2
    ca2 = math.cos(alpha) ** 2
    sa2 = math.sin(alpha) ** 2
    s2a = math.sin(2.0 * alpha)
    f = ca2 * n2 + 0.5 * sa2 * (1.0 - n2)
    w = b0 * b2.conj() + b2 * b1.conj()
    g = np.stack([0.5 * s2a * w.real, 0.5 * s2a * w.imag,
                  0.5 * sa2 * (n0 - n1)], axis=-1)      # (R, outcome, axis)
    a1 = np.einsum("rba,ra->rb", g, na1)
    a2 = np.einsum("rba,ra->rb", g, na2)
    c1 = np.einsum("rba,ra->rb", g, nc1)
    c2 = np.einsum("rba,ra->rb", g, nc2)

    def pair(ai, cj):
        lower = np.sum(-f + np.abs(ai + cj), axis=1)
        upper = np.sum(f - np.abs(ai - cj), axis=1)
        return lower, upper

    l11, u11 = pair(a1, c1)
    l12, u12 = pair(a1, c2)
    l21, u21 = pair(a2, c1)
    l22, u22 = pair(a2, c2)
    return l11 + l12 + l21 - u22, u11 + u12 + u21 - l22
