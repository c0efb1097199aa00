"""Projective measurement parametrizations.

Qubits carry the usual Bloch-sphere chart (theta, phi); the qutrit basis
is the column set of a product of three phased Givens rotations acting on
coordinate pairs (0,1), (0,2), (1,2).  Six angles cover every orthonormal
basis up to per-column phases, which no downstream quantity depends on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class BlochSetting:
    """A qubit measurement direction; canonical ranges theta in [0, pi],
    phi in [0, 2pi), but any real angles are accepted (the map is periodic)."""
    theta: float
    phi: float

    def bloch_vector(self) -> tuple[float, float, float]:
        st = math.sin(self.theta)
        return (st * math.cos(self.phi), st * math.sin(self.phi),
                math.cos(self.theta))


@dataclass(frozen=True)
class QutritBasis:
    """Six angles: three (theta, phi) pairs feeding the Givens product."""
    angles: tuple[float, float, float, float, float, float]

    def __post_init__(self):
        if len(self.angles) != 6:
            raise InvalidInputError(f"need 6 angles, got {len(self.angles)}")
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))


@dataclass(frozen=True)
class SettingsFamily:
    """The four qubit settings and shared qutrit basis of one CHSH family."""
    a1: BlochSetting
    a2: BlochSetting
    c1: BlochSetting
    c2: BlochSetting
    b: QutritBasis

    def to_params(self) -> list[float]:
        return [self.a1.theta, self.a1.phi, self.a2.theta, self.a2.phi,
                self.c1.theta, self.c1.phi, self.c2.theta, self.c2.phi,
                *self.b.angles]

    @staticmethod
    def from_params(params) -> "SettingsFamily":
        p = [float(x) for x in params]
        if len(p) != 14:
            raise InvalidInputError(f"need 14 parameters, got {len(p)}")
        return SettingsFamily(
            a1=BlochSetting(p[0], p[1]), a2=BlochSetting(p[2], p[3]),
            c1=BlochSetting(p[4], p[5]), c2=BlochSetting(p[6], p[7]),
            b=QutritBasis(tuple(p[8:14])))


_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


def qubit_projector(s: BlochSetting, outcome: int) -> np.ndarray:
    """(I + outcome * n.sigma)/2 for outcome in {+1, -1}."""
    if outcome not in (+1, -1):
        raise InvalidInputError(f"outcome must be +1 or -1, got {outcome!r}")
    nx, ny, nz = s.bloch_vector()
    n_sigma = nx * _PAULI[0] + ny * _PAULI[1] + nz * _PAULI[2]
    return 0.5 * (np.eye(2, dtype=np.complex128) + outcome * n_sigma)


def _givens(dim: int, j: int, k: int, theta: float, phi: float) -> np.ndarray:
    """Phased Givens rotation on coordinates (j, k): cos on the diagonal,
    -e^{i phi} sin and e^{-i phi} sin off it."""
    g = np.eye(dim, dtype=np.complex128)
    c, s = math.cos(theta), math.sin(theta)
    e = complex(math.cos(phi), math.sin(phi))
    g[j, j] = c
    g[k, k] = c
    g[j, k] = -s * e
    g[k, j] = s * e.conjugate()
    return g


def qutrit_unitary(q: QutritBasis) -> np.ndarray:
    """G01(t1,p1) @ G02(t2,p2) @ G12(t3,p3); columns are the basis."""
    t1, p1, t2, p2, t3, p3 = q.angles
    return (_givens(3, 0, 1, t1, p1)
            @ _givens(3, 0, 2, t2, p2)
            @ _givens(3, 1, 2, t3, p3))


def qutrit_basis_vectors(q: QutritBasis) -> list[np.ndarray]:
    """The three orthonormal measurement eigenvectors, outcome order 0,1,2."""
    u = qutrit_unitary(q)
    return [u[:, b].copy() for b in range(3)]


def qutrit_projector(q: QutritBasis, outcome: int) -> np.ndarray:
    if outcome not in (0, 1, 2):
        raise InvalidInputError(f"qutrit outcome must be 0, 1 or 2, got {outcome!r}")
    v = qutrit_basis_vectors(q)[outcome]
    return np.outer(v, v.conj())
