"""Numerical pressure on the marginal-uniqueness argument.

Every purification of the A-B marginal of the state family can be put in
the form (psi1 E1 + psi2 E2)/sqrt(2) with E1, E2 orthonormal vectors on
C tensor X built from Schmidt weights (c0, c1), (d0, d1) and four
auxiliary vectors.  Demanding that the B-C marginal also comes out right
singles out one point of that chart: c1 = d0 = 0 and x10 = x21 up to a
phase, i.e. the global state is the pure family state times an ancilla.
This module scans the chart for counterexamples: parameter points whose
B-C marginal error (the residual) vanishes while sitting far from that
unique point.  Finding none is the numerical content of the theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .correlations import horodecki_chsh_max
from .errors import DegenerateInputError, InvalidInputError
from .optimizer import nelder_mead_batch
from .qlinalg import partial_trace, permute_subsystems
from .states import psi1, psi2, rho_ac_analytic, rho_cb_analytic

_X_DIM = 4
_CHART_DIM = 2 + 4 * 2 * _X_DIM  # two Schmidt angles + four complex 4-vectors
_PENALTY = 10.0


@dataclass(frozen=True)
class PurificationParams:
    """Schmidt weights and auxiliary vectors of one purification ansatz."""
    c0: float
    c1: float
    d0: float
    d1: float
    x10: np.ndarray
    x11: np.ndarray
    x20: np.ndarray
    x21: np.ndarray

    def __post_init__(self):
        for name in ("c0", "c1", "d0", "d1"):
            if getattr(self, name) < 0.0:
                raise InvalidInputError(f"{name} must be nonnegative")
        if abs(self.c0 ** 2 + self.c1 ** 2 - 1.0) > tol.UNIT_NORM:
            raise InvalidInputError("(c0, c1) is not normalized")
        if abs(self.d0 ** 2 + self.d1 ** 2 - 1.0) > tol.UNIT_NORM:
            raise InvalidInputError("(d0, d1) is not normalized")
        for name in ("x10", "x11", "x20", "x21"):
            v = np.asarray(getattr(self, name), dtype=np.complex128)
            if v.shape != (_X_DIM,):
                raise InvalidInputError(f"{name} must be a {_X_DIM}-vector")
            if abs(float(np.vdot(v, v).real) - 1.0) > tol.UNIT_NORM:
                raise InvalidInputError(f"{name} is not a unit vector")
            object.__setattr__(self, name, v)
        for left, right in (("x10", "x11"), ("x20", "x21")):
            ip = np.vdot(getattr(self, left), getattr(self, right))
            if abs(ip) > tol.UNIT_NORM:
                raise InvalidInputError(f"<{left}|{right}> must vanish")


@dataclass(frozen=True)
class UniquenessVerdict:
    residual: float
    distance_to_unique_point: float


@dataclass(frozen=True)
class UniquenessScanReport:
    alpha: float
    n_samples: int
    n_local_starts: int
    seed: int
    min_residual: float
    distance_at_min: float
    near_zero_count: int
    max_distance_near_zero: float
    confirmed: bool


def unique_point_params() -> PurificationParams:
    """The canonical chart point the theorem singles out."""
    e = np.eye(_X_DIM, dtype=np.complex128)
    return PurificationParams(c0=1.0, c1=0.0, d0=0.0, d1=1.0,
                              x10=e[0], x11=e[1], x20=e[1], x21=e[0])


def _e_pair(p: PurificationParams) -> tuple[np.ndarray, np.ndarray]:
    """E1 and the orthogonalized, renormalized E2 as (2, x) blocks."""
    e1 = np.zeros((2, _X_DIM), dtype=np.complex128)
    e1[0] = p.c0 * p.x10
    e1[1] = p.c1 * p.x11
    e2 = np.zeros((2, _X_DIM), dtype=np.complex128)
    e2[0] = p.d0 * p.x20
    e2[1] = p.d1 * p.x21
    e2 = e2 - np.vdot(e1, e2) * e1
    norm = float(np.linalg.norm(e2))
    if norm < tol.ORTHO_COLLAPSE:
        raise DegenerateInputError("E2 collapses under orthogonalization")
    return e1, e2 / norm


def build_purification(alpha: float, p: PurificationParams) -> np.ndarray:
    """Unit vector on A x B x C x X (dims 2,3,2,4), flat index order."""
    e1, e2 = _e_pair(p)
    s1 = psi1(alpha).reshape(2, 3)
    s2 = psi2(alpha).reshape(2, 3)
    phi = (s1[:, :, None, None] * e1[None, None, :, :]
           + s2[:, :, None, None] * e2[None, None, :, :]) / math.sqrt(2.0)
    return phi.reshape(-1)


def _bc_target(alpha: float) -> np.ndarray:
    """The required B-C marginal, reordered from the C-B analytic form."""
    return permute_subsystems(rho_cb_analytic(alpha), (2, 3), (1, 0))


def distance_to_unique_point(p: PurificationParams) -> float:
    """Max of (c1, effective d0, 1 - |<x10|x21 effective>|).

    Measured after the E2 orthogonalization that build_purification
    performs, so raw parameters that orthogonalize onto the unique point
    count as being there.  The absolute value absorbs the free X phase.
    """
    _, e2 = _e_pair(p)
    d0_eff = float(np.linalg.norm(e2[0]))
    d1_eff = float(np.linalg.norm(e2[1]))
    overlap = abs(np.vdot(p.x10, e2[1])) / d1_eff if d1_eff > 1e-12 else 0.0
    return max(p.c1, d0_eff, 1.0 - overlap)


def residual(alpha: float, p: PurificationParams) -> UniquenessVerdict:
    """Frobenius error of the purification's B-C marginal, plus distance."""
    phi = build_purification(alpha, p)
    rho_bc = partial_trace(np.outer(phi, phi.conj()), (2, 3, 2, _X_DIM), (1, 2))
    err = float(np.linalg.norm(rho_bc - _bc_target(alpha)))
    return UniquenessVerdict(residual=err,
                             distance_to_unique_point=distance_to_unique_point(p))


def _check_interior(alpha: float) -> float:
    a = float(alpha)
    if not (0.0 < a < math.pi / 2):
        raise InvalidInputError(
            f"alpha={a!r} must lie strictly inside (0, pi/2)")
    return a


def _unpack_chart(chart: np.ndarray):
    """Chart rows -> Schmidt weights and orthonormalized vector stacks.

    Returns (c0, c1, d0, d1, x10, x11, x20, x21, bad); degenerate rows
    are flagged in bad and left unnormalized.
    """
    r = chart.shape[0]
    c0, c1 = np.cos(chart[:, 0]), np.abs(np.sin(chart[:, 0]))
    d0, d1 = np.cos(chart[:, 1]), np.abs(np.sin(chart[:, 1]))
    raw = chart[:, 2:].reshape(r, 4, _X_DIM, 2)
    vecs = raw[..., 0] + 1j * raw[..., 1]          # (r, 4, x)
    bad = np.zeros(r, dtype=bool)

    def normalized(v):
        n = np.linalg.norm(v, axis=-1)
        small = n < tol.ORTHO_COLLAPSE
        n = np.where(small, 1.0, n)
        return v / n[:, None], small

    x10, b = normalized(vecs[:, 0])
    bad |= b
    x11 = vecs[:, 1] - np.sum(x10.conj() * vecs[:, 1], axis=1)[:, None] * x10
    x11, b = normalized(x11)
    bad |= b
    x20, b = normalized(vecs[:, 2])
    bad |= b
    x21 = vecs[:, 3] - np.sum(x20.conj() * vecs[:, 3], axis=1)[:, None] * x20
    x21, b = normalized(x21)
    bad |= b
    return np.abs(c0), c1, np.abs(d0), d1, x10, x11, x20, x21, bad


def _chart_states(alpha: float, chart: np.ndarray):
    """Batched purifications: (phi (r,2,3,2,x), e2 blocks, bad mask)."""
    r = chart.shape[0]
    c0, c1, d0, d1, x10, x11, x20, x21, bad = _unpack_chart(chart)
    e1 = np.zeros((r, 2, _X_DIM), dtype=np.complex128)
    e1[:, 0] = c0[:, None] * x10
    e1[:, 1] = c1[:, None] * x11
    e2 = np.zeros((r, 2, _X_DIM), dtype=np.complex128)
    e2[:, 0] = d0[:, None] * x20
    e2[:, 1] = d1[:, None] * x21
    ip = np.sum(e1.conj() * e2, axis=(1, 2))
    e2 = e2 - ip[:, None, None] * e1
    norms = np.linalg.norm(e2.reshape(r, -1), axis=1)
    bad = bad | (norms < tol.ORTHO_COLLAPSE)
    e2 = e2 / np.where(bad, 1.0, norms)[:, None, None]
    s1 = psi1(alpha).reshape(2, 3)
    s2 = psi2(alpha).reshape(2, 3)
    phi = (np.einsum("ab,rcx->rabcx", s1, e1)
           + np.einsum("ab,rcx->rabcx", s2, e2)) / math.sqrt(2.0)
    return phi, c1, x10, e2, bad


def _residual_chart(alpha: float, chart: np.ndarray) -> np.ndarray:
    """Batched scan objective: B-C marginal error, penalized when degenerate."""
    phi, _, _, _, bad = _chart_states(alpha, chart)
    rho_bc = np.einsum("rabcx,raBCx->rbcBC", phi, phi.conj())
    r = chart.shape[0]
    diff = rho_bc.reshape(r, 6, 6) - _bc_target(alpha)[None, :, :]
    out = np.linalg.norm(diff.reshape(r, -1), axis=1)
    return np.where(bad, _PENALTY, out)


def _distance_chart(alpha: float, chart: np.ndarray) -> np.ndarray:
    """Batched distance-to-unique-point on effective parameters."""
    _, c1, x10, e2, bad = _chart_states(alpha, chart)
    d0_eff = np.linalg.norm(e2[:, 0], axis=1)
    d1_eff = np.linalg.norm(e2[:, 1], axis=1)
    safe = np.where(d1_eff > 1e-12, d1_eff, 1.0)
    overlap = np.abs(np.sum(x10.conj() * e2[:, 1], axis=1)) / safe
    overlap = np.where(d1_eff > 1e-12, overlap, 0.0)
    dist = np.maximum(np.maximum(c1, d0_eff), 1.0 - overlap)
    return np.where(bad, _PENALTY, dist)


def _unique_point_chart() -> np.ndarray:
    chart = np.zeros(_CHART_DIM)
    chart[1] = math.pi / 2                       # d0 = 0, d1 = 1
    chart[2 + 0 * 8 + 0] = 1.0                   # x10 = e0
    chart[2 + 1 * 8 + 2] = 1.0                   # x11 = e1
    chart[2 + 2 * 8 + 2] = 1.0                   # x20 = e1
    chart[2 + 3 * 8 + 0] = 1.0                   # x21 = e0
    return chart


def uniqueness_scan(alpha: float, n_samples: int = 10000,
                    n_local_starts: int = 100,
                    seed: int = 0) -> UniquenessScanReport:
    """Random sampling plus local minimization of the marginal residual.

    The known exact solution is always included as one local start, so
    the near-zero set is never empty; the scan's job is to check that
    nothing else lands there.  Strictly interior alpha only: at the
    endpoints the marginals admit other compatible states.
    """
    a = _check_interior(alpha)
    if n_samples < 1 or n_local_starts < 1:
        raise InvalidInputError("n_samples and n_local_starts must be >= 1")
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(entropy=seed, spawn_key=(2,))))
    chart = np.empty((n_samples, _CHART_DIM))
    chart[:, 0] = rng.uniform(0.0, math.pi / 2, n_samples)
    chart[:, 1] = rng.uniform(0.0, math.pi / 2, n_samples)
    chart[:, 2:] = rng.standard_normal((n_samples, _CHART_DIM - 2))
    res = _residual_chart(a, chart)

    order = np.argsort(res, kind="stable")[:n_local_starts]
    starts = np.vstack([_unique_point_chart()[None, :], chart[order]])

    def objective(points):
        return _residual_chart(a, points)

    best = starts
    for _ in range(3):  # restarted simplex rounds tighten stalled minima
        best, vals, _ = nelder_mead_batch(objective, best, max_iters=2000,
                                          tol=1e-12, step=0.1)
    dists = _distance_chart(a, best)
    k = int(np.argmin(vals))
    near = vals < tol.NEAR_ZERO_RESIDUAL
    max_dist_near = float(np.max(dists[near])) if np.any(near) else 0.0
    return UniquenessScanReport(
        alpha=a, n_samples=n_samples, n_local_starts=n_local_starts,
        seed=seed, min_residual=float(vals[k]),
        distance_at_min=float(dists[k]),
        near_zero_count=int(np.count_nonzero(near)),
        max_distance_near_zero=max_dist_near,
        confirmed=bool(np.any(near)
                       and max_dist_near < tol.UNIQUE_DISTANCE))


@dataclass(frozen=True)
class Theorem2Report:
    alpha: float
    cos2_alpha: float
    chsh_max: float
    scan: UniquenessScanReport

    @property
    def contradiction(self) -> bool:
        """Marginals force the family state AND its A-C part breaks CHSH."""
        return self.scan.confirmed and self.chsh_max > 2.0 + tol.VIOLATION_STRICT


def theorem2_check(alpha: float, n_samples: int = 2000,
                   n_local_starts: int = 25, seed: int = 0) -> Theorem2Report:
    """Uniqueness scan combined with the A-C CHSH maximum.

    The contradiction (hence signaling) arises when cos^2(alpha) exceeds
    1/sqrt(2); below that the report simply shows no violation.  The
    endpoints are rejected because uniqueness genuinely fails there.
    """
    a = _check_interior(alpha)
    scan = uniqueness_scan(a, n_samples=n_samples,
                           n_local_starts=n_local_starts, seed=seed)
    return Theorem2Report(alpha=a, cos2_alpha=math.cos(a) ** 2,
                          chsh_max=horodecki_chsh_max(rho_ac_analytic(a)),
                          scan=scan)
