"""Multi-start Nelder-Mead search over 14-parameter measurement families.

The two objectives (maximize the CHSH lower bound, minimize the upper
bound) contain absolute values, so a derivative-free simplex method with
standard coefficients (reflection 1, expansion 2, contraction 1/2,
shrink 1/2) is used.  All restarts of one search advance in lockstep as
rows of a batch so the hot loop is numpy array code rather than a Python
loop per restart; converged rows freeze while the rest continue.

Determinism: restart r of grid point i draws from a private stream
seeded by (seed XOR i) with spawn key (direction, r), so runs with the
same seed are bit-identical and a longer restart pool extends a shorter
one.  Restart 0 is not random: it starts at the settings that pin the
correlators in the GHZ limit (qubits on the z axis, computational B),
which guarantees the known endpoint values are never missed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import family_chsh_bounds
from .errors import InvalidInputError
from .measurements import SettingsFamily

_SIMPLEX_STEP = 0.3
_LOWER, _UPPER = 0, 1  # direction ids for stream derivation


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 200
    max_iters: int = 2000
    tol: float = 1e-10
    seed: int = 0
    alpha_grid: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidInputError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iters < 1:
            raise InvalidInputError(f"max_iters must be >= 1, got {self.max_iters}")
        if not (0 <= self.seed < 2 ** 64):
            raise InvalidInputError("seed must fit in 64 unsigned bits")
        for a in self.alpha_grid:
            if not (0.0 <= a <= math.pi / 2 + 1e-12):
                raise InvalidInputError(f"grid value {a!r} outside [0, pi/2]")


@dataclass(frozen=True)
class OptimizationResult:
    value: float
    params: np.ndarray
    family: SettingsFamily
    iterations: int
    restarts: int


@dataclass(frozen=True)
class SweepRecord:
    alpha: float
    cos2_alpha: float
    l_bar: float
    u_bar: float
    params_lower: np.ndarray
    params_upper: np.ndarray
    restarts: int
    iterations_total: int


def nelder_mead_batch(objective, x0: np.ndarray, *, max_iters: int,
                      tol: float, step: float = _SIMPLEX_STEP,
                      history: list | None = None):
    """Minimize objective over a batch of starts advanced in lockstep.

    objective maps an (N, d) array to (N,) values; x0 is (R, d).  Returns
    (best points (R, d), best values (R,), iterations used (R,)).  A row
    freezes once its simplex diameter (max-norm) drops below tol.  When
    history is a list, the per-row best value is appended each iteration.
    """
    x0 = np.asarray(x0, dtype=float)
    r, d = x0.shape
    x = np.repeat(x0[:, None, :], d + 1, axis=1)
    for i in range(d):
        x[:, i + 1, i] += step
    f = objective(x.reshape(r * (d + 1), d)).reshape(r, d + 1)
    iters = np.zeros(r, dtype=int)
    active = np.ones(r, dtype=bool)

    for _ in range(max_iters):
        order = np.argsort(f, axis=1, kind="stable")
        f = np.take_along_axis(f, order, axis=1)
        x = np.take_along_axis(x, order[:, :, None], axis=1)
        diameter = np.max(np.abs(x - x[:, :1, :]), axis=(1, 2))
        active &= diameter >= tol
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        if history is not None:
            history.append(f[:, 0].copy())
        xa, fa = x[idx], f[idx]
        centroid = np.mean(xa[:, :d, :], axis=1)
        xw, fw = xa[:, d, :], fa[:, d]
        fb, fsw = fa[:, 0], fa[:, d - 1]

        xr = centroid + (centroid - xw)
        fr = objective(xr)
        new_x, new_f = xr.copy(), fr.copy()
        shrink = np.zeros(idx.size, dtype=bool)

        expand = fr < fb
        if np.any(expand):
            sub = np.nonzero(expand)[0]
            xe = centroid[sub] + 2.0 * (centroid[sub] - xw[sub])
            fe = objective(xe)
            better = fe < fr[sub]
            new_x[sub[better]] = xe[better]
            new_f[sub[better]] = fe[better]

        outside = (~expand) & (fr >= fsw) & (fr < fw)
        if np.any(outside):
            sub = np.nonzero(outside)[0]
            xc = centroid[sub] + 0.5 * (centroid[sub] - xw[sub])
            fc = objective(xc)
            ok = fc <= fr[sub]
            new_x[sub[ok]] = xc[ok]
            new_f[sub[ok]] = fc[ok]
            shrink[sub[~ok]] = True

        inside = (~expand) & (fr >= fw)
        if np.any(inside):
            sub = np.nonzero(inside)[0]
            xc = centroid[sub] - 0.5 * (centroid[sub] - xw[sub])
            fc = objective(xc)
            ok = fc < fw[sub]
            new_x[sub[ok]] = xc[ok]
            new_f[sub[ok]] = fc[ok]
            shrink[sub[~ok]] = True

        keep = ~shrink
        rows = idx[keep]
        x[rows, d, :] = new_x[keep]
        f[rows, d] = new_f[keep]
        if np.any(shrink):
            rows = idx[shrink]
            x[rows, 1:, :] = x[rows, :1, :] + 0.5 * (x[rows, 1:, :] - x[rows, :1, :])
            n_s = rows.size
            f[rows, 1:] = objective(
                x[rows, 1:, :].reshape(n_s * d, d)).reshape(n_s, d)
        iters[idx] += 1

    order = np.argsort(f, axis=1, kind="stable")
    f = np.take_along_axis(f, order, axis=1)
    x = np.take_along_axis(x, order[:, :, None], axis=1)
    return x[:, 0, :], f[:, 0], iters


def _restart_rng(seed: int, grid_index: int, direction: int,
                 restart: int) -> np.random.Generator:
    entropy = (seed ^ grid_index) & (2 ** 64 - 1)
    ss = np.random.SeedSequence(entropy=entropy,
                                spawn_key=(direction, restart))
    return np.random.Generator(np.random.PCG64(ss))


def _random_start(rng: np.random.Generator) -> np.ndarray:
    p = np.empty(14)
    for i in range(4):                       # four qubit settings
        p[2 * i] = math.acos(rng.uniform(-1.0, 1.0))
        p[2 * i + 1] = rng.uniform(0.0, 2.0 * math.pi)
    for i in range(3):                       # three Givens pairs
        p[8 + 2 * i] = rng.uniform(0.0, math.pi / 2)
        p[9 + 2 * i] = rng.uniform(0.0, 2.0 * math.pi)
    return p


def _pinning_start(direction: int) -> np.ndarray:
    p = np.zeros(14)
    if direction == _UPPER:
        p[4] = p[6] = math.pi  # C settings on -z flip the correlator sign
    return p


def _starts(cfg: OptimizerConfig, grid_index: int, direction: int) -> np.ndarray:
    x0 = np.empty((cfg.restarts, 14))
    x0[0] = _pinning_start(direction)
    for r in range(1, cfg.restarts):
        x0[r] = _random_start(_restart_rng(cfg.seed, grid_index, direction, r))
    return x0


def _best(values: np.ndarray, points: np.ndarray, iters: np.ndarray,
          sign: float, restarts: int) -> OptimizationResult:
    k = int(np.argmin(values))
    params = points[k].copy()
    return OptimizationResult(value=sign * float(values[k]), params=params,
                              family=SettingsFamily.from_params(params),
                              iterations=int(iters.sum()), restarts=restarts)


def maximize_chsh_lower(alpha: float, cfg: OptimizerConfig,
                        grid_index: int = 0) -> OptimizationResult:
    """Best (largest) CHSH lower bound over measurement families."""

    def objective(p):
        return -family_chsh_bounds(alpha, p)[0]

    pts, vals, iters = nelder_mead_batch(
        objective, _starts(cfg, grid_index, _LOWER),
        max_iters=cfg.max_iters, tol=cfg.tol)
    return _best(vals, pts, iters, -1.0, cfg.restarts)


def minimize_chsh_upper(alpha: float, cfg: OptimizerConfig,
                        grid_index: int = 0) -> OptimizationResult:
    """Best (smallest) CHSH upper bound over measurement families."""

    def objective(p):
        return family_chsh_bounds(alpha, p)[1]

    pts, vals, iters = nelder_mead_batch(
        objective, _starts(cfg, grid_index, _UPPER),
        max_iters=cfg.max_iters, tol=cfg.tol)
    return _best(vals, pts, iters, 1.0, cfg.restarts)


def sweep(cfg: OptimizerConfig) -> list[SweepRecord]:
    """One (l_bar, u_bar) record per grid point, independently optimized."""
    if not cfg.alpha_grid:
        raise InvalidInputError("alpha grid is empty")
    records = []
    for i, alpha in enumerate(cfg.alpha_grid):
        lo = maximize_chsh_lower(alpha, cfg, grid_index=i)
        up = minimize_chsh_upper(alpha, cfg, grid_index=i)
        records.append(SweepRecord(
            alpha=float(alpha), cos2_alpha=math.cos(alpha) ** 2,
            l_bar=lo.value, u_bar=up.value,
            params_lower=lo.params, params_upper=up.params,
            restarts=cfg.restarts,
            iterations_total=lo.iterations + up.iterations))
    return records
