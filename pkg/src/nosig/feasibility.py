"""Existence of a joint distribution with prescribed two-party marginals.

The question is a small linear program: does p(a, b, c) >= 0 exist whose
pair marginals match the given tables?  A self-contained phase-one
simplex with Bland's anti-cycling rule answers it deterministically; the
instances here have at most 64 variables, so a dense tableau is plenty.

The headline instance takes the three z-axis measurements of the
three-qubit GHZ state, fixes the quantum A-B and B-C tables, and adds
the independence requirement P(a,c) = P(a)P(c) appropriate when the A-C
pair is spacelike separated even for the superluminal mechanism: no
joint distribution exists, so a model without local variables signals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .correlations import born_joint3
from .errors import InvalidInputError
from .states import ghz3

_Z_PROJECTORS = [np.diag([1.0 + 0j, 0.0]), np.diag([0.0, 1.0 + 0j])]


@dataclass(frozen=True)
class MarginalSpec:
    """Target pair marginals over outcomes (a, b, c).

    Each provided table must be nonnegative and normalized; ac_product
    derives the A-C table as the product of the one-party marginals
    implied by the other two tables (so both must be present), instead
    of an explicit ac table.
    """
    n_a: int
    n_b: int
    n_c: int
    ab: np.ndarray | None = None
    bc: np.ndarray | None = None
    ac: np.ndarray | None = None
    ac_product: bool = False

    def __post_init__(self):
        for n, name in ((self.n_a, "n_a"), (self.n_b, "n_b"), (self.n_c, "n_c")):
            if n < 1:
                raise InvalidInputError(f"{name} must be positive, got {n}")
        for name, table, shape in (("ab", self.ab, (self.n_a, self.n_b)),
                                   ("bc", self.bc, (self.n_b, self.n_c)),
                                   ("ac", self.ac, (self.n_a, self.n_c))):
            if table is None:
                continue
            t = np.asarray(table, dtype=float)
            if t.shape != shape:
                raise InvalidInputError(f"{name} table must have shape {shape}")
            if float(t.min()) < 0.0:
                raise InvalidInputError(f"{name} table has a negative entry")
            if abs(float(t.sum()) - 1.0) > tol.DENSITY_TRACE:
                raise InvalidInputError(f"{name} table does not sum to 1")
            object.__setattr__(self, name, t)
        if self.ac_product and self.ac is not None:
            raise InvalidInputError("give either an explicit ac table or "
                                    "ac_product, not both")
        if self.ac_product and (self.ab is None or self.bc is None):
            raise InvalidInputError("ac_product needs both ab and bc tables")
        self._check_overlaps()

    def _check_overlaps(self):
        ac = self.effective_ac()
        pairs = []
        if self.ab is not None and self.bc is not None:
            pairs.append((self.ab.sum(axis=0), self.bc.sum(axis=1), "b"))
        if self.ab is not None and ac is not None:
            pairs.append((self.ab.sum(axis=1), ac.sum(axis=1), "a"))
        if self.bc is not None and ac is not None:
            pairs.append((self.bc.sum(axis=0), ac.sum(axis=0), "c"))
        for left, right, name in pairs:
            if float(np.max(np.abs(left - right))) > tol.MARGINAL_FEASIBLE:
                raise InvalidInputError(
                    f"tables imply conflicting one-party marginals for {name}")

    def effective_ac(self) -> np.ndarray | None:
        """The A-C table actually constrained: explicit, or the product."""
        if self.ac_product:
            return np.outer(self.ab.sum(axis=1), self.bc.sum(axis=0))
        return self.ac


@dataclass(frozen=True)
class FeasibilityResult:
    """Phase-one outcome: a witness distribution, or the violation floor."""
    feasible: bool
    witness: np.ndarray | None
    residual: float


def _phase_one_simplex(a: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray]:
    """Minimize the artificial-variable sum for a x = b, x >= 0, b >= 0.

    Bland's rule (lowest eligible index enters, lowest-index basic
    variable leaves on ties) guarantees termination without cycling.
    Returns the optimum and the structural part of the solution.
    """
    m, n = a.shape
    t = np.zeros((m, n + m + 1))
    t[:, :n] = a
    t[:, n:n + m] = np.eye(m)
    t[:, -1] = b
    basis = list(range(n, n + m))
    cost = np.concatenate([np.zeros(n), np.ones(m)])
    while True:
        reduced = cost.copy()
        for i, bv in enumerate(basis):
            if cost[bv] != 0.0:
                reduced -= cost[bv] * t[i, :-1]
        entering = -1
        for j in range(n + m):
            if reduced[j] < -1e-12:
                entering = j
                break
        if entering < 0:
            break
        rows = np.nonzero(t[:, entering] > 1e-12)[0]
        if rows.size == 0:
            raise RuntimeError("phase-one column unbounded; inconsistent tableau")
        ratios = t[rows, -1] / t[rows, entering]
        candidates = [i for i, rt in zip(rows, ratios) if rt <= ratios.min()]
        leaving = min(candidates, key=lambda i: basis[i])
        t[leaving] /= t[leaving, entering]
        for i in range(m):
            if i != leaving and t[i, entering] != 0.0:
                t[i] -= t[i, entering] * t[leaving]
        basis[leaving] = entering
    optimum = sum(t[i, -1] for i, bv in enumerate(basis) if bv >= n)
    x = np.zeros(n)
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = t[i, -1]
    return float(optimum), x


def joint_feasible(spec: MarginalSpec) -> FeasibilityResult:
    """Decide whether any joint distribution matches the given tables."""
    na, nb, nc = spec.n_a, spec.n_b, spec.n_c
    n = na * nb * nc
    rows_a, rows_b = [], []

    def var(ia, ib, ic):
        return (ia * nb + ib) * nc + ic

    def add_pair(table, pair):
        if table is None:
            return
        for i in range(table.shape[0]):
            for j in range(table.shape[1]):
                row = np.zeros(n)
                for k in range(nb if pair == "ac" else (nc if pair == "ab" else na)):
                    if pair == "ab":
                        row[var(i, j, k)] = 1.0
                    elif pair == "bc":
                        row[var(k, i, j)] = 1.0
                    else:
                        row[var(i, k, j)] = 1.0
                rows_a.append(row)
                rows_b.append(table[i, j])

    add_pair(spec.ab, "ab")
    add_pair(spec.bc, "bc")
    add_pair(spec.effective_ac(), "ac")
    if not rows_a:
        uniform = np.full((na, nb, nc), 1.0 / n)
        return FeasibilityResult(feasible=True, witness=uniform, residual=0.0)
    optimum, x = _phase_one_simplex(np.array(rows_a), np.array(rows_b))
    if optimum <= tol.LP_FEASIBLE:
        return FeasibilityResult(feasible=True,
                                 witness=x.reshape(na, nb, nc),
                                 residual=optimum)
    return FeasibilityResult(feasible=False, witness=None, residual=optimum)


@dataclass(frozen=True)
class Theorem1Report:
    """GHZ marginal-compatibility verdict with the settings context."""
    independence: bool
    result: FeasibilityResult

    @property
    def contradiction(self) -> bool:
        """True when no joint distribution exists: the signaling verdict."""
        return not self.result.feasible


def theorem1_check(state: np.ndarray | None = None,
                   independence: bool = True) -> Theorem1Report:
    """Marginal feasibility for three z-axis measurements on a 3-qubit state.

    Default state is the GHZ state; with the A-C independence condition
    the constraint set is provably empty, which is the signaling
    conclusion for models without local variables.
    """
    vec = ghz3() if state is None else np.asarray(state, dtype=np.complex128)
    joint = born_joint3(vec, (2, 2, 2),
                        (_Z_PROJECTORS, _Z_PROJECTORS, _Z_PROJECTORS))
    spec = MarginalSpec(n_a=2, n_b=2, n_c=2,
                        ab=joint.sum(axis=2), bc=joint.sum(axis=0),
                        ac=None, ac_product=independence)
    return Theorem1Report(independence=independence,
                          result=joint_feasible(spec))
