"""Small-dimension complex linear algebra.

Everything in this module operates on plain numpy arrays (complex128).
Total Hilbert-space dimensions in this project never exceed 48, and the
matrices we diagonalize never exceed 6x6, so simplicity beats asymptotics
throughout: the Hermitian eigensolver is a cyclic Jacobi iteration rather
than anything QR-shaped.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from . import tolerances as tol
from .errors import InvalidInputError


def as_complex_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise InvalidInputError(f"expected a 2-d matrix, got ndim={a.ndim}")
    return a


def as_complex_vector(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.complex128)
    if a.ndim != 1:
        raise InvalidInputError(f"expected a 1-d vector, got ndim={a.ndim}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m.T)


def check_unit(v, atol: float = tol.UNIT_NORM) -> np.ndarray:
    """Validate that v is a unit vector; returns it as complex128."""
    a = as_complex_vector(v)
    nrm = float(np.vdot(a, a).real)
    if abs(nrm - 1.0) > atol:
        raise InvalidInputError(f"vector is not unit: <v|v> = {nrm!r}")
    return a


def check_hermitian(m, atol: float = tol.HERMITIAN) -> np.ndarray:
    """Validate that m is Hermitian within Frobenius tolerance."""
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"matrix is not square: shape={a.shape}")
    if float(np.linalg.norm(a - dagger(a))) > atol:
        raise InvalidInputError("matrix is not hermitian within tolerance")
    return a


def check_density(m, trace_atol: float = tol.DENSITY_TRACE,
                  eig_floor: float = tol.DENSITY_MIN_EIG) -> np.ndarray:
    """Validate that m is a density matrix: Hermitian, unit trace, PSD.

    Positivity is checked with the Jacobi eigensolver, so this only
    accepts matrices of dimension <= 6 (all density matrices handled by
    this project are).
    """
    a = check_hermitian(m)
    tr = complex(np.trace(a))
    if abs(tr - 1.0) > trace_atol:
        raise InvalidInputError(f"trace is {tr!r}, expected 1")
    eigs = hermitian_eigenvalues(a)
    if eigs[0] < eig_floor:
        raise InvalidInputError(f"minimum eigenvalue {eigs[0]!r} below floor")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def kron_all(mats: Iterable[np.ndarray]) -> np.ndarray:
    out = None
    for m in mats:
        out = as_complex_matrix(m) if out is None else np.kron(out, m)
    if out is None:
        raise InvalidInputError("kron_all needs at least one factor")
    return out


def partial_trace(rho, dims: Sequence[int], keep) -> np.ndarray:
    """Reduced matrix of rho on the kept subsystems, in original order.

    dims lists the subsystem dimensions whose product must match rho;
    keep is an iterable of subsystem indices to retain.
    """
    a = as_complex_matrix(rho)
    dims = tuple(int(d) for d in dims)
    total = math.prod(dims)
    if a.shape != (total, total):
        raise InvalidInputError(
            f"dims {dims} imply shape {(total, total)}, got {a.shape}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise InvalidInputError(f"keep indices {keep} out of range")

    n = len(dims)
    t = a.reshape(dims + dims)
    # Trace out discarded subsystems from the highest index down so that
    # earlier axis numbers stay valid.
    removed = [i for i in range(n) if i not in keep]
    remaining = n
    for i in sorted(removed, reverse=True):
        t = np.trace(t, axis1=i, axis2=i + remaining)
        remaining -= 1
    d_keep = math.prod(dims[k] for k in keep) if keep else 1
    return t.reshape(d_keep, d_keep)


def permute_subsystems(rho, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of rho: subsystem perm[i] moves to slot i."""
    a = as_complex_matrix(rho)
    dims = tuple(int(d) for d in dims)
    total = math.prod(dims)
    if a.shape != (total, total):
        raise InvalidInputError(
            f"dims {dims} imply shape {(total, total)}, got {a.shape}")
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(len(dims))):
        raise InvalidInputError(f"perm {perm} is not a permutation")
    n = len(dims)
    t = a.reshape(dims + dims)
    axes = perm + tuple(p + n for p in perm)
    d = math.prod(dims)
    return np.transpose(t, axes).reshape(d, d)


def frobenius_distance(a, b) -> float:
    """Frobenius norm of a - b."""
    ma, mb = as_complex_matrix(a), as_complex_matrix(b)
    if ma.shape != mb.shape:
        raise InvalidInputError(f"shape mismatch: {ma.shape} vs {mb.shape}")
    return float(np.linalg.norm(ma - mb))


def hermitian_eigenvalues(m, offdiag_tol: float = tol.JACOBI_OFFDIAG,
                          max_sweeps: int = 60) -> list[float]:
    """Eigenvalues of a Hermitian matrix (dim <= 6), ascending.

    Cyclic Jacobi iteration for complex Hermitian matrices: each rotation
    zeroes one off-diagonal pair using a phased Givens rotation, and sweeps
    repeat until the off-diagonal Frobenius mass drops below offdiag_tol.
    Quadratic convergence makes the sweep cap generous.
    """
    a = check_hermitian(m).copy()
    n = a.shape[0]
    if n > 6:
        raise InvalidInputError(f"Jacobi eigensolver limited to dim <= 6, got {n}")
    if n == 1:
        return [float(a[0, 0].real)]

    def offdiag_mass(x: np.ndarray) -> float:
        off = x - np.diag(np.diag(x))
        return float(np.linalg.norm(off))

    for _ in range(max_sweeps):
        if offdiag_mass(a) <= offdiag_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r                      # e^{i beta}
                app = a[p, p].real
                aqq = a[q, q].real
                # Zero the (p, q) entry: rotate by theta with
                # tan(2 theta) solving r*cos2t + (aqq-app)*sin2t/2 = 0.
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = -1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # J = I with J[p,p]=c, J[p,q]=-s*phase, J[q,p]=s*conj(phase),
                # J[q,q]=c; update a <- J^dagger a J on rows/cols p, q.
                col_p = c * a[:, p] + s * np.conj(phase) * a[:, q]
                col_q = -s * phase * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = col_p, col_q
                row_p = c * a[p, :] + s * phase * a[q, :]
                row_q = -s * np.conj(phase) * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = row_p, row_q
    else:
        raise RuntimeError("Jacobi iteration failed to converge")

    return sorted(float(x) for x in np.diag(a).real)
