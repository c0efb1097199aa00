"""Central numerical tolerance table.

Every module pulls its default tolerance from here so that the whole
artifact can be audited (or tightened) in one place.  The CLI exposes
``--tol`` which overrides SIMPLEX_DIAMETER for a single run; the other
entries are compile-time defaults.
"""

UNIT_NORM = 1e-12          # |<v|v> - 1| for vectors flagged unit
HERMITIAN = 1e-12          # Frobenius norm of M - M^dagger
DENSITY_TRACE = 1e-12      # |tr(rho) - 1|
DENSITY_MIN_EIG = -1e-10   # eigenvalue floor for density matrices
JACOBI_OFFDIAG = 1e-13     # off-diagonal Frobenius mass at convergence
PROB_CLAMP = 1e-12         # Born-rule negatives clamped to 0 within this
PROB_SUM = 1e-10           # distribution normalization check
MARGINAL_FEASIBLE = 1e-10  # slack allowed in F >= max(|A|, |C|)
CORRELATOR_RANGE = 1e-10   # slack on |E| <= 1
LP_FEASIBLE = 1e-9         # phase-I objective threshold for feasibility
SIMPLEX_DIAMETER = 1e-10   # Nelder-Mead convergence: simplex diameter
VIOLATION_STRICT = 1e-9    # margin for the forced-CHSH-violation witness
ORTHO_COLLAPSE = 1e-8      # norm below which Gram-Schmidt output is degenerate
NEAR_ZERO_RESIDUAL = 1e-8  # scan minimizers below this count as exact matches
UNIQUE_DISTANCE = 1e-3     # how close an exact match must sit to the known point
