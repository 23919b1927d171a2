"""Exact finite-N optimum of the resonator ratio as a sparse eigenproblem.

The bilinear form sum_{mk<=N} r(m) r(mk)/sqrt(k) symmetrises to the
matrix B with B[n][n] = 1 and B[m][n] = 1/(2 sqrt(n/m)) for m | n, so
the ratio maximum over coefficient vectors is the top eigenvalue of B.
B is nonnegative and irreducible (row 1 touches every column), so power
iteration from the all-ones vector converges to the Perron pair.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import IterationError, ResourceError, ValidationError
from .resonator import denominator_exact, numerator_exact, vector_on_range

MATRIX_CAP = 20_000
DEFAULT_TOL = 1e-10
MAX_ITERS = 100_000


@dataclass(frozen=True)
class DivisorFormMatrix:
    N: int
    matrix: sp.csr_matrix  # symmetric, unit diagonal

    @property
    def nnz(self):
        return self.matrix.nnz


def build_matrix(n_bound, cap=MATRIX_CAP):
    if n_bound < 1:
        raise ValidationError("matrix dimension must be >= 1")
    if n_bound > cap:
        raise ResourceError("divisor matrix for N=%d exceeds the cap %d"
                            % (n_bound, cap))
    rows = [np.arange(1, n_bound + 1)]
    cols = [np.arange(1, n_bound + 1)]
    vals = [np.ones(n_bound)]
    for m in range(1, n_bound + 1):
        multiples = np.arange(2 * m, n_bound + 1, m)
        if len(multiples) == 0:
            continue
        entry = 0.5 / np.sqrt(multiples / m)
        rows.append(np.full(len(multiples), m))
        cols.append(multiples)
        vals.append(entry)
        rows.append(multiples)
        cols.append(np.full(len(multiples), m))
        vals.append(entry)
    rows = np.concatenate(rows) - 1
    cols = np.concatenate(cols) - 1
    vals = np.concatenate(vals)
    mat = sp.csr_matrix((vals, (rows, cols)), shape=(n_bound, n_bound))
    return DivisorFormMatrix(n_bound, mat)


def quadratic_form(dfm, vec):
    """vec^T B vec; agrees with numerator_exact on the matching table."""
    return float(vec @ (dfm.matrix @ vec))


def max_ratio_eigen(n_bound, tol=DEFAULT_TOL, max_iters=MAX_ITERS, cap=MATRIX_CAP):
    """Top eigenpair of the divisor form matrix by plain power iteration.

    Deterministic all-ones start; stops when successive Rayleigh
    quotients differ by less than tol.  Returns (lambda_max, unit vector).
    """
    if tol <= 0:
        raise ValidationError("tol must be positive")
    dfm = build_matrix(n_bound, cap=cap)
    if n_bound == 1:
        return 1.0, np.ones(1)
    mat = dfm.matrix
    vec = np.ones(n_bound) / math.sqrt(n_bound)
    rayleigh = float(vec @ (mat @ vec))
    for _ in range(max_iters):
        nxt = mat @ vec
        nxt /= np.linalg.norm(nxt)
        nxt_rayleigh = float(nxt @ (mat @ nxt))
        done = abs(nxt_rayleigh - rayleigh) < tol
        vec, rayleigh = nxt, nxt_rayleigh
        if done:
            return rayleigh, vec
    raise IterationError(
        "power iteration did not converge below %g in %d iterations (last "
        "Rayleigh quotient %.17g)" % (tol, max_iters, rayleigh),
        last_value=rayleigh)


@dataclass(frozen=True)
class RatioComparison:
    N: int
    heuristic: float    # numerator/denominator of the scheme table
    lambda_max: float   # true finite-N optimum
    gap: float


def compare_heuristic(n_bound, table, tol=DEFAULT_TOL):
    """Scheme table ratio vs. the exact optimum at the same N."""
    if table.spec.N != n_bound:
        raise ValidationError("table support bound %d != N=%d"
                              % (table.spec.N, n_bound))
    heuristic = numerator_exact(table) / denominator_exact(table)
    lam, _ = max_ratio_eigen(n_bound, tol=tol)
    if heuristic > lam * (1.0 + 1e-9):
        raise AssertionError(
            "scheme ratio %.17g exceeds the eigen optimum %.17g" % (heuristic, lam))
    return RatioComparison(n_bound, heuristic, lam, lam - heuristic)


def rayleigh_of_table(n_bound, table):
    """Rayleigh quotient of the table's dense coefficient vector."""
    dfm = build_matrix(n_bound)
    vec = vector_on_range(table)[1:]
    return quadratic_form(dfm, vec) / float(vec @ vec)
