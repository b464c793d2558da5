"""Dense linear algebra kernels shared by the selectors and the harness.

Everything here is a thin, contract-checked layer over LAPACK via
numpy/scipy. The two quantities the selection algorithms actually consume
are row leverage scores (squared row norms of the thin-SVD factor U) and
condition numbers of small symmetric Gram matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg as sla

from .errors import ContractError, DimensionError, NumericError

# Relative cutoff below which a singular/eigen value is treated as zero.
EPS_RANK = 1e-12

# Absolute tolerance for the symmetry check in condition_number.
SYMMETRY_TOL = 1e-8

# The fast tall-matrix SVD path loses orthonormality of U at roughly
# eps * cond(X); beyond this cutoff we pay for the LAPACK divide-and-conquer
# driver instead so that U stays orthonormal to ~1e-11.
_FAST_PATH_MAX_COND = 1e5


@dataclass(frozen=True)
class DataMatrix:
    """An n x p covariate matrix with an optional response vector.

    Construction validates shape and finiteness once so downstream code
    can skip per-call checks. Instances are immutable.
    """

    values: np.ndarray
    response: np.ndarray | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 2:
            raise DimensionError(f"expected a 2-d matrix, got ndim={vals.ndim}")
        if vals.shape[0] < 1 or vals.shape[1] < 1:
            raise DimensionError(f"matrix must be at least 1 x 1, got {vals.shape}")
        if not np.isfinite(vals).all():
            raise ContractError("covariate matrix contains non-finite entries")
        object.__setattr__(self, "values", vals)
        if self.response is not None:
            resp = np.asarray(self.response, dtype=np.float64)
            if resp.ndim != 1 or resp.shape[0] != vals.shape[0]:
                raise DimensionError(
                    f"response must be 1-d with length {vals.shape[0]}, "
                    f"got shape {resp.shape}"
                )
            if not np.isfinite(resp).all():
                raise ContractError("response contains non-finite entries")
            object.__setattr__(self, "response", resp)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    def take(self, indices) -> "DataMatrix":
        """Row subset as a new DataMatrix (response rows come along)."""
        idx = np.asarray(indices, dtype=np.intp)
        resp = None if self.response is None else self.response[idx]
        return DataMatrix(self.values[idx], resp)


def as_data_matrix(x, response=None) -> DataMatrix:
    """Coerce a plain array (or pass through a DataMatrix) to DataMatrix."""
    if isinstance(x, DataMatrix):
        return x
    return DataMatrix(np.asarray(x), response)


class SvdFactors(NamedTuple):
    """Thin SVD ``X = U @ diag(singular_values) @ V.T``.

    U is n x p with orthonormal columns, singular_values is length p and
    nonincreasing, V is p x p orthogonal.
    """

    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray


def thin_svd(X) -> SvdFactors:
    """Thin singular value decomposition of an n x p matrix, n >= p.

    For clearly tall, well-conditioned inputs the factorization runs
    through a QR of X followed by an SVD of the small triangular factor,
    which is substantially faster than the general driver at the same
    reconstruction accuracy; ill-conditioned or near-square inputs fall
    back to LAPACK gesdd so U keeps orthonormal columns in all cases.

    Parameters
    ----------
    X : DataMatrix or array_like
        Input matrix, n x p with n >= p.

    Returns
    -------
    SvdFactors
        Factors (U, singular_values, V) with X = U @ diag(s) @ V.T.

    Raises
    ------
    DimensionError
        If n < p.
    NumericError
        If the underlying LAPACK routine does not converge.
    """
    A = as_data_matrix(X).values
    n, p = A.shape
    if n < p:
        raise DimensionError(f"thin_svd requires n >= p, got n={n}, p={p}")
    try:
        if n >= 2 * p:
            R = sla.qr(A, mode="r", check_finite=False)[0][:p]
            Ur, s, Vt = sla.svd(R, check_finite=False)
            if s[0] > 0.0 and s[-1] > s[0] / _FAST_PATH_MAX_COND:
                U = A @ (Vt.T / s)
                return SvdFactors(U, s, Vt.T)
        U, s, Vt = sla.svd(
            A, full_matrices=False, check_finite=False, lapack_driver="gesdd"
        )
    except np.linalg.LinAlgError as exc:  # pragma: no cover - hardware dependent
        raise NumericError(f"SVD failed to converge: {exc}") from exc
    return SvdFactors(U, s, Vt.T)


def matrix_rank_from_singular_values(s: np.ndarray) -> int:
    """Number of singular values above the relative EPS_RANK cutoff."""
    s = np.asarray(s, dtype=np.float64)
    if s.size == 0 or s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > s[0] * EPS_RANK))


def leverage_scores(factors: SvdFactors) -> np.ndarray:
    """Leverage score of every row: squared row norm of the U factor.

    Only the U columns belonging to nonzero singular values enter, so the
    scores equal the diagonal of the hat matrix X (X'X)^-1 X' whenever X
    has full column rank, each score lies in [0, 1], and they sum to
    rank(X).

    Parameters
    ----------
    factors : SvdFactors
        Output of :func:`thin_svd`.

    Returns
    -------
    numpy.ndarray
        Length-n vector of leverage scores.
    """
    r = matrix_rank_from_singular_values(factors.singular_values)
    U = factors.U[:, :r]
    return np.einsum("ij,ij->i", U, U)


def condition_number(B) -> float:
    """Condition number lambda_max / lambda_min of a symmetric PSD matrix.

    Returns +inf when the matrix is numerically singular, i.e. when
    lambda_min <= EPS_RANK * lambda_max.

    Parameters
    ----------
    B : array_like
        Square symmetric positive semidefinite matrix.

    Raises
    ------
    DimensionError
        If B is not square.
    ContractError
        If B deviates from symmetry by more than SYMMETRY_TOL, or has a
        clearly negative eigenvalue.
    """
    M = np.asarray(B, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"condition_number needs a square matrix, got {M.shape}")
    if M.shape[0] == 0:
        raise DimensionError("condition_number needs at least a 1 x 1 matrix")
    scale = max(1.0, float(np.max(np.abs(M))))
    if float(np.max(np.abs(M - M.T))) > SYMMETRY_TOL * scale:
        raise ContractError("condition_number requires a symmetric matrix")
    try:
        eigs = np.linalg.eigvalsh(M)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    lam_max = float(eigs[-1])
    lam_min = float(eigs[0])
    if lam_max <= 0.0:
        return math.inf
    if lam_min < -SYMMETRY_TOL * lam_max:
        raise ContractError("condition_number requires a PSD matrix")
    if lam_min <= EPS_RANK * lam_max:
        return math.inf
    return lam_max / lam_min


def logdet_info(Z, sigma2: float) -> float:
    """Log determinant of the information matrix (1/sigma2) * Z'Z.

    Z is the k x (p+1) subdata design including its leading intercept
    column; k must be at least p+1 for the determinant to have a chance
    of being positive. Returns -inf when Z'Z is singular.

    Parameters
    ----------
    Z : array_like
        Subdata design matrix, k x (p+1).
    sigma2 : float
        Error variance, must be positive.
    """
    from .errors import ConfigError

    M = np.asarray(Z, dtype=np.float64)
    if M.ndim != 2:
        raise DimensionError(f"expected a 2-d design, got ndim={M.ndim}")
    k, q = M.shape
    if k < q:
        raise DimensionError(
            f"need at least as many rows as columns for a nonsingular "
            f"information matrix, got {k} rows for {q} columns"
        )
    if not sigma2 > 0.0:
        raise ConfigError(f"sigma2 must be positive, got {sigma2}")
    gram = M.T @ M
    sign, logabs = np.linalg.slogdet(gram)
    if sign <= 0.0 or not np.isfinite(logabs):
        return -math.inf
    return float(logabs - q * math.log(sigma2))
