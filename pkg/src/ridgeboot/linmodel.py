"""Deterministic linear-model computations: ridge/OLS fits, leverage scores,
and the contrast bias/variance and prediction-error functionals.

Everything penalty-dependent is computed from one thin SVD of the design,
reused across penalties (the harness evaluates many penalties per design).
Penalties are always on the raw scale of (X^T X + rho I); the exponent form
rho = n^(1-gamma) is converted by ``tuning.exponent_to_penalty``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, SingularSystemError

# Relative threshold under which a singular value is treated as zero.
_RANK_RTOL = 1e-12


def _as_matrix(X: np.ndarray, name: str = "X") -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise InputError(f"{name} must be a nonempty 2-D matrix")
    if not np.all(np.isfinite(X)):
        raise InputError(f"{name} must be finite")
    return X


def _as_vector(v: np.ndarray, length: int | None, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1:
        raise InputError(f"{name} must be 1-D")
    if length is not None and v.size != length:
        raise InputError(f"{name} must have length {length}")
    if not np.all(np.isfinite(v)):
        raise InputError(f"{name} must be finite")
    return v


@dataclass(frozen=True)
class Dataset:
    """Design/response pair; carries (beta_true, sigma_true) in simulation mode."""

    X: np.ndarray
    Y: np.ndarray
    beta_true: np.ndarray | None = None
    sigma_true: float | None = None

    def __post_init__(self) -> None:
        X = _as_matrix(self.X)
        Y = _as_vector(self.Y, X.shape[0], "Y")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        if (self.beta_true is None) != (self.sigma_true is None):
            raise InputError("beta_true and sigma_true must be supplied together")
        if self.beta_true is not None:
            beta = _as_vector(self.beta_true, X.shape[1], "beta_true")
            object.__setattr__(self, "beta_true", beta)
            if not (float(self.sigma_true) > 0):
                raise InputError("sigma_true must be positive")
            object.__setattr__(self, "sigma_true", float(self.sigma_true))

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    @property
    def simulation_mode(self) -> bool:
        return self.beta_true is not None


@dataclass(frozen=True)
class RidgeFit:
    """Fitted ridge (or OLS, rho = 0) solution on one dataset."""

    rho: float
    coefficients: np.ndarray
    residuals: np.ndarray
    fitted: np.ndarray


@dataclass(frozen=True)
class ContrastDiagnostics:
    """Variance v_rho(X;c), squared bias b2_rho(X;c), and their ratio."""

    variance: float
    bias_sq: float
    ratio: float


class DesignFactorization:
    """Thin SVD of a design, shared across every penalty evaluated on it."""

    def __init__(self, X: np.ndarray):
        X = _as_matrix(X)
        U, s, Vt = np.linalg.svd(X, full_matrices=False)
        self.X = X
        self.U = U
        self.s = s
        self.Vt = Vt
        self.n, self.p = X.shape

    @property
    def full_column_rank(self) -> bool:
        if self.p > self.n:
            return False
        return bool(self.s[-1] > _RANK_RTOL * max(self.s[0], 1e-300))

    def _gain(self, rho: float) -> np.ndarray:
        # Diagonal factors s_i / (s_i^2 + rho) of (X^T X + rho I)^{-1} X^T.
        if rho < 0:
            raise InputError("rho must be nonnegative")
        if rho == 0.0:
            if not self.full_column_rank:
                raise SingularSystemError(
                    "rho = 0 requires a full-column-rank design with p <= n"
                )
            return 1.0 / self.s
        return self.s / (self.s * self.s + rho)

    def coefficients(self, Y: np.ndarray, rho: float) -> np.ndarray:
        """Solve (X^T X + rho I) beta = X^T Y."""
        g = self._gain(rho)
        return self.Vt.T @ (g * (self.U.T @ Y))

    def contrast_weights(self, c: np.ndarray, rho: float) -> np.ndarray:
        """Row vector a = c^T (X^T X + rho I)^{-1} X^T as a length-n array."""
        g = self._gain(rho)
        return self.U @ (g * (self.Vt @ c))

    def shrinkage_diag(self, rho: float) -> np.ndarray:
        """Diagonal factors s_i^2 / (s_i^2 + rho) of the prediction smoother."""
        if rho < 0:
            raise InputError("rho must be nonnegative")
        if rho == 0.0:
            if not self.full_column_rank:
                raise SingularSystemError(
                    "rho = 0 requires a full-column-rank design with p <= n"
                )
            return np.ones_like(self.s)
        return self.s * self.s / (self.s * self.s + rho)

    def bias_vector(self, beta: np.ndarray, rho: float) -> np.ndarray:
        """delta(X) = [I - (X^T X + rho I)^{-1} X^T X] beta."""
        shrink = self.shrinkage_diag(rho)
        return beta - self.Vt.T @ (shrink * (self.Vt @ beta))

    def leverage(self) -> np.ndarray:
        if not self.full_column_rank:
            raise SingularSystemError("leverage scores require full column rank, p <= n")
        return np.sum(self.U * self.U, axis=1)


def ridge_fit(data: Dataset, rho: float, fact: DesignFactorization | None = None) -> RidgeFit:
    """Ridge solution at raw penalty rho; rho = 0 demands full column rank."""
    if not np.isfinite(rho) or rho < 0:
        raise InputError("rho must be a finite nonnegative real")
    if fact is None:
        fact = DesignFactorization(data.X)
    coef = fact.coefficients(data.Y, float(rho))
    fitted = data.X @ coef
    residuals = data.Y - fitted
    return RidgeFit(rho=float(rho), coefficients=coef, residuals=residuals, fitted=fitted)


def ols_fit(data: Dataset, fact: DesignFactorization | None = None) -> RidgeFit:
    """Least-squares solution; p <= n and full column rank required."""
    if data.p > data.n:
        raise SingularSystemError("OLS requires p <= n")
    return ridge_fit(data, 0.0, fact=fact)


def leverage_scores(X: np.ndarray) -> tuple[np.ndarray, int]:
    """Diagonal of H = X (X^T X)^{-1} X^T and its argmax (ties -> smallest index)."""
    fact = DesignFactorization(X)
    scores = fact.leverage()
    return scores, int(np.argmax(scores))


def contrast_variance(
    X: np.ndarray | DesignFactorization,
    c: np.ndarray,
    rho: float,
    sigma_sq: float,
) -> float:
    """v_rho(X;c) = sigma^2 * ||c^T (X^T X + rho I)^{-1} X^T||_2^2."""
    fact = X if isinstance(X, DesignFactorization) else DesignFactorization(X)
    c = _as_vector(c, fact.p, "c")
    if not np.isfinite(rho) or rho < 0:
        raise InputError("rho must be a finite nonnegative real")
    if not (np.isfinite(sigma_sq) and sigma_sq > 0):
        raise InputError("sigma_sq must be positive")
    a = fact.contrast_weights(c, float(rho))
    return float(sigma_sq * (a @ a))


def bias_vector(X: np.ndarray | DesignFactorization, beta: np.ndarray, rho: float) -> np.ndarray:
    """delta(X), the conditional bias vector of the ridge estimator."""
    fact = X if isinstance(X, DesignFactorization) else DesignFactorization(X)
    beta = _as_vector(beta, fact.p, "beta")
    if not (np.isfinite(rho) and rho > 0):
        raise InputError("rho must be positive")
    return fact.bias_vector(beta, float(rho))


def contrast_bias_sq(
    X: np.ndarray | DesignFactorization,
    c: np.ndarray,
    beta: np.ndarray,
    rho: float,
) -> float:
    """b2_rho(X;c) = (c^T delta(X))^2."""
    fact = X if isinstance(X, DesignFactorization) else DesignFactorization(X)
    c = _as_vector(c, fact.p, "c")
    delta = bias_vector(fact, beta, rho)
    return float(c @ delta) ** 2


def contrast_diagnostics(
    X: np.ndarray | DesignFactorization,
    c: np.ndarray,
    beta: np.ndarray,
    rho: float,
    sigma_sq: float,
) -> ContrastDiagnostics:
    """Bundle v_rho, b2_rho, and their ratio for one contrast."""
    fact = X if isinstance(X, DesignFactorization) else DesignFactorization(X)
    variance = contrast_variance(fact, c, rho, sigma_sq)
    bias_sq = contrast_bias_sq(fact, c, beta, rho)
    if variance > 0:
        ratio = bias_sq / variance
    else:
        ratio = 0.0 if bias_sq == 0 else float("inf")
    return ContrastDiagnostics(variance=variance, bias_sq=bias_sq, ratio=ratio)


def mspe_exact(
    X: np.ndarray | DesignFactorization,
    beta: np.ndarray,
    varrho: float,
    sigma_sq: float,
) -> float:
    """Exact conditional MSPE of the ridge estimator at raw penalty varrho.

    (1/n)||X(E[beta_hat | X] - beta)||^2 + (sigma^2/n) * sum_i (l_i/(l_i + varrho/n))^2
    with l_i the eigenvalues of X^T X / n; the variance term carries sigma^2 so
    both terms have the units of a squared response.
    """
    fact = X if isinstance(X, DesignFactorization) else DesignFactorization(X)
    beta = _as_vector(beta, fact.p, "beta")
    if not (np.isfinite(varrho) and varrho >= 0):
        raise InputError("varrho must be a finite nonnegative real")
    if not (np.isfinite(sigma_sq) and sigma_sq > 0):
        raise InputError("sigma_sq must be positive")
    n = fact.n
    shrink = fact.shrinkage_diag(float(varrho))  # l_i/(l_i + varrho/n) = s_i^2/(s_i^2 + varrho)
    if varrho == 0.0:
        bias_term = 0.0
    else:
        delta = fact.bias_vector(beta, float(varrho))
        xd = fact.X @ delta
        bias_term = float(xd @ xd) / n
    var_term = sigma_sq / n * float(shrink @ shrink)
    return bias_term + var_term


def theta_rule(nu: float) -> float:
    """Pilot-penalty exponent theta as a function of the decay exponent nu."""
    if not (np.isfinite(nu) and nu > 0):
        raise InputError("nu must be positive")
    if nu < 0.5:
        return 2.0 * nu / 3.0
    if nu > 0.5:
        return nu / (nu + 1.0)
    return 1.0 / 3.0


def write_matrix_csv(path: str, arr: np.ndarray) -> None:
    """Headerless CSV writer; 17 significant digits round-trip float64 exactly."""
    arr = np.atleast_2d(np.asarray(arr, dtype=np.float64))
    np.savetxt(path, arr, delimiter=",", fmt="%.17g")


def read_matrix_csv(path: str) -> np.ndarray:
    """Read a headerless CSV of decimal floats as a 2-D array (rows = observations)."""
    arr = np.loadtxt(path, delimiter=",", ndmin=2, dtype=np.float64)
    if arr.size == 0:
        raise InputError(f"{path} is empty")
    return arr


def read_vector_csv(path: str) -> np.ndarray:
    """Read a single-column (or single-row) CSV as a 1-D vector."""
    arr = read_matrix_csv(path)
    if 1 not in arr.shape:
        raise InputError(f"{path} does not hold a vector")
    return arr.reshape(-1)
