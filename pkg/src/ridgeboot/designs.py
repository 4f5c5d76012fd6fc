"""Synthetic near low-rank Gaussian designs, coefficient vectors, and noise laws.

Population covariance: eigenvalues j^(-eta) in a random orthogonal eigenbasis
(Q factor of a seeded Gaussian QR, sign-fixed so the R diagonal is nonnegative).
Noise families all satisfy the finite-fourth-moment requirement of the
empirical-law convergence rate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, InsufficientDataError, MomentConditionError
from .linmodel import Dataset

_EIGENVALUE_FLOOR = 1e-12
_NOISE_FAMILIES = ("scaled_t", "normal", "two_point", "custom_atoms")


@dataclass(frozen=True)
class CovarianceModel:
    """Population covariance with power-law spectrum and random eigenbasis."""

    p: int
    eta: float
    eigenvalues: np.ndarray
    eigenbasis: np.ndarray

    def __post_init__(self) -> None:
        lam = np.asarray(self.eigenvalues, dtype=np.float64)
        Q = np.asarray(self.eigenbasis, dtype=np.float64)
        if lam.shape != (self.p,) or Q.shape != (self.p, self.p):
            raise InputError("eigenvalues/eigenbasis shapes must match p")
        if np.any(lam <= 0) or np.any(np.diff(lam) > 0):
            raise InputError("eigenvalues must be positive and nonincreasing")
        if abs(lam[0] - 1.0) > 1e-12:
            raise InputError("leading eigenvalue must be 1")
        if np.max(np.abs(Q.T @ Q - np.eye(self.p))) > 1e-10:
            raise InputError("eigenbasis must be orthonormal")
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "eigenbasis", Q)

    def covariance(self) -> np.ndarray:
        Q = self.eigenbasis
        return (Q * self.eigenvalues) @ Q.T

    def sqrt(self) -> np.ndarray:
        Q = self.eigenbasis
        return (Q * np.sqrt(self.eigenvalues)) @ Q.T


@dataclass(frozen=True)
class NoiseSpec:
    """Centered noise law with target standard deviation sigma.

    Families: "scaled_t" (t on `dof` degrees of freedom rescaled to SD sigma,
    dof > 4 so the fourth moment is finite), "normal", "two_point" (equal mass
    at +-sigma), "custom_atoms" (uniform law on given atoms, recentered and
    rescaled to SD sigma).
    """

    family: str = "scaled_t"
    sigma: float = 1.0
    dof: float = 5.0
    atoms: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.family not in _NOISE_FAMILIES:
            raise InputError(f"unknown noise family {self.family!r}")
        if not (np.isfinite(self.sigma) and self.sigma >= 0):
            raise InputError("sigma must be a finite nonnegative real")
        if self.family == "scaled_t" and not self.dof > 4:
            raise MomentConditionError("t noise requires dof > 4 for a finite fourth moment")
        if self.family == "custom_atoms":
            atoms = np.asarray(self.atoms, dtype=np.float64)
            if atoms.ndim != 1 or atoms.size < 2 or not np.all(np.isfinite(atoms)):
                raise InputError("custom_atoms requires >= 2 finite atoms")
            centered = atoms - atoms.mean()
            spread = float(np.sqrt(np.mean(centered**2)))
            if spread == 0.0:
                raise InputError("custom atoms must not be all equal")
            object.__setattr__(self, "atoms", centered * (self.sigma / spread))
        elif self.atoms is not None:
            raise InputError("atoms are only valid for the custom_atoms family")

    def sampler(self):
        """Adapter for the reference-sampler protocol: sampler(rng, size)."""
        return lambda rng, size: sample_noise(self, size, rng)


def make_covariance(p: int, eta: float, rng: np.random.Generator) -> CovarianceModel:
    """Power-law spectrum j^(-eta) with a seeded random orthogonal eigenbasis."""
    if not (isinstance(p, (int, np.integer)) and p >= 1):
        raise InputError("p must be a positive integer")
    if not (np.isfinite(eta) and eta >= 0):
        raise InputError("eta must be a finite nonnegative real")
    lam = np.arange(1, p + 1, dtype=np.float64) ** (-float(eta))
    G = rng.standard_normal((p, p))
    Q, R = np.linalg.qr(G)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return CovarianceModel(p=int(p), eta=float(eta), eigenvalues=lam, eigenbasis=Q * signs)


def sample_design(n: int, cov: CovarianceModel, rng: np.random.Generator) -> np.ndarray:
    """n i.i.d. rows from N(0, Sigma): X = Z Sigma^(1/2)."""
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise InputError("n must be a positive integer")
    Z = rng.standard_normal((int(n), cov.p))
    return Z @ cov.sqrt()


def sample_noise(spec: NoiseSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """n i.i.d. draws with mean 0 and standard deviation spec.sigma."""
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise InputError("n must be a positive integer")
    n = int(n)
    if spec.family == "scaled_t":
        # t draw = normal / sqrt(chi2/dof); Var(t_dof) = dof/(dof-2).
        z = rng.standard_normal(n)
        w = rng.chisquare(spec.dof, n)
        t = z / np.sqrt(w / spec.dof)
        return t * (spec.sigma / np.sqrt(spec.dof / (spec.dof - 2.0)))
    if spec.family == "normal":
        return spec.sigma * rng.standard_normal(n)
    if spec.family == "two_point":
        return spec.sigma * (2.0 * rng.integers(0, 2, n) - 1.0)
    return spec.atoms[rng.integers(0, spec.atoms.size, n)]


def make_beta(p: int, style: str = "uniform_unit", values: np.ndarray | None = None) -> np.ndarray:
    """Coefficient vector; uniform_unit is the all-ones direction at unit norm."""
    if not (isinstance(p, (int, np.integer)) and p >= 1):
        raise InputError("p must be a positive integer")
    if style == "uniform_unit":
        return np.full(int(p), 1.0 / np.sqrt(p))
    if style == "custom":
        beta = np.asarray(values, dtype=np.float64)
        if beta.shape != (int(p),) or not np.all(np.isfinite(beta)):
            raise InputError("custom beta must be a finite length-p vector")
        return beta
    raise InputError(f"unknown beta style {style!r}")


def generate_dataset(
    n: int,
    cov: CovarianceModel,
    beta: np.ndarray,
    spec: NoiseSpec,
    rng: np.random.Generator,
) -> Dataset:
    """Simulation-mode dataset Y = X beta + eps with X and eps independent.

    Stream order is fixed: the design is drawn first, then the noise.
    """
    beta = np.asarray(beta, dtype=np.float64)
    if beta.shape != (cov.p,):
        raise InputError("beta length must match the covariance dimension")
    X = sample_design(n, cov, rng)
    eps = sample_noise(spec, n, rng)
    sigma = spec.sigma if spec.sigma > 0 else None
    if sigma is None:
        # sigma = 0 is allowed for exactness tests; Dataset demands a positive
        # sigma in simulation mode, so carry a tiny placeholder via observed mode.
        return Dataset(X=X, Y=X @ beta + eps)
    return Dataset(X=X, Y=X @ beta + eps, beta_true=beta, sigma_true=float(sigma))


def estimate_decay(sample_eigenvalues: np.ndarray) -> float:
    """nu_hat = negative slope of log eigenvalue vs log index.

    The fit uses the leading half of the spectrum (at least 3 values,
    floor 1e-12): sample eigenvalues past p/2 decay faster than the
    population profile when p is comparable to n and would bias the
    slope upward.
    """
    lam = np.asarray(sample_eigenvalues, dtype=np.float64)
    if lam.ndim != 1 or lam.size == 0:
        raise InputError("sample_eigenvalues must be a nonempty 1-D sequence")
    if np.any(np.diff(lam) > 1e-9 * np.abs(lam[:-1])):
        raise InputError("sample_eigenvalues must be nonincreasing")
    head = max(3, lam.size // 2)
    lam = lam[:head]
    idx = np.arange(1, lam.size + 1, dtype=np.float64)
    keep = lam > _EIGENVALUE_FLOOR
    if int(keep.sum()) < 3:
        raise InsufficientDataError("need at least 3 eigenvalues above the floor")
    slope = np.polyfit(np.log(idx[keep]), np.log(lam[keep]), 1)[0]
    return float(-slope)
