"""Hermitian eigendecompositions, Schatten norms, and the entropy functional.

All norms use the normalized trace tau = tr / 2^n, so the identity has unit
p-norm for every p.  The entropy of a positive semidefinite operator is

    Ent(X) = tau(X ln X) - tau(X) ln tau(X),

with the continuous extension 0 ln 0 = 0.  Eigenvalues of nominally PSD
inputs that dip slightly below zero (within -1e-10 times the largest
eigenvalue) are clamped to zero; anything lower is treated as a genuine
negativity and rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operators import DenseOperator

LN2 = math.log(2.0)

# Relative dip below zero tolerated before an operator stops counting as PSD.
PSD_CLAMP = 1e-10


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_hermitian(X: DenseOperator, herm_tol: float = 1e-10) -> Spectrum:
    """Full eigendecomposition of a Hermitian operator."""
    if not X.is_hermitian(herm_tol):
        raise ValueError("eig_hermitian requires a Hermitian operator")
    lam, vec = np.linalg.eigh((X.entries + X.entries.conj().T) / 2)
    return Spectrum(lam, vec)


def psd_eigenvalues(X: DenseOperator) -> np.ndarray:
    """Eigenvalues of a PSD operator, ascending, with roundoff dips clamped.

    Raises if any eigenvalue falls below -PSD_CLAMP times the largest one.
    """
    lam = eig_hermitian(X).eigenvalues
    top = float(lam[-1])
    floor = -PSD_CLAMP * max(top, 0.0)
    if lam[0] < floor:
        raise ValueError(
            f"operator is not PSD: min eigenvalue {lam[0]:.3e} vs largest {top:.3e}"
        )
    return np.clip(lam, 0.0, None)


def abs_operator(X: DenseOperator) -> DenseOperator:
    """|X| = sqrt(X^dag X): PSD with the singular values of X."""
    u, s, vh = np.linalg.svd(X.entries)
    mat = (vh.conj().T * s) @ vh
    mat = (mat + mat.conj().T) / 2
    return DenseOperator(X.n, mat, hermitian_hint=True)


def schatten_norm(X: DenseOperator, p: float) -> float:
    """Normalized Schatten p-norm (tau |X|^p)^(1/p); p = inf gives the
    largest singular value."""
    if p != math.inf and p < 1:
        raise ValueError(f"schatten_norm requires p >= 1, got {p}")
    s = np.linalg.svd(X.entries, compute_uv=False)
    top = float(s[0])
    if p == math.inf or top == 0.0:
        return top
    # factor out the largest singular value so s**p cannot overflow
    mean_p = float(np.mean((s / top) ** p))
    return top * math.exp(math.log(mean_p) / p)


def _xlogx(v: np.ndarray) -> np.ndarray:
    safe = np.where(v > 0.0, v, 1.0)
    return v * np.log(safe)


def entropy_from_eigenvalues(lam: np.ndarray) -> float:
    """Ent of a PSD operator given its (clamped, nonnegative) eigenvalues."""
    tau = float(np.mean(lam))
    if tau == 0.0:
        raise ValueError("entropy of the zero operator is undefined")
    ent = float(np.mean(_xlogx(lam))) - tau * math.log(tau)
    return max(ent, 0.0)


def entropy(X: DenseOperator) -> float:
    """Ent(X) = tau(X ln X) - tau(X) ln tau(X) for PSD X != 0."""
    return entropy_from_eigenvalues(psd_eigenvalues(X))


def normalized_entropy(X: DenseOperator) -> float:
    """Ent(X^2) / (n tau(X^2)) for PSD X != 0; always lies in [0, ln 2].

    Values escaping the interval by at most 1e-10 (roundoff) are clamped;
    larger excursions are impossible for PSD input and raise.
    """
    lam2 = psd_eigenvalues(X) ** 2
    tau2 = float(np.mean(lam2))
    if tau2 == 0.0:
        raise ValueError("normalized entropy of the zero operator is undefined")
    val = entropy_from_eigenvalues(lam2) / (X.n * tau2)
    if val < -1e-10 or val > LN2 + 1e-10:
        raise ValueError(f"normalized entropy {val} escaped [0, ln 2]")
    return min(max(val, 0.0), LN2)


def psd_power(X: DenseOperator, a: float) -> DenseOperator:
    """X^a for PSD X through the spectrum (0^a = 0 for a > 0)."""
    if a < 0:
        raise ValueError("psd_power requires a nonnegative exponent")
    spec = eig_hermitian(X)
    lam = np.clip(spec.eigenvalues, 0.0, None)
    powered = np.ones_like(lam) if a == 0 else lam**a
    mat = (spec.eigenvectors * powered) @ spec.eigenvectors.conj().T
    mat = (mat + mat.conj().T) / 2
    return DenseOperator(X.n, mat, hermitian_hint=True)


def psd_log(X: DenseOperator) -> DenseOperator:
    """ln X for strictly positive definite X."""
    spec = eig_hermitian(X)
    lam = spec.eigenvalues
    if lam[0] <= 1e-14 * max(float(lam[-1]), 0.0) or lam[0] <= 0.0:
        raise ValueError("psd_log requires a strictly positive definite operator")
    mat = (spec.eigenvectors * np.log(lam)) @ spec.eigenvectors.conj().T
    mat = (mat + mat.conj().T) / 2
    return DenseOperator(X.n, mat, hermitian_hint=True)
