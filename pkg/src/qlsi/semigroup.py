"""The n-qubit depolarizing semigroup, its generator, and the Dirichlet form.

The single-qubit generator is L(X) = X - tau(X) I; acting on qubit i of an
n-qubit operator (identity elsewhere) it is written Lhat_i, and the full
generator is K_n = sum_i Lhat_i.  The semigroup Psi_t = exp(-t K_n) acts
diagonally on the Pauli basis,

    Psi_t(sigma_s) = exp(-t |s|) sigma_s,

so time evolution is a pointwise rescaling of Fourier coefficients.  That
diagonal action is the production path here; the dense per-qubit definition
is kept for the generator (and exercised as an independent oracle by the
test suite).
"""

from __future__ import annotations

import numpy as np

from .operators import (
    DenseOperator,
    identity,
    inverse_pauli_transform,
    normalized_trace,
    pauli_transform,
    pauli_weights,
    PauliCoefficients,
)

# Beyond this time every non-identity Pauli factor has decayed below the
# smallest normal double, so the exact limit tau(X) I is returned instead.
MAX_TIME = 700.0


def _partial_average(X: DenseOperator, i: int) -> DenseOperator:
    """Replace qubit i of X by tau_i(X) (x) I/2 on that slot."""
    n = X.n
    t = X.entries.reshape((2,) * (2 * n))
    traced = np.trace(t, axis1=i - 1, axis2=n + i - 1)
    out = np.tensordot(np.eye(2, dtype=complex) / 2, traced, axes=0)
    out = np.moveaxis(out, (0, 1), (i - 1, n + i - 1))
    return DenseOperator(n, out.reshape(X.dim, X.dim))


def lindblad_apply(X: DenseOperator, i: int) -> DenseOperator:
    """Apply the single-qubit generator on qubit i: X - (partial average)."""
    if not 1 <= i <= X.n:
        raise ValueError(f"qubit index {i} outside [1, {X.n}]")
    return X - _partial_average(X, i)


def generator_apply(X: DenseOperator) -> DenseOperator:
    """K_n X as the dense sum of per-qubit generator actions.

    Equals the diagonal Pauli action xhat_s -> |s| xhat_s; the test suite
    compares the two paths.
    """
    out = lindblad_apply(X, 1)
    for i in range(2, X.n + 1):
        out = out + lindblad_apply(X, i)
    return out


def depolarize(X: DenseOperator, t: float) -> DenseOperator:
    """Psi_t^(x n)(X): rescale each Fourier coefficient by exp(-t |s|)."""
    if t < 0:
        raise ValueError(f"depolarize requires t >= 0, got {t}")
    if t == 0.0:
        return X
    if t > MAX_TIME:
        return normalized_trace(X) * identity(X.n)
    c = pauli_transform(X)
    scaled = c.coeffs * np.exp(-t * pauli_weights(X.n))
    return inverse_pauli_transform(PauliCoefficients(X.n, scaled))


def dirichlet_form(X: DenseOperator) -> float:
    """<X, K_n X> = sum_s |s| |xhat_s|^2; real and nonnegative for any X."""
    c = pauli_transform(X).coeffs
    w = pauli_weights(X.n)
    return float(np.sum(w * (c.real**2 + c.imag**2)))
