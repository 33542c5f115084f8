"""n-qubit operators, the Pauli basis, and the Fourier transform over it.

An n-qubit operator is a dense 2^n x 2^n complex matrix.  The Pauli basis
consists of the tensor products

    sigma_s = sigma_{s_1} (x) sigma_{s_2} (x) ... (x) sigma_{s_n},

one for each multi-index s in {0, 1, 2, 3}^n, where sigma_0 is the identity
and sigma_1, sigma_2, sigma_3 are the usual Pauli matrices.  With the
normalized trace tau(X) = tr(X) / 2^n and the inner product
<X, Y> = tau(X^dag Y), the sigma_s form an orthonormal basis, so every X
expands as X = sum_s xhat_s sigma_s with xhat_s = <sigma_s, X>.

Index convention: qubit 1 is the leftmost (most significant) tensor factor.
A multi-index s = (s_1, ..., s_n) is stored at flat position
s_1 * 4^(n-1) + s_2 * 4^(n-2) + ... + s_n in coefficient arrays, i.e. the
base-4 integer with digits read left to right.

The weight |s| is the number of nonzero entries of s; the degree of X is
the largest weight carried by a numerically nonzero Fourier coefficient.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

# Dense storage: side 2^n, so 4^n coefficients.  n = 12 means 4096 x 4096
# matrices, the largest size this toolkit is meant to handle.
MAX_QUBITS = 12

PAULIS = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
PAULIS.flags.writeable = False


class OperatorFormatError(ValueError):
    """Raised when an operator or coefficient file fails validation."""


# ---------------------------------------------------------------------------
# multi-indices


def validate_multi_index(s: Sequence[int]) -> tuple[int, ...]:
    """Check that ``s`` is a valid multi-index and return it as a tuple."""
    t = tuple(int(v) for v in s)
    if not 1 <= len(t) <= MAX_QUBITS:
        raise ValueError(f"multi-index length {len(t)} outside [1, {MAX_QUBITS}]")
    if any(v not in (0, 1, 2, 3) for v in t):
        raise ValueError(f"multi-index entries must lie in {{0,1,2,3}}, got {t}")
    return t


def weight(s: Sequence[int]) -> int:
    """Number of non-identity tensor factors of ``sigma_s``."""
    return sum(1 for v in s if v != 0)


def flat_index(s: Sequence[int]) -> int:
    """Flat position of a multi-index (qubit 1 most significant)."""
    idx = 0
    for v in validate_multi_index(s):
        idx = 4 * idx + v
    return idx


def multi_index(idx: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`flat_index` for a given qubit count."""
    if not 0 <= idx < 4**n:
        raise ValueError(f"flat index {idx} outside [0, 4^{n})")
    digits = []
    for _ in range(n):
        digits.append(idx % 4)
        idx //= 4
    return tuple(reversed(digits))


@lru_cache(maxsize=None)
def pauli_weights(n: int) -> np.ndarray:
    """Weights |s| for all 4^n multi-indices, in flat order."""
    idx = np.arange(4**n)
    w = np.zeros(4**n, dtype=np.int64)
    for _ in range(n):
        w += (idx % 4) != 0
        idx = idx // 4
    w.flags.writeable = False
    return w


# ---------------------------------------------------------------------------
# dense operators


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """A 2^n x 2^n complex matrix with qubit-count metadata.

    Instances are immutable: the entry array is copied on construction and
    marked read-only, so operators are safe to share across workers.
    ``hermitian_hint=True`` asserts hermiticity and is verified.
    """

    n: int
    entries: np.ndarray
    hermitian_hint: bool | None = None

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"qubit count {self.n} outside [1, {MAX_QUBITS}]")
        mat = np.array(self.entries, dtype=complex)
        dim = 2**self.n
        if mat.shape != (dim, dim):
            raise ValueError(f"expected a {dim} x {dim} matrix, got shape {mat.shape}")
        mat.flags.writeable = False
        object.__setattr__(self, "entries", mat)
        if self.hermitian_hint:
            scale = np.max(np.abs(mat))
            if np.max(np.abs(mat - mat.conj().T)) > 1e-12 * max(scale, 0.0) and scale > 0:
                raise ValueError("hermitian_hint=True but matrix is not Hermitian")

    @classmethod
    def from_matrix(cls, mat, hermitian_hint: bool | None = None) -> "DenseOperator":
        mat = np.asarray(mat)
        dim = mat.shape[0]
        n = dim.bit_length() - 1
        if dim < 2 or 2**n != dim:
            raise ValueError(f"matrix side {dim} is not a power of two >= 2")
        return cls(n, mat, hermitian_hint)

    @property
    def dim(self) -> int:
        return 2**self.n

    def dagger(self) -> "DenseOperator":
        return DenseOperator(self.n, self.entries.conj().T, self.hermitian_hint)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        scale = max(np.max(np.abs(self.entries)), 1e-300)
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol * scale)

    # small algebra surface so callers do not have to unwrap .entries
    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        self._same_size(other)
        return DenseOperator(self.n, self.entries + other.entries)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        self._same_size(other)
        return DenseOperator(self.n, self.entries - other.entries)

    def __neg__(self) -> "DenseOperator":
        return DenseOperator(self.n, -self.entries)

    def __mul__(self, c) -> "DenseOperator":
        if not isinstance(c, Number):
            return NotImplemented
        return DenseOperator(self.n, c * self.entries)

    __rmul__ = __mul__

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        self._same_size(other)
        return DenseOperator(self.n, self.entries @ other.entries)

    def _same_size(self, other: "DenseOperator") -> None:
        if not isinstance(other, DenseOperator):
            raise TypeError(f"expected DenseOperator, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"qubit counts differ: {self.n} vs {other.n}")


def identity(n: int) -> DenseOperator:
    return DenseOperator(n, np.eye(2**n, dtype=complex), hermitian_hint=True)


@dataclass(frozen=True, eq=False)
class PauliCoefficients:
    """The 4^n Fourier coefficients of an operator, in flat index order."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (4**self.n,):
            raise ValueError(f"expected {4 ** self.n} coefficients, got shape {c.shape}")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def coeff(self, s: Sequence[int]) -> complex:
        s = validate_multi_index(s)
        if len(s) != self.n:
            raise ValueError(f"multi-index length {len(s)} != n = {self.n}")
        return complex(self.coeffs[flat_index(s)])


# ---------------------------------------------------------------------------
# basic operations

def pauli_matrix(s: Sequence[int]) -> DenseOperator:
    """The tensor product sigma_s for a multi-index s (qubit 1 leftmost)."""
    s = validate_multi_index(s)
    mat = PAULIS[s[0]]
    for v in s[1:]:
        mat = np.kron(mat, PAULIS[v])
    return DenseOperator(len(s), mat, hermitian_hint=True)


def normalized_trace(X: DenseOperator) -> complex:
    """tau(X) = tr(X) / 2^n."""
    return complex(np.trace(X.entries) / X.dim)


def hs_inner(X: DenseOperator, Y: DenseOperator) -> complex:
    """Normalized Hilbert-Schmidt inner product <X, Y> = tau(X^dag Y)."""
    X._same_size(Y)
    return complex(np.sum(X.entries.conj() * Y.entries) / X.dim)


# Forward map: contribution of one qubit to xhat_s is
#   sum_{a,b} (sigma_k[a,b] / 2) X[b..., a...]
# with b the row index and a the column index of that qubit.
_FWD = PAULIS / 2.0
_BWD = np.moveaxis(PAULIS, 0, -1)  # [a, b, k] = sigma_k[a, b]


def pauli_transform(X: DenseOperator) -> PauliCoefficients:
    """Fourier coefficients xhat_s = <sigma_s, X> of a dense operator.

    Runs in O(n 4^n) by contracting one qubit at a time instead of forming
    all 4^n basis matrices.
    """
    n = X.n
    t = X.entries.reshape((2,) * (2 * n))
    for m in range(n, 0, -1):
        # leading remaining qubit: row axis 0, column axis m
        t = np.tensordot(_FWD, t, axes=([1, 2], [m, 0]))
        t = np.moveaxis(t, 0, -1)
    return PauliCoefficients(n, t.reshape(-1))


def inverse_pauli_transform(c: PauliCoefficients) -> DenseOperator:
    """Reassemble sum_s c_s sigma_s from a coefficient array."""
    n = c.n
    t = c.coeffs.reshape((4,) * n)
    for _ in range(n):
        t = np.tensordot(_BWD, t, axes=([2], [0]))
        t = np.moveaxis(t, (0, 1), (-2, -1))
    # axes are now (row_1, col_1, ..., row_n, col_n); split rows from columns
    perm = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    mat = t.transpose(perm).reshape(2**n, 2**n)
    return DenseOperator(n, mat)


def degree(X: DenseOperator, threshold: float | None = None) -> int:
    """Largest weight |s| with |xhat_s| above threshold.

    The default threshold is 1e-12 times the largest coefficient magnitude;
    exact zeros do not survive floating point, so an absolute cutoff would
    be meaningless.  The zero operator has degree 0 by convention.
    """
    c = np.abs(pauli_transform(X).coeffs)
    top = float(c.max())
    if top == 0.0:
        return 0
    if threshold is None:
        threshold = 1e-12 * top
    elif threshold < 0:
        raise ValueError("threshold must be nonnegative")
    mask = c > threshold
    if not mask.any():
        return 0
    return int(pauli_weights(X.n)[mask].max())


def numerical_rank(X: DenseOperator, tol: float | None = None) -> int:
    """Number of eigenvalues of a Hermitian operator with |lambda| > tol."""
    if not X.is_hermitian(1e-10):
        raise ValueError("numerical_rank requires a Hermitian operator")
    lam = np.linalg.eigvalsh((X.entries + X.entries.conj().T) / 2)
    top = float(np.abs(lam).max()) if lam.size else 0.0
    if tol is None:
        tol = 1e-10 * top
    elif tol < 0:
        raise ValueError("tol must be nonnegative")
    return int(np.count_nonzero(np.abs(lam) > tol))


# ---------------------------------------------------------------------------
# file formats


def operator_to_dict(X: DenseOperator) -> dict:
    return {
        "n": X.n,
        "re": X.entries.real.tolist(),
        "im": X.entries.imag.tolist(),
    }


def operator_from_dict(obj: dict) -> DenseOperator:
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise OperatorFormatError(f"malformed operator object: {exc}") from exc
    if not 1 <= n <= MAX_QUBITS:
        raise OperatorFormatError(f"qubit count {n} outside [1, {MAX_QUBITS}]")
    dim = 2**n
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise OperatorFormatError(
            f"expected {dim} x {dim} 're' and 'im' arrays, got {re.shape} and {im.shape}"
        )
    mat = re + 1j * im
    if not np.all(np.isfinite(re)) or not np.all(np.isfinite(im)):
        raise OperatorFormatError("operator entries must be finite")
    return DenseOperator(n, mat)


def save_operator(X: DenseOperator, path) -> None:
    from .writers import atomic_write_text

    atomic_write_text(path, json.dumps(operator_to_dict(X)))


def load_operator(path) -> DenseOperator:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise OperatorFormatError(f"invalid JSON in {path}: {exc}") from exc
    return operator_from_dict(obj)


def coefficients_to_dict(c: PauliCoefficients, threshold: float = 0.0) -> dict:
    """Sparse listing of coefficients with |c_s| above ``threshold``."""
    entries = []
    for idx in np.flatnonzero(np.abs(c.coeffs) > threshold):
        s = "".join(str(d) for d in multi_index(int(idx), c.n))
        v = c.coeffs[idx]
        entries.append({"s": s, "re": float(v.real), "im": float(v.imag)})
    return {"n": c.n, "coeffs": entries}


def coefficients_from_dict(obj: dict) -> PauliCoefficients:
    try:
        n = int(obj["n"])
        items: Iterable[dict] = obj["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise OperatorFormatError(f"malformed coefficient object: {exc}") from exc
    if not 1 <= n <= MAX_QUBITS:
        raise OperatorFormatError(f"qubit count {n} outside [1, {MAX_QUBITS}]")
    coeffs = np.zeros(4**n, dtype=complex)
    for item in items:
        try:
            s = str(item["s"])
            val = float(item["re"]) + 1j * float(item["im"])
        except (KeyError, TypeError, ValueError) as exc:
            raise OperatorFormatError(f"malformed coefficient entry: {exc}") from exc
        if len(s) != n or any(ch not in "0123" for ch in s):
            raise OperatorFormatError(f"bad multi-index string {s!r} for n={n}")
        if not np.isfinite(val.real) or not np.isfinite(val.imag):
            raise OperatorFormatError("coefficients must be finite")
        coeffs[flat_index(tuple(int(ch) for ch in s))] = val
    return PauliCoefficients(n, coeffs)


def save_coefficients(c: PauliCoefficients, path, threshold: float = 0.0) -> None:
    from .writers import atomic_write_text

    atomic_write_text(path, json.dumps(coefficients_to_dict(c, threshold)))


def load_coefficients(path) -> PauliCoefficients:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise OperatorFormatError(f"invalid JSON in {path}: {exc}") from exc
    return coefficients_from_dict(obj)
