"""Numerical building blocks: binary entropy, log-domain binomials,
degenerate spectra and dense Hermitian eigenvalues.

Eigenvalue bookkeeping is done with natural logs throughout; bits appear
only at the entropy boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _eigh

LN2 = math.log(2.0)
NEG_TOL = 1e-12
WEIGHT_TOL = 1e-9


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class EigenvalueError(ArithmeticError):
    """Negative spectrum, non-Hermitian input or non-convergence."""


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x), in bits."""
    if not -NEG_TOL <= x <= 1.0 + NEG_TOL:  # also rejects NaN
        raise DomainError(f"binary_entropy: {x!r} is not a probability")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return -(x * math.log2(x) + (1.0 - x) * math.log2(1.0 - x))


def invert_binary_entropy(h: float) -> float:
    """The x in [1/2, 1] with binary_entropy(x) == h (bisection)."""
    if not 0.0 <= h <= 1.0:
        raise DomainError(f"invert_binary_entropy: {h!r} not in [0, 1]")
    if h == 1.0:
        return 0.5
    if h == 0.0:
        return 1.0
    lo, hi = 0.5, 1.0  # H is decreasing on this interval
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if binary_entropy(mid) > h:
            lo = mid
        else:
            hi = mid
    return lo if abs(binary_entropy(lo) - h) <= abs(binary_entropy(hi) - h) else hi


def eig_2x2_hermitian(m) -> tuple[float, float]:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    scale = max(float(np.max(np.abs(m))), 1.0)
    if np.max(np.abs(m - m.conj().T)) > 1e-12 * scale:
        raise EigenvalueError("matrix is not Hermitian")
    a, d = m[0, 0].real, m[1, 1].real
    b = abs(m[0, 1])
    tr = a + d
    disc = math.hypot(a - d, 2.0 * b)
    hi = 0.5 * (tr + disc)
    # det / hi avoids cancellation in the small eigenvalue
    det = a * d - b * b
    lo = det / hi if hi > 0.0 else 0.5 * (tr - disc)
    return hi, lo


def hermitian_eigenvalues(m, method: str = "householder") -> np.ndarray:
    """All eigenvalues of a dense Hermitian matrix, ascending.

    ``method`` is ``"householder"`` (tridiagonalization + implicit QL),
    ``"jacobi"`` (cyclic rotations, for cross-checks) or ``"lapack"``.
    """
    m = np.array(m, dtype=np.complex128, copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    n = m.shape[0]
    if n == 0:
        return np.empty(0)
    norm = float(np.max(np.abs(m)))
    if np.max(np.abs(m - m.conj().T)) > 1e-12 * norm:
        raise EigenvalueError("matrix is not Hermitian")
    if norm == 0.0:
        return np.zeros(n)
    m = 0.5 * (m + m.conj().T)
    if method == "householder":
        vals, ok = _eigh.householder_ql(m)
    elif method == "jacobi":
        vals, ok = _eigh.jacobi(m, 1e-15 * np.linalg.norm(m))
    elif method == "lapack":
        return np.linalg.eigvalsh(m)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    if not ok:
        raise EigenvalueError(f"{method} eigensolver did not converge (n={n})")
    return np.sort(vals)


def log_binomial(n: int, k: int) -> float:
    """ln C(n, k)."""
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"log_binomial: need 0 <= k <= n, got n={n}, k={k}")
    k = min(k, n - k)
    if k == 0:
        return 0.0
    if n <= 2000:
        return math.log(math.comb(n, k))
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


@lru_cache(maxsize=64)
def log_binomial_row(n: int) -> np.ndarray:
    """ln C(n, k) for k = 0..n (read-only)."""
    row = np.array([log_binomial(n, k) for k in range(n + 1)])
    row.setflags(write=False)
    return row


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicities, both stored as natural logs.

    A zero eigenvalue has ``log_values == -inf``.
    """

    log_values: np.ndarray
    log_mults: np.ndarray

    @classmethod
    def from_values(cls, values, log_scale: float = 0.0, log_mult=0.0) -> "Spectrum":
        """Build from raw (possibly round-off negative) eigenvalues.

        Each eigenvalue is ``exp(log_scale) * value``.
        """
        values = np.asarray(values, dtype=float)
        if values.size and values.min() < -NEG_TOL:
            raise EigenvalueError(f"negative eigenvalue {values.min():.3e}")
        lv = np.full(values.shape, -np.inf)
        pos = values > 0.0
        lv[pos] = np.log(values[pos]) + log_scale
        lm = np.broadcast_to(np.asarray(log_mult, dtype=float), values.shape).copy()
        return cls(lv, lm)

    @classmethod
    def concat(cls, parts) -> "Spectrum":
        parts = list(parts)
        if not parts:
            return cls(np.empty(0), np.empty(0))
        return cls(
            np.concatenate([p.log_values for p in parts]),
            np.concatenate([p.log_mults for p in parts]),
        )

    def __len__(self):
        return self.log_values.size

    def weights(self) -> np.ndarray:
        return np.exp(self.log_values + self.log_mults)

    def total_weight(self) -> float:
        return math.fsum(self.weights())

    def log_dimension(self) -> float:
        """ln of the total multiplicity."""
        return float(np.logaddexp.reduce(self.log_mults)) if len(self) else -math.inf

    def sorted_values(self) -> np.ndarray:
        """Eigenvalues expanded by multiplicity; only for small integer multiplicities."""
        mults = np.rint(np.exp(self.log_mults)).astype(np.int64)
        vals = np.exp(self.log_values)
        return np.sort(np.repeat(vals, mults))


def spectrum_entropy(s: Spectrum, check_weight: bool = True) -> float:
    """Von Neumann entropy in bits, accumulated in the log domain."""
    if check_weight:
        w = s.total_weight()
        if abs(w - 1.0) > WEIGHT_TOL:
            raise EigenvalueError(f"spectrum weight {w!r} differs from 1")
    keep = np.isfinite(s.log_values)
    lv = s.log_values[keep]
    terms = np.exp(lv + s.log_mults[keep]) * (-lv / LN2)
    return math.fsum(terms)
