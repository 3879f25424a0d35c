"""Exact fragment and system+fragment spectra via permutation symmetry.

Every operator we need on the fragment is a sum of n-fold tensor powers
of 2x2 matrices. Under Schur-Weyl duality M^{(x)n} acts on the spin-j
sector as det(M)^nu Sym^{2j}(M), nu = (n - 2j)/2, repeated m(n, j) times.
All tensor powers here share det = det(rho_r), so one sector basis
block-diagonalizes them simultaneously and the cost is polynomial in n.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .model import (
    DomainError,
    EnvQubit,
    ModelConfig,
    SystemQubit,
    clean_info,
    decoherence_factor,
    system_state,
)
from .qubit_algebra import (
    Spectrum,
    binary_entropy,
    eig_2x2_hermitian,
    hermitian_eigenvalues,
    log_binomial,
    spectrum_entropy,
)

SOFT_CAP = 200
# Float binomials overflow a double beyond this degree.
HARD_CAP = 1000


@lru_cache(maxsize=4)
def _pascal_table(size: int) -> np.ndarray:
    table = np.zeros((size + 1, size + 1))
    table[:, 0] = 1.0
    for n in range(1, size + 1):
        table[n, 1 : n + 1] = table[n - 1, : n] + table[n - 1, 1 : n + 1]
    table.setflags(write=False)
    return table


def _pascal(k: int) -> np.ndarray:
    """Binomial coefficients C(n, i), n, i <= k, as floats."""
    size = SOFT_CAP if k <= SOFT_CAP else HARD_CAP
    return _pascal_table(size)


def _powers(x: complex, k: int) -> np.ndarray:
    out = np.empty(k + 1, dtype=complex)
    out[0] = 1.0
    out[1:] = x
    return np.cumprod(out)


def sym_power(m, k: int) -> np.ndarray:
    """Matrix of M^{(x)k} restricted to the symmetric subspace, Dicke basis.

    Column a holds the coefficients of (m00 x + m10 y)^(k-a) (m01 x + m11 y)^a,
    rescaled to the orthonormal Dicke basis. Each entry is a sum of products
    weighted by binomials, so entries of mixed sign or phase cancel badly
    once k reaches a few dozen. For nonnegative M every term is positive
    and the result keeps full relative accuracy; the sector builders below
    only ever pass nonnegative matrices and carry phases separately.
    """
    m = np.asarray(m, dtype=complex)
    if k < 0:
        raise DomainError("degree must be >= 0")
    if k > HARD_CAP:
        raise DomainError(f"degree {k} exceeds {HARD_CAP}")
    pas = _pascal(k)
    p00, p10 = _powers(m[0, 0], k), _powers(m[1, 0], k)
    p01, p11 = _powers(m[0, 1], k), _powers(m[1, 1], k)
    out = np.empty((k + 1, k + 1), dtype=complex)
    for a in range(k + 1):
        s = np.arange(k - a + 1)
        r = np.arange(a + 1)
        left = pas[k - a, : k - a + 1] * p00[k - a - s] * p10[s]
        right = pas[a, : a + 1] * p01[a - r] * p11[r]
        out[:, a] = np.convolve(left, right)
    row = pas[k, : k + 1]
    out *= np.sqrt(row[None, :] / row[:, None])
    return out


def _check_label(n: int, two_j: int):
    if n < 0 or two_j < 0 or two_j > n or (n - two_j) % 2:
        raise DomainError(f"no spin sector 2j={two_j} for n={n}")


def sector_multiplicity(n: int, two_j: int) -> int:
    _check_label(n, two_j)
    nu = (n - two_j) // 2
    return math.comb(n, nu) - (math.comb(n, nu - 1) if nu else 0)


def sector_multiplicity_log(n: int, two_j: int) -> float:
    """ln[C(n, nu) - C(n, nu - 1)], nu = (n - 2j)/2."""
    _check_label(n, two_j)
    nu = (n - two_j) // 2
    # C(n, nu-1)/C(n, nu) = nu / (n - nu + 1)
    return log_binomial(n, nu) + math.log((n - 2 * nu + 1) / (n - nu + 1))


def sector_labels(n: int):
    """2j = n, n-2, ..., 1 or 0."""
    return range(n, -1, -2)


@dataclass(frozen=True)
class SectorBlock:
    two_j: int
    matrix: np.ndarray
    log_prefactor: float
    log_multiplicity: float

    def spectrum(self, eigensolver: str = "householder") -> Spectrum:
        vals = hermitian_eigenvalues(self.matrix, method=eigensolver)
        return Spectrum.from_values(vals, self.log_prefactor, self.log_multiplicity)


def _diag_sym_phase(theta0: float, theta1: float, k: int) -> np.ndarray:
    """Sym^k of diag(e^{i theta0}, e^{i theta1}), as its diagonal (exact)."""
    i = np.arange(k + 1)
    return np.exp(1j * ((k - i) * theta0 + i * theta1))


def _branch_phases(t: float, env: EnvQubit):
    """Phases turning the nonnegative rho' into the three branch operators.

    With rho = P rho' P^+, P = diag(e^{i phi/2}, e^{-i phi/2}), phi = arg r01,
    and V = diag(e^{-it/2}, e^{it/2}):
      A = V rho V^+ = D_a rho' D_a^+,   D_a = V P
      B = V^+ rho V = D_b rho' D_b^+,   D_b = V^+ P
      C = V rho V   = D_a rho' D_c,     D_c = P^+ V
    Each D is returned as its two phase angles.
    """
    phi = float(np.angle(env.r01)) if env.r01 != 0 else 0.0
    d_a = (-0.5 * t + 0.5 * phi, 0.5 * t - 0.5 * phi)
    d_b = (0.5 * t + 0.5 * phi, -0.5 * t - 0.5 * phi)
    d_c = (-0.5 * t - 0.5 * phi, 0.5 * t + 0.5 * phi)
    return d_a, d_b, d_c


def _scaled_core(env: EnvQubit) -> np.ndarray:
    """rho' / lambda_+, a nonnegative real matrix."""
    lam = env.lambda_plus
    return np.array([[env.r00, abs(env.r01)], [abs(env.r01), env.r11]]) / lam


def _check_size(n_frag: int, allow_large: bool):
    if n_frag > SOFT_CAP:
        if not allow_large:
            raise DomainError(f"n_frag={n_frag} above {SOFT_CAP}; pass allow_large=True")
        warnings.warn(f"n_frag={n_frag} above {SOFT_CAP}: expect long run times", RuntimeWarning)


def _sector_prefactors(n_frag: int, env: EnvQubit):
    """(two_j, nu, ln of det^nu lambda_+^{2j}) per sector; -inf when det = 0."""
    log_lam = math.log(env.lambda_plus)
    log_det = math.log(env.det) if env.det > 0 else -math.inf
    for two_j in sector_labels(n_frag):
        nu = (n_frag - two_j) // 2
        yield two_j, nu, (nu * log_det if nu else 0.0) + two_j * log_lam


def fragment_blocks(t: float, n_frag: int, sys: SystemQubit, env: EnvQubit):
    """Sector blocks of rho_F(t) = s00 A^{(x)n} + s11 B^{(x)n}.

    Operators are scaled by 1/lambda_+ so sector entries stay O(1); the
    scale returns through ``log_prefactor``. Sectors killed by det = 0
    come back as zero blocks so multiplicities still add up to 2^n.
    """
    core = _scaled_core(env)
    d_a, d_b, _ = _branch_phases(t, env)
    for two_j, nu, log_pre in _sector_prefactors(n_frag, env):
        d = two_j + 1
        if math.isinf(log_pre):
            mat = np.zeros((d, d))
        else:
            s = sym_power(core, two_j)
            pa, pb = _diag_sym_phase(*d_a, two_j), _diag_sym_phase(*d_b, two_j)
            mat = (sys.s00 * pa[:, None] * pa.conj()[None, :] + sys.s11 * pb[:, None] * pb.conj()[None, :]) * s
        yield SectorBlock(two_j, mat, log_pre if not math.isinf(log_pre) else 0.0, sector_multiplicity_log(n_frag, two_j))


def joint_blocks(t: float, n_env: int, n_frag: int, sys: SystemQubit, env: EnvQubit):
    """Sector blocks (dimension 2(2j+1)) of rho_SF(t), coherences included."""
    core = _scaled_core(env)
    d_a, d_b, d_c = _branch_phases(t, env)
    coh = sys.s01 * decoherence_factor(t, n_env - n_frag, env)
    for two_j, nu, log_pre in _sector_prefactors(n_frag, env):
        d = two_j + 1
        mat = np.zeros((2 * d, 2 * d), dtype=complex)
        if not math.isinf(log_pre):
            s = sym_power(core, two_j)
            pa, pb = _diag_sym_phase(*d_a, two_j), _diag_sym_phase(*d_b, two_j)
            pc = _diag_sym_phase(*d_c, two_j)
            mat[:d, :d] = sys.s00 * pa[:, None] * s * pa.conj()[None, :]
            mat[d:, d:] = sys.s11 * pb[:, None] * s * pb.conj()[None, :]
            upper = coh * pa[:, None] * s * pc[None, :]
            mat[:d, d:] = upper
            mat[d:, :d] = upper.conj().T
        yield SectorBlock(two_j, mat, log_pre if not math.isinf(log_pre) else 0.0, sector_multiplicity_log(n_frag, two_j))


@lru_cache(maxsize=1024)
def fragment_spectrum(
    t: float,
    n_frag: int,
    sys: SystemQubit,
    env: EnvQubit,
    eigensolver: str = "householder",
    allow_large: bool = False,
) -> Spectrum:
    if n_frag < 0:
        raise DomainError("n_frag must be >= 0")
    _check_size(n_frag, allow_large)
    if n_frag == 0:
        return Spectrum(np.zeros(1), np.zeros(1))
    return Spectrum.concat(
        blk.spectrum(eigensolver) for blk in fragment_blocks(t, n_frag, sys, env)
    )


def fragment_entropy(t: float, n_frag: int, sys: SystemQubit, env: EnvQubit, **kw) -> float:
    return spectrum_entropy(fragment_spectrum(t, n_frag, sys, env, **kw))


@lru_cache(maxsize=1024)
def joint_spectrum(
    t: float,
    n_env: int,
    n_frag: int,
    sys: SystemQubit,
    env: EnvQubit,
    eigensolver: str = "householder",
    allow_large: bool = False,
) -> Spectrum:
    if not 0 <= n_frag <= n_env:
        raise DomainError(f"n_frag={n_frag} outside [0, {n_env}]")
    _check_size(n_frag, allow_large)
    return Spectrum.concat(
        blk.spectrum(eigensolver) for blk in joint_blocks(t, n_env, n_frag, sys, env)
    )


def mutual_info_schur(
    t: float, n_env: int, n_frag: int, sys: SystemQubit, env: EnvQubit, **kw
) -> float:
    """H_S + H_F - H_SF from exact sector spectra."""
    if not 0 <= n_frag <= n_env:
        raise DomainError(f"n_frag={n_frag} outside [0, {n_env}]")
    if n_frag == 0:
        return 0.0
    rho_s = system_state(t, ModelConfig(n_env, sys, env))
    h_s = binary_entropy(min(eig_2x2_hermitian(rho_s)[0], 1.0))
    h_f = fragment_entropy(t, n_frag, sys, env, **kw)
    h_sf = spectrum_entropy(joint_spectrum(t, n_env, n_frag, sys, env, **kw))
    return clean_info(h_s + h_f - h_sf)
