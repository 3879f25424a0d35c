"""Pure-dephasing model of one system qubit and a symmetric qubit environment.

The coupling is 1/2 sigma_z^S sigma_z^k for every environment qubit k, so
the system pointer basis is sigma_z and each environment qubit rotates by
V(+t) or V(-t) depending on the system branch, V(t) = exp(-i t sigma_z / 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .qubit_algebra import (
    DomainError,
    Spectrum,
    binary_entropy,
    eig_2x2_hermitian,
    invert_binary_entropy,
    log_binomial_row,
    spectrum_entropy,
)

HALF_PI = math.pi / 2
STATE_TOL = 1e-12


@dataclass(frozen=True)
class SystemQubit:
    """Initial system state [[s00, s01], [conj(s01), 1 - s00]]."""

    s00: float
    s01: complex = 0j

    def __post_init__(self):
        if not -STATE_TOL <= self.s00 <= 1 + STATE_TOL:
            raise DomainError(f"s00={self.s00!r} is not a probability")
        object.__setattr__(self, "s00", float(min(max(self.s00, 0.0), 1.0)))
        object.__setattr__(self, "s01", complex(self.s01))
        if abs(self.s01) ** 2 > self.s00 * self.s11 + STATE_TOL:
            raise DomainError("system state is not positive semidefinite")

    @classmethod
    def plus(cls) -> "SystemQubit":
        return cls(0.5, 0.5)

    @property
    def s11(self) -> float:
        return 1.0 - self.s00

    @property
    def is_pure(self) -> bool:
        return abs(abs(self.s01) ** 2 - self.s00 * self.s11) <= STATE_TOL

    def matrix(self) -> np.ndarray:
        return np.array([[self.s00, self.s01], [self.s01.conjugate(), self.s11]])


@dataclass(frozen=True)
class EnvQubit:
    """Initial state of every environment qubit, [[r00, r01], [conj(r01), r11]]."""

    r00: float
    r01: complex = 0j

    def __post_init__(self):
        if not -STATE_TOL <= self.r00 <= 1 + STATE_TOL:
            raise DomainError(f"r00={self.r00!r} is not a probability")
        object.__setattr__(self, "r00", float(min(max(self.r00, 0.0), 1.0)))
        object.__setattr__(self, "r01", complex(self.r01))
        if abs(self.r01) ** 2 > self.r00 * self.r11 + STATE_TOL:
            raise DomainError("environment qubit state is not positive semidefinite")

    @property
    def r11(self) -> float:
        return 1.0 - self.r00

    @property
    def det(self) -> float:
        return max(self.r00 * self.r11 - abs(self.r01) ** 2, 0.0)

    @property
    def lambda_plus(self) -> float:
        return eig_2x2_hermitian(self.matrix())[0]

    @property
    def lambda_minus(self) -> float:
        return self.det / self.lambda_plus

    @property
    def haziness(self) -> float:
        return binary_entropy(self.lambda_plus)

    @property
    def diagonalizer(self) -> np.ndarray:
        """Unitary W with W^dagger rho_r W = diag(lambda_plus, lambda_minus)."""
        a, b = self.r00 - self.r11, self.r01
        if abs(b) == 0.0:
            return np.eye(2, dtype=complex) if a >= 0 else np.array([[0, 1], [1, 0]], dtype=complex)
        theta = 0.5 * math.atan2(2 * abs(b), a)
        ph = b / abs(b)
        c, s = math.cos(theta), math.sin(theta)
        return np.array([[c, -s * ph], [s * ph.conjugate(), c]])

    def matrix(self) -> np.ndarray:
        return np.array([[self.r00, self.r01], [self.r01.conjugate(), self.r11]])


@dataclass(frozen=True)
class ModelConfig:
    n_env: int
    system: SystemQubit
    env: EnvQubit

    def __post_init__(self):
        if self.n_env < 1:
            raise DomainError("n_env must be >= 1")


def make_env_from_haziness(h: float, r00: float = 0.5) -> EnvQubit:
    """Environment qubit with entropy ``h`` bits, adjusting only a real r01 >= 0."""
    if not 0.0 <= h <= 1.0:
        raise DomainError(f"haziness {h!r} not in [0, 1]")
    ceiling = binary_entropy(r00)
    if h > ceiling + 1e-12:
        raise DomainError(
            f"haziness {h} unreachable with r00={r00}: a coherence can only lower the "
            f"entropy below the diagonal value {ceiling:.6f}"
        )
    lam = invert_binary_entropy(min(h, ceiling))
    # lambda_plus = 1/2 + sqrt((r00 - 1/2)^2 + |r01|^2)
    r01 = math.sqrt(max((lam - 0.5) ** 2 - (r00 - 0.5) ** 2, 0.0))
    r01 = min(r01, math.sqrt(r00 * (1 - r00)))
    return EnvQubit(r00, r01)


def lambda_k(t: float, env: EnvQubit) -> complex:
    """Single-qubit decoherence factor cos t + i (r11 - r00) sin t."""
    return complex(math.cos(t), (env.r11 - env.r00) * math.sin(t))


def decoherence_factor(t: float, count: int, env: EnvQubit) -> complex:
    if count < 0:
        raise DomainError("count must be >= 0")
    if count == 0:
        return 1 + 0j
    return lambda_k(t, env) ** count


def system_state(t: float, cfg: ModelConfig) -> np.ndarray:
    lam = decoherence_factor(t, cfg.n_env, cfg.env)
    s = cfg.system
    off = s.s01 * lam
    return np.array([[s.s00, off], [off.conjugate(), s.s11]])


def kappa(sys: SystemQubit, lam_abs: float) -> float:
    """Larger eigenvalue of the system block with coherence scaled by |Lambda|."""
    if not 0.0 <= lam_abs <= 1.0 + 1e-12:
        raise DomainError("|Lambda| must lie in [0, 1]")
    r = math.sqrt((sys.s11 - sys.s00) ** 2 + 4 * abs(sys.s01) ** 2 * lam_abs**2)
    return min(0.5 * (1.0 + r), 1.0)


class InfoValue(NamedTuple):
    bits: float
    verified_domain: bool


def _is_degenerate(sys: SystemQubit) -> bool:
    return sys.s00 in (0.0, 1.0)


def clean_info(value: float) -> float:
    """Clamp round-off negatives of a mutual information to zero."""
    return 0.0 if -1e-9 < value < 0.0 else value


def eq7_applies(t: float, env: EnvQubit) -> bool:
    return t == HALF_PI and env.r00 == 0.5


def _fragment_entropy_any(t: float, n_frag: int, cfg: ModelConfig) -> float:
    if n_frag == 0:
        return 0.0
    if eq7_applies(t, cfg.env):
        return fragment_entropy_pi_half(n_frag, cfg.system, cfg.env)
    from .schur import fragment_entropy

    return fragment_entropy(t, n_frag, cfg.system, cfg.env)


def mutual_info_closed_form(t: float, n_frag: int, cfg: ModelConfig) -> InfoValue:
    """I(S:F) = [H_F(t) - #F h] + [H(kappa_E) - H(kappa_{E/F})].

    ``verified_domain`` is True only for a pure initial system state or t=0.
    """
    if not 0 <= n_frag <= cfg.n_env:
        raise DomainError(f"n_frag={n_frag} outside [0, {cfg.n_env}]")
    verified = cfg.system.is_pure or t == 0.0
    if n_frag == 0 or _is_degenerate(cfg.system):
        return InfoValue(0.0, verified)
    h_f = _fragment_entropy_any(t, n_frag, cfg)
    h_f0 = n_frag * cfg.env.haziness
    lam_e = abs(decoherence_factor(t, cfg.n_env, cfg.env))
    lam_ef = abs(decoherence_factor(t, cfg.n_env - n_frag, cfg.env))
    deviation = binary_entropy(kappa(cfg.system, lam_e)) - binary_entropy(kappa(cfg.system, lam_ef))
    return InfoValue(clean_info((h_f - h_f0) + deviation), verified)


def good_decoherence_info(t: float, n_frag: int, cfg: ModelConfig) -> float:
    """Entropy increase of the fragment, H_F(t) - #F h."""
    if not 0 <= n_frag <= cfg.n_env:
        raise DomainError(f"n_frag={n_frag} outside [0, {cfg.n_env}]")
    if n_frag == 0 or _is_degenerate(cfg.system):
        return 0.0
    return clean_info(_fragment_entropy_any(t, n_frag, cfg) - n_frag * cfg.env.haziness)


def _logs(sys: SystemQubit, env: EnvQubit):
    with np.errstate(divide="ignore"):
        return (
            math.log(env.lambda_plus),
            float(np.log(env.lambda_minus)),
            float(np.log(sys.s00)),
            float(np.log(sys.s11)),
        )


def _minus_powers(n: np.ndarray, n_frag: int, log_minus: float):
    """n ln(lambda_-) and (#F - n) ln(lambda_-), with 0 * ln 0 = 0."""
    if math.isinf(log_minus):
        return np.where(n == 0, 0.0, -np.inf), np.where(n == n_frag, 0.0, -np.inf)
    return n * log_minus, (n_frag - n) * log_minus


def _log_eigs_pi_half(n_frag: int, sys: SystemQubit, env: EnvQubit) -> np.ndarray:
    """ln lambda_F(n), n = 0..n_frag, of the fragment state at t = pi/2."""
    n = np.arange(n_frag + 1)
    lp, lm, ls0, ls1 = _logs(sys, env)
    minus_n, minus_rest = _minus_powers(n, n_frag, lm)
    left = ls0 + minus_n + (n_frag - n) * lp
    right = ls1 + minus_rest + n * lp
    return np.logaddexp(left, right)


def fragment_entropy_pi_half(n_frag: int, sys: SystemQubit, env: EnvQubit) -> float:
    """Exact fragment entropy at t = pi/2 for r00 = 1/2, in bits."""
    if env.r00 != 0.5:
        raise DomainError(
            "the t=pi/2 closed form needs r00 == 1/2; use schur.fragment_entropy instead"
        )
    if n_frag < 0:
        raise DomainError("n_frag must be >= 0")
    if n_frag == 0:
        return 0.0
    spectrum = Spectrum(_log_eigs_pi_half(n_frag, sys, env), np.array(log_binomial_row(n_frag)))
    return spectrum_entropy(spectrum)


def bimodal_distribution(n_frag: int, sys: SystemQubit, env: EnvQubit):
    """Record-count distributions (P_L, P_R) at t = pi/2 and their overlap."""
    if n_frag < 1:
        raise DomainError("n_frag must be >= 1")
    n = np.arange(n_frag + 1)
    lb = log_binomial_row(n_frag)
    lp, lm, ls0, ls1 = _logs(sys, env)
    minus_n, minus_rest = _minus_powers(n, n_frag, lm)
    p_left = np.exp(ls0 + lb + minus_n + (n_frag - n) * lp)
    p_right = np.exp(ls1 + lb + minus_rest + n * lp)
    overlap = math.fsum(p_left * p_right)
    return p_left, p_right, overlap


__all__ = [
    "HALF_PI",
    "SystemQubit",
    "EnvQubit",
    "ModelConfig",
    "InfoValue",
    "make_env_from_haziness",
    "lambda_k",
    "decoherence_factor",
    "system_state",
    "kappa",
    "mutual_info_closed_form",
    "good_decoherence_info",
    "fragment_entropy_pi_half",
    "bimodal_distribution",
    "eq7_applies",
    "clean_info",
]
