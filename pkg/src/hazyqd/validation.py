"""Cross-method consistency checks run by ``hazyqd validate``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    HALF_PI,
    ModelConfig,
    SystemQubit,
    fragment_entropy_pi_half,
    good_decoherence_info,
    make_env_from_haziness,
    mutual_info_closed_form,
)
from .oracle import oracle_info_all
from .qubit_algebra import hermitian_eigenvalues
from .schur import (
    fragment_entropy,
    fragment_spectrum,
    joint_spectrum,
    mutual_info_schur,
    sector_labels,
    sector_multiplicity,
    sym_power,
)

TIMES = (0.0, math.pi / 7, math.pi / 3, HALF_PI, 1.9)
HAZINESS = (0.0, 0.25, 0.8, 1.0)


@dataclass
class CheckResult:
    name: str
    max_abs_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_abs_deviation <= self.tolerance)


def _closed_form(t, n_frag, cfg, fault):
    value = mutual_info_closed_form(t, n_frag, cfg).bits
    if not fault:
        return value
    # flip the sign of the deviation-from-good-decoherence term
    good = good_decoherence_info(t, n_frag, cfg)
    return good - (value - good)


def check_oracle(max_env: int = 8, fault: bool = False):
    sys = SystemQubit.plus()
    dev_schur = dev_closed = 0.0
    for n in range(2, max_env + 1):
        for h in HAZINESS:
            env = make_env_from_haziness(h)
            cfg = ModelConfig(n, sys, env)
            for t in TIMES:
                ref = oracle_info_all(t, cfg)
                for k in range(n + 1):
                    dev_schur = max(dev_schur, abs(mutual_info_schur(t, n, k, sys, env) - ref[k]))
                    dev_closed = max(dev_closed, abs(_closed_form(t, k, cfg, fault) - ref[k]))
    return [
        CheckResult("oracle_vs_schur", dev_schur, 1e-8),
        CheckResult("oracle_vs_closed_form", dev_closed, 1e-8),
    ]


def check_mixed_system(fault: bool = False):
    """Closed form against the oracle for a mixed initial system state."""
    sys = SystemQubit(0.3, 0.2 + 0.1j)
    dev = 0.0
    for n in range(2, 7):
        for h, r00 in ((0.1, 0.5), (0.7, 0.5), (0.5, 0.7)):
            env = make_env_from_haziness(h, r00)
            cfg = ModelConfig(n, sys, env)
            for t in (0.4, 1.1, HALF_PI):
                ref = oracle_info_all(t, cfg)
                for k in range(n + 1):
                    dev = max(dev, abs(_closed_form(t, k, cfg, fault) - ref[k]))
    return [CheckResult("closed_form_mixed_system_discrepancy", dev, 1e-8)]


def check_pi_half(fault: bool = False, fragments=(*range(1, 13), 25, 50, 100)):
    sys = SystemQubit.plus()
    dev = 0.0
    for h in (0.1, 0.5, 0.9):
        env = make_env_from_haziness(h)
        for k in fragments:
            dev = max(dev, abs(fragment_entropy_pi_half(k, sys, env) - fragment_entropy(HALF_PI, k, sys, env)))
    return [CheckResult("pi_half_closed_form_vs_schur", dev, 1e-9)]


def check_good_decoherence(fault: bool = False):
    sys = SystemQubit.plus()
    dev = 0.0
    for h in HAZINESS:
        cfg = ModelConfig(30, sys, make_env_from_haziness(h))
        for k in range(30):
            dev = max(dev, abs(_closed_form(HALF_PI, k, cfg, fault) - good_decoherence_info(HALF_PI, k, cfg)))
    return [CheckResult("good_decoherence_at_pi_half", dev, 1e-12)]


def check_invariants(fault: bool = False):
    sys = SystemQubit(0.35, 0.3 - 0.2j)
    weight_dev = 0.0
    for h, r00 in ((0.3, 0.5), (0.6, 0.8)):
        env = make_env_from_haziness(h, r00)
        for t in (0.3, 1.2):
            for k in (1, 4, 17):
                weight_dev = max(weight_dev, abs(fragment_spectrum(t, k, sys, env).total_weight() - 1))
                weight_dev = max(weight_dev, abs(joint_spectrum(t, k + 3, k, sys, env).total_weight() - 1))
    dim_dev = 0.0
    for n in range(1, 61):
        total = sum((tj + 1) * sector_multiplicity(n, tj) for tj in sector_labels(n))
        dim_dev = max(dim_dev, abs(total - 2**n))
    rng = np.random.default_rng(7)
    func_dev = 0.0
    for k in range(7):
        m1 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        m2 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        lhs = sym_power(m1 @ m2, k)
        func_dev = max(func_dev, float(np.max(np.abs(lhs - sym_power(m1, k) @ sym_power(m2, k)))))
    eig_dev = 0.0
    for d in (2, 5, 50):
        x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        h = x + x.conj().T
        a = hermitian_eigenvalues(h, "householder")
        b = hermitian_eigenvalues(h, "jacobi")
        eig_dev = max(eig_dev, float(np.max(np.abs(a - b))) / float(np.max(np.abs(h))))
    return [
        CheckResult("spectrum_unit_weight", weight_dev, 1e-9),
        CheckResult("sector_dimension_count", float(dim_dev), 0.0),
        CheckResult("sym_power_functoriality", func_dev, 1e-10),
        CheckResult("householder_vs_jacobi", eig_dev, 1e-10),
    ]


def _log_sum_exp(xs) -> float:
    top = max(xs)
    return top + math.log(math.fsum(math.exp(x - top) for x in xs))


def _log_purity(spectrum) -> float:
    keep = np.isfinite(spectrum.log_values)
    return _log_sum_exp(list(2 * spectrum.log_values[keep] + spectrum.log_mults[keep]))


def check_purity(fault: bool = False):
    """Large-fragment anchor away from t = pi/2: Tr rho^2 has a closed form.

    Tr rho_F^2 = sum_ij s_ii s_jj (Tr X_i X_j)^n over the branch operators
    X in {A, B}; for rho_SF the coherence adds 2 |s01 Lambda_rest|^2 (Tr C C^+)^n.
    """
    sys = SystemQubit(0.3, 0.2 + 0.1j)
    env = make_env_from_haziness(0.6, 0.55)
    dev = 0.0
    for t in (0.3, math.pi / 3, 1.9):
        v = np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])
        r = env.matrix()
        a, b, c = v @ r @ v.conj().T, v.conj().T @ r @ v, v @ r @ v
        lam = abs(complex(math.cos(t), (env.r11 - env.r00) * math.sin(t)))
        s = (sys.s00, sys.s11)
        xs = (a, b)
        for n in (50, 200):
            got = _log_purity(fragment_spectrum(t, n, sys, env))
            ref = _log_sum_exp(
                [math.log(s[i] * s[j]) + n * math.log(np.trace(xs[i] @ xs[j]).real) for i in range(2) for j in range(2)]
            )
            dev = max(dev, abs(got - ref))
            n_env = n + 20
            got = _log_purity(joint_spectrum(t, n_env, n, sys, env))
            ref = _log_sum_exp([
                2 * math.log(s[0]) + n * math.log(np.trace(a @ a).real),
                2 * math.log(s[1]) + n * math.log(np.trace(b @ b).real),
                math.log(2 * abs(sys.s01) ** 2) + 2 * 20 * math.log(lam) + n * math.log(np.trace(c @ c.conj().T).real),
            ])
            dev = max(dev, abs(got - ref))
    return [CheckResult("large_n_log_purity_identity", dev, 1e-9)]


CHECKS = [check_oracle, check_mixed_system, check_pi_half, check_good_decoherence, check_invariants, check_purity]


def run_validation(fault: bool = False) -> list[CheckResult]:
    results = []
    for check in CHECKS:
        results.extend(check(fault=fault))
    return results
