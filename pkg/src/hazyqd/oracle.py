"""Brute-force reference: the full system+environment density matrix.

Deliberately naive. Builds rho_S(0) (x) rho_r^{(x)n}, applies the
dephasing evolution entrywise (the Hamiltonian is diagonal in the joint
sigma_z basis) and takes entropies of explicit partial traces.
Qubit 0 is the system, qubits 1..n_env the environment.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Iterable

import numpy as np

from .model import DomainError, EnvQubit, ModelConfig, SystemQubit

MAX_DENSE_ENV = 12


def _energies(n_env: int) -> np.ndarray:
    """Diagonal of 1/2 sum_k sigma_z^S sigma_z^k over the computational basis."""
    z = np.array([1.0, -1.0])
    env_sum = reduce(np.add.outer, [z] * n_env).ravel() if n_env else np.zeros(1)
    return 0.5 * np.outer(z, env_sum).ravel()


def dense_joint_state(t: float, cfg: ModelConfig, allow_large: bool = False) -> np.ndarray:
    n = cfg.n_env
    if n > MAX_DENSE_ENV and not allow_large:
        raise DomainError(f"n_env={n} exceeds the dense limit {MAX_DENSE_ENV}")
    rho = reduce(np.kron, [cfg.env.matrix()] * n, cfg.system.matrix())
    e = _energies(n)
    # exp(-iHt) rho exp(iHt) for diagonal H
    return rho * np.exp(-1j * t * np.subtract.outer(e, e))


def partial_trace(state: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix on the qubits listed in ``keep`` (in order)."""
    keep = sorted(set(keep))
    n = int(round(math.log2(state.shape[0])))
    if not keep:
        raise DomainError("partial_trace needs at least one qubit to keep")
    if keep[0] < 0 or keep[-1] >= n:
        raise DomainError(f"qubit index out of range for {n} qubits")
    drop = [q for q in range(n) if q not in keep]
    t = state.reshape([2] * (2 * n))
    row = list(range(n))
    col = [q + n if q in keep else q for q in range(n)]
    out = [q for q in keep] + [q + n for q in keep]
    reduced = np.einsum(t, row + col, out) if drop else t
    d = 2 ** len(keep)
    return reduced.reshape(d, d)


def dense_entropy(rho: np.ndarray) -> float:
    vals = np.linalg.eigvalsh(rho)
    vals = vals[vals > 1e-15]
    return float(-np.sum(vals * np.log2(vals)))


def oracle_info_all(t: float, cfg: ModelConfig, fragment_sets=None) -> dict:
    """I(S:F) for several fragments from one dense state.

    ``fragment_sets`` maps a key to a tuple of environment qubit indices
    (1-based); by default F = {1..k} for k = 0..n_env.
    """
    state = dense_joint_state(t, cfg)
    if fragment_sets is None:
        fragment_sets = {k: tuple(range(1, k + 1)) for k in range(cfg.n_env + 1)}
    h_s = dense_entropy(partial_trace(state, [0]))
    out = {}
    for key, frag in fragment_sets.items():
        if not frag:
            out[key] = 0.0
            continue
        h_f = dense_entropy(partial_trace(state, frag))
        h_sf = dense_entropy(partial_trace(state, (0, *frag)))
        out[key] = h_s + h_f - h_sf
    return out


def oracle_mutual_info(t: float, n_env: int, n_frag: int, sys: SystemQubit, env: EnvQubit) -> float:
    if not 0 <= n_frag <= n_env:
        raise DomainError(f"n_frag={n_frag} outside [0, {n_env}]")
    cfg = ModelConfig(n_env, sys, env)
    return oracle_info_all(t, cfg, {n_frag: tuple(range(1, n_frag + 1))})[n_frag]
