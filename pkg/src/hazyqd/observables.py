"""Information curves, deficits and redundancy."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .model import (
    DomainError,
    ModelConfig,
    SystemQubit,
    bimodal_distribution,
    eq7_applies,
    mutual_info_closed_form,
)
from .oracle import MAX_DENSE_ENV, oracle_info_all
from .qubit_algebra import binary_entropy
from .schur import mutual_info_schur

METHODS = ("auto", "schur", "closed_form", "oracle")
ORACLE_AUTO_LIMIT = 8
THRESHOLD_SLACK = 1e-12


def normalize_method(method: str) -> str:
    m = method.replace("-", "_")
    if m not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    return m


def resolve_method(method: str, t: float, cfg: ModelConfig) -> str:
    method = normalize_method(method)
    if method == "oracle" and cfg.n_env > MAX_DENSE_ENV:
        raise DomainError(f"oracle method needs n_env <= {MAX_DENSE_ENV}, got {cfg.n_env}")
    if method != "auto":
        return method
    if cfg.n_env <= ORACLE_AUTO_LIMIT:
        return "oracle"
    if eq7_applies(t, cfg.env):
        return "closed_form"
    return "schur"


def mutual_info(t: float, n_frag: int, cfg: ModelConfig, method: str = "auto") -> float:
    """I(S:F) in bits for one fragment size, by the chosen method."""
    m = resolve_method(method, t, cfg)
    if m == "oracle":
        return oracle_info_all(t, cfg, {n_frag: tuple(range(1, n_frag + 1))})[n_frag]
    if m == "closed_form":
        return float(mutual_info_closed_form(t, n_frag, cfg).bits)
    return mutual_info_schur(t, cfg.n_env, n_frag, cfg.system, cfg.env)


@dataclass
class InfoCurve:
    t: float
    points: list = field(default_factory=list)  # (n_frag, I_bits, method)

    @property
    def values(self) -> list:
        return [p[1] for p in self.points]


def info_curve(t: float, cfg: ModelConfig, method: str = "auto") -> InfoCurve:
    m = resolve_method(method, t, cfg)
    if m == "oracle":
        vals = oracle_info_all(t, cfg)
        points = [(k, vals[k], m) for k in range(cfg.n_env + 1)]
    else:
        points = [(k, mutual_info(t, k, cfg, m), m) for k in range(cfg.n_env + 1)]
    return InfoCurve(t, points)


def plateau_level(sys: SystemQubit) -> float:
    return binary_entropy(sys.s00)


def deficit(info: float, sys: SystemQubit) -> float:
    """1 - I/H_S against the plateau level H(s00), clamped to [0, 1]."""
    h_s = plateau_level(sys)
    if h_s == 0.0:
        raise DomainError("deficit undefined: the decohered system has zero entropy")
    return min(max(1.0 - info / h_s, 0.0), 1.0)


def min_fragment_for_deficit(
    delta: float, t: float, cfg: ModelConfig, method: str = "auto"
) -> Optional[int]:
    """Smallest #F < #E with I(S:F) >= (1 - delta) H_S, or None.

    The whole environment is not a candidate: at #F = #E the information
    jumps by the quantum-correlation term (to 2 H_S for a pure environment,
    and to H_S even for a totally mixed one), which is not a redundant
    record. Binary search over the monotone curve, then a local linear
    check around the candidate.
    """
    if not 0.0 < delta < 1.0:
        raise DomainError("delta must lie in (0, 1)")
    target = (1.0 - delta) * plateau_level(cfg.system) - THRESHOLD_SLACK
    cache = {}

    def ok(k: int) -> bool:
        if k not in cache:
            cache[k] = mutual_info(t, k, cfg, method) >= target
        return cache[k]

    top = cfg.n_env - 1
    if top < 1 or plateau_level(cfg.system) == 0.0 or not ok(top):
        return None
    lo, hi = 1, top
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    k = lo
    while k > 1 and ok(k - 1):
        k -= 1
    while not ok(k):
        k += 1
    return k


@dataclass(frozen=True)
class RedundancyResult:
    h: float
    delta: float
    t: float
    n_frag_delta: Optional[int]
    redundancy: Optional[Fraction]


def redundancy(delta: float, t: float, cfg: ModelConfig, method: str = "auto") -> RedundancyResult:
    k = min_fragment_for_deficit(delta, t, cfg, method)
    r = Fraction(cfg.n_env, k) if k is not None else None
    return RedundancyResult(float(cfg.env.haziness), delta, t, k, r)


def deficit_overlap_curve(n_frag: int, t: float, sys: SystemQubit, env_list, n_env: Optional[int] = None):
    """(overlap, deficit) per environment state, sorted by overlap.

    Overlaps describe the record distribution at t = pi/2, r00 = 1/2; the
    deficit is evaluated at ``t``. ``n_env`` defaults to n_frag + 1 so the
    fragment never covers the whole environment.
    """
    n_env = n_frag + 1 if n_env is None else n_env
    out = []
    for env in env_list:
        _, _, overlap = bimodal_distribution(n_frag, sys, env)
        info = mutual_info(t, n_frag, ModelConfig(n_env, sys, env), "closed_form")
        out.append((overlap, deficit(info, sys)))
    return sorted(out)


__all__ = [
    "InfoCurve",
    "RedundancyResult",
    "info_curve",
    "mutual_info",
    "plateau_level",
    "deficit",
    "min_fragment_for_deficit",
    "redundancy",
    "deficit_overlap_curve",
    "resolve_method",
]
