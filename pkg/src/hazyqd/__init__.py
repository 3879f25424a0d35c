"""Exact information flow from a qubit into a hazy (mixed) qubit environment."""

from .model import (
    EnvQubit,
    ModelConfig,
    SystemQubit,
    bimodal_distribution,
    decoherence_factor,
    fragment_entropy_pi_half,
    good_decoherence_info,
    kappa,
    lambda_k,
    make_env_from_haziness,
    mutual_info_closed_form,
    system_state,
)
from .observables import (
    deficit,
    deficit_overlap_curve,
    info_curve,
    min_fragment_for_deficit,
    mutual_info,
    plateau_level,
    redundancy,
)
from .oracle import oracle_mutual_info
from .schur import fragment_entropy, fragment_spectrum, joint_spectrum, mutual_info_schur

__version__ = "0.1.0"
