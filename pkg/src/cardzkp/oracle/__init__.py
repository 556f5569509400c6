"""Ground truth: predicates, brute-force solvers, the simulator and statistics."""

from .brute import brute_force_dpp, brute_force_numberlink
from .exact import (
    exact_rearrange_distribution,
    exact_reveal_distribution,
    uniform_permutation_pairs,
    uniform_reveal_distribution,
)
from .observe import CheckObservation, hygiene_violations, observations
from .predicates import local_accept_dkdpp, local_accept_numberlink, local_accept_ukdpp
from .simulator import public_layout, simulate_phase, simulate_transcript
from .stats import Comparison, DistributionSample, compare_distributions
from .zk import ObservableReport, compare_observations, real_phase_observations, simulated_phase_observations

__all__ = [
    "CheckObservation",
    "ObservableReport",
    "Comparison",
    "DistributionSample",
    "brute_force_dpp",
    "brute_force_numberlink",
    "compare_distributions",
    "compare_observations",
    "exact_rearrange_distribution",
    "exact_reveal_distribution",
    "hygiene_violations",
    "local_accept_dkdpp",
    "local_accept_numberlink",
    "local_accept_ukdpp",
    "observations",
    "public_layout",
    "real_phase_observations",
    "simulate_phase",
    "simulate_transcript",
    "simulated_phase_observations",
    "uniform_permutation_pairs",
    "uniform_reveal_distribution",
]
