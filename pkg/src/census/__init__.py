"""Brute-force oracles and Monte Carlo censuses.

Modules:
    oracles: Angle sweep and complex E-eigen-line count for n = 2
    experiments: Seeded censuses with pandas aggregation
"""

from .experiments import CensusReport, CensusSettings, run_census, trial_seed
from .oracles import ECount, SweepResult, e_count_n2, e_form_n2, sweep_z_n2

__all__ = [
    "CensusReport",
    "CensusSettings",
    "run_census",
    "trial_seed",
    "ECount",
    "SweepResult",
    "e_count_n2",
    "e_form_n2",
    "sweep_z_n2",
]
