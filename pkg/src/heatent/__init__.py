"""Heat capacity and entanglement of a two-qubit XX model.

Modules
-------
model        spectrum, partition function, energy, heat capacity, thermal state
entanglement closed-form and Wootters concurrence
inversion    coupling as a function of pre-concurrence; heat capacity versus nu
protocol     coupling recovery from heat capacities at several temperatures
bounds       separable-state energy and heat-capacity bounds
cli          ``heatent`` command line
"""
from .bounds import check_separable_inequality, energy_bound, heat_capacity_bound
from .entanglement import (
    concurrence_closed_form,
    concurrence_wootters,
    critical_coupling,
    pre_concurrence_complement,
)
from .inversion import DomainError, cv_of_nu, lambda_from_nu, lambda_from_nu_complement, nu_domain
from .model import (
    DensityMatrix4,
    ModelParams,
    ThermalContext,
    gap_info,
    heat_capacity,
    internal_energy,
    log_partition_function,
    partition_function,
    spectrum,
    thermal_state,
)
from .protocol import (
    Measurement,
    ScanConfig,
    Status,
    find_candidate_lambdas,
    intersect_candidates,
    recover,
    simulate_and_recover,
)

__version__ = "0.1.0"
