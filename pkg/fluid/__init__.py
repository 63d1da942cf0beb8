from .availability import AvailabilityProfile, AvailabilityProcess, eta_dp, eta_mc
from .seed import aggregate_seed, fluid_seed, resource_profile

__all__ = [
    "AvailabilityProfile",
    "AvailabilityProcess",
    "eta_dp",
    "eta_mc",
    "aggregate_seed",
    "fluid_seed",
    "resource_profile",
    ]
