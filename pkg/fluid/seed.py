import math
from typing import Iterable, Mapping, Optional, Tuple, Union
from instance.schema import Instance, DeterministicUsage, DiscreteUsage
from fluid.availability import AvailabilityProfile, eta_dp


def aggregate_seed(
    usage: Union[DeterministicUsage, DiscreteUsage],
    now: int,
    terms: Iterable[Tuple[int, float, float]],
) -> float:
    """sum over (time, eta, z) of P(D > now - time) * eta * z."""
    return math.fsum(usage.survival(now - time) * eta * z for time, eta, z in terms if time <= now)


def resource_profile(instance: Instance, resource: int) -> AvailabilityProfile:
    """eta over A_i, the arrivals adjacent to the resource."""
    adjacent = instance.adjacency()[resource]
    times = [instance.arrivals[k].time for k in adjacent]
    return eta_dp(instance.usage_of(resource), times)


def fluid_seed(
    instance: Instance,
    resource: int,
    arrival: int,
    z: Mapping[int, float],
    profile: Optional[AvailabilityProfile] = None,
) -> float:
    """Seed of the resource at the arrival under fluid reranking.

    z maps adjacent arrival index -> its fresh uniform. Only arrivals in
    A_i up to and including the given arrival contribute.
    """
    adjacent = instance.adjacency()[resource]
    profile = profile or resource_profile(instance, resource)
    now = instance.arrivals[arrival].time
    terms = []
    for k, tau in enumerate(adjacent):
        if tau > arrival:
            break
        if tau not in z:
            raise ValueError(f"missing z value for arrival {tau} of resource {resource}")
        terms.append((instance.arrivals[tau].time, profile.eta[k], z[tau]))
    return aggregate_seed(instance.usage_of(resource), now, terms)
