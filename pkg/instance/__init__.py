from .schema import Instance, Resource, Arrival, DeterministicUsage, DiscreteUsage, UsageModel
from .validation import validate, is_valid
from .generators import gen_example1, gen_kvv_window, gen_random, gen_random_usage
from .storage import save, load, dumps, loads

__all__ = [
    "Instance",
    "Resource",
    "Arrival",
    "DeterministicUsage",
    "DiscreteUsage",
    "UsageModel",
    "validate",
    "is_valid",
    "gen_example1",
    "gen_kvv_window",
    "gen_random",
    "gen_random_usage",
    "save",
    "load",
    "dumps",
    "loads",
    ]
