from .trace import ArrivalRecord, MatchingTrace
from .simulator import (
    AvailabilityState,
    simulate,
    window_end,
    window_end_from_times,
    period_index,
    period_prefix,
)

__all__ = [
    "ArrivalRecord",
    "MatchingTrace",
    "AvailabilityState",
    "simulate",
    "window_end",
    "window_end_from_times",
    "period_index",
    "period_prefix",
    ]
