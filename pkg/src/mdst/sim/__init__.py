from .engine import (
    DEFAULT_BUDGET,
    DelayModel,
    Envelope,
    Metrics,
    ReplayDivergence,
    RunResult,
    SimulationError,
    account_bits,
    replay,
    run,
    snapshot,
    trace_to_jsonl,
)

__all__ = [
    "DEFAULT_BUDGET", "DelayModel", "Envelope", "Metrics", "ReplayDivergence", "RunResult",
    "SimulationError", "account_bits", "replay", "run", "snapshot", "trace_to_jsonl",
]
