"""Parameters governing causation and instance generation."""

from __future__ import annotations

from dataclasses import dataclass, asdict


def default_instance_length(max_cause_events: int, max_intervening_events: int) -> int:
    """Sequence length that fits a maximal-gap embedding plus room for noise.

    The widest possible embedding spans ``max_cause_events`` cause events with
    ``max_intervening_events`` fillers between each consecutive pair; two more
    slots of leading/trailing noise are added, with a floor of 5.
    """
    span = max_cause_events + (max_cause_events - 1) * max_intervening_events
    return max(5, span + 2)


@dataclass(frozen=True)
class Params:
    """Generation parameters.

    Parameters
    ----------
    num_event_types : int
        Size of the event alphabet; events are integers in [0, num_event_types).
    num_causations : int
        Number of distinct causations to generate.
    max_cause_events : int
        Upper bound on the size of a causation's cause multiset.
    max_intervening_events : int
        Maximum number of non-causal events allowed between two consecutive
        cause events of an embedding.
    instance_length : int, optional
        Events per instance. Defaults to ``default_instance_length``.
    """

    num_event_types: int
    num_causations: int
    max_cause_events: int
    max_intervening_events: int
    instance_length: int | None = None

    def __post_init__(self):
        if self.instance_length is None:
            object.__setattr__(
                self,
                "instance_length",
                default_instance_length(self.max_cause_events, self.max_intervening_events),
            )
        if self.num_event_types < 1:
            raise ValueError("num_event_types must be >= 1")
        if self.num_causations < 1:
            raise ValueError("num_causations must be >= 1")
        if self.max_cause_events < 1:
            raise ValueError("max_cause_events must be >= 1")
        if self.max_intervening_events < 0:
            raise ValueError("max_intervening_events must be >= 0")
        if self.instance_length < self.max_cause_events:
            raise ValueError(
                "instance_length must be >= max_cause_events, "
                f"got {self.instance_length} < {self.max_cause_events}"
            )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Params":
        return cls(
            num_event_types=int(d["num_event_types"]),
            num_causations=int(d["num_causations"]),
            max_cause_events=int(d["max_cause_events"]),
            max_intervening_events=int(d["max_intervening_events"]),
            instance_length=int(d["instance_length"]),
        )
