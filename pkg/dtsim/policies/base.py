from abc import ABC, abstractmethod
from typing import Dict, Generic, Type, TypeVar

import numpy as np

SpecType = TypeVar("SpecType")


class SchedulingPolicy(ABC, Generic[SpecType]):
    """A policy maps observed backlogs and current rates to requested link flows.

    `sender` is the observed transmitter backlog including this slot's arrivals
    (Q + A), shape (transmitters, classes). `receiver` is the observed receiver
    backlog, shape (receivers, classes). `c` is the rate matrix, shape
    (transmitters, receivers). The result has shape (transmitters, receivers,
    classes). Policies are pure.
    """

    kind: str = ""

    def __init__(self, spec: SpecType):
        self.spec = spec

    @abstractmethod
    def decide(self, sender: np.ndarray, receiver: np.ndarray, c: np.ndarray) -> np.ndarray:
        ...

    def __call__(self, sender: np.ndarray, receiver: np.ndarray, c: np.ndarray) -> np.ndarray:
        return self.decide(sender, receiver, c)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec!r})"


_REGISTRY: Dict[str, Type[SchedulingPolicy]] = {}


def register(cls: Type[SchedulingPolicy]) -> Type[SchedulingPolicy]:
    _REGISTRY[cls.kind] = cls
    return cls


def get_policy(spec) -> SchedulingPolicy:
    try:
        cls = _REGISTRY[spec.kind]
    except KeyError:
        raise ValueError(f"unknown policy kind {spec.kind!r}")
    return cls(spec)


def empty_flows(n_tx: int, n_rx: int, n_classes: int) -> np.ndarray:
    return np.zeros((n_tx, n_rx, n_classes), dtype=np.int64)


def fill_classes(backlog: np.ndarray, budget: int) -> np.ndarray:
    """Spread `budget` over classes in ascending order, bounded by each class backlog."""
    out = np.zeros(backlog.shape[0], dtype=np.int64)
    remaining = int(budget)
    for k in range(backlog.shape[0]):
        if remaining <= 0:
            break
        take = min(int(backlog[k]), remaining)
        out[k] = take
        remaining -= take
    return out
