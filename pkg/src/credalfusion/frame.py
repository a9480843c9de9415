"""Finite frames, events as bitmasks, and interval tables over events."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, FrameTooLarge, InvalidInput

MAX_FRAME = 16


@dataclass(frozen=True)
class Frame:
    """An ordered set of distinct outcome labels.

    Events over a frame are plain ``int`` bitmasks: bit ``i`` set means
    the ``i``-th label belongs to the event.
    """

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(u) for u in self.labels)
        if not labels:
            raise InvalidInput("a frame needs at least one outcome")
        if len(set(labels)) != len(labels):
            raise InvalidInput(f"frame labels are not distinct: {labels}")
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def universe(self) -> int:
        return (1 << self.size) - 1

    def __len__(self):
        return self.size

    def index(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InvalidInput(f"unknown outcome {label!r}") from None

    def event(self, labels: Iterable) -> int:
        mask = 0
        for u in labels:
            mask |= 1 << self.index(u)
        return mask

    def event_labels(self, mask: int) -> tuple[str, ...]:
        return tuple(u for i, u in enumerate(self.labels) if mask >> i & 1)

    def complement(self, mask: int) -> int:
        return self.universe & ~mask

    def all_events(self) -> list[int]:
        """Every event, ordered by size and then lexicographically by index."""
        check_frame_size(self.size)
        return sorted(range(1 << self.size), key=_event_order_key)

    def product(self, other: Frame) -> Frame:
        """Row-major product frame with labels ``"u,v"``."""
        return Frame(tuple(f"{u},{v}" for u in self.labels for v in other.labels))

    def check_vector(self, values, what="vector") -> np.ndarray:
        v = np.asarray(values, dtype=float)
        if v.ndim != 1 or v.shape[0] != self.size:
            raise DimensionMismatch(
                f"{what} has length {v.shape[-1] if v.ndim else 0}, frame has {self.size}"
            )
        if not np.all(np.isfinite(v)):
            raise InvalidInput(f"{what} has non-finite entries")
        return v


def _event_order_key(mask: int):
    bits = [i for i in range(mask.bit_length()) if mask >> i & 1]
    return (len(bits), bits)


def check_frame_size(m: int):
    if m > MAX_FRAME:
        raise FrameTooLarge(f"frame of size {m} exceeds the limit of {MAX_FRAME}")


def indicator_matrix(m: int) -> np.ndarray:
    """Row ``A`` is the 0/1 indicator of event ``A``; shape ``(2**m, m)``."""
    check_frame_size(m)
    masks = np.arange(1 << m)[:, None]
    return ((masks >> np.arange(m)) & 1).astype(float)


def event_indicators(events: Sequence[int], m: int) -> np.ndarray:
    masks = np.asarray(events, dtype=np.int64)[:, None]
    return ((masks >> np.arange(m)) & 1).astype(float)


class IntervalTable:
    """A map from events to ``[lower, upper]`` bounds.

    Events are stored in the order given; look-ups take a bitmask.
    """

    def __init__(self, frame: Frame, events: Sequence[int], lower, upper):
        self.frame = frame
        self.events = tuple(int(e) for e in events)
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self._pos = {e: i for i, e in enumerate(self.events)}

    def __getitem__(self, event: int) -> tuple[float, float]:
        i = self._pos[event]
        return float(self.lower[i]), float(self.upper[i])

    def __contains__(self, event):
        return event in self._pos

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def rows(self):
        for e, lo, up in zip(self.events, self.lower, self.upper):
            yield self.frame.event_labels(e), float(lo), float(up)

    def as_dict(self) -> dict[tuple[str, ...], tuple[float, float]]:
        return {labels: (lo, up) for labels, lo, up in self.rows()}

    def __repr__(self):
        body = ", ".join(
            "{%s}: [%.4g, %.4g]" % (",".join(lab), lo, up) for lab, lo, up in self.rows()
        )
        return f"{type(self).__name__}({body})"


class FullTable(IntervalTable):
    """Interval table over all ``2**m`` events, indexed directly by mask."""

    def __init__(self, frame: Frame, lower, upper):
        self.frame = frame
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        if self.lower.shape != (1 << frame.size,):
            raise DimensionMismatch("full table needs one entry per event")
        self.events = tuple(frame.all_events())

    def __getitem__(self, event: int) -> tuple[float, float]:
        return float(self.lower[event]), float(self.upper[event])

    def __contains__(self, event):
        return 0 <= event < len(self.lower)

    def rows(self):
        for e in self.events:
            yield self.frame.event_labels(e), float(self.lower[e]), float(self.upper[e])

    def restrict(self, events: Sequence[int]) -> IntervalTable:
        ev = list(events)
        return IntervalTable(self.frame, ev, self.lower[ev], self.upper[ev])
