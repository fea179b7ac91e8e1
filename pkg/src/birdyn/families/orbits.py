"""Orbit traces shared by the family verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Regular:
    """The trace ran its full length without landing or hitting indeterminacy."""

    tag = "Regular"

    def to_json(self):
        return {"tag": self.tag}


@dataclass(frozen=True)
class HitIndeterminacy:
    step: int
    tag = "HitIndeterminacy"

    def to_json(self):
        return {"tag": self.tag, "step": self.step}


@dataclass(frozen=True)
class LandedOn:
    label: str
    step: int
    tag = "LandedOn"

    def to_json(self):
        return {"tag": self.tag, "label": self.label, "step": self.step}


@dataclass
class OrbitTrace:
    """Points visited, in order, and how the trace ended.

    ``points[i]`` is the orbit point after i steps.  ``residual`` is the
    distance between the final point and the target the caller asked about.
    ``notes`` records events such as passing through an exceptional line or
    a blow-up fibre.
    """

    points: list
    terminal: object
    residual: float | None = None
    notes: list = field(default_factory=list)

    @property
    def steps(self):
        return len(self.points) - 1

    def landed(self, label=None):
        return isinstance(self.terminal, LandedOn) and (label is None or self.terminal.label == label)

    def to_json(self):
        return {
            "points": [p.to_json() if hasattr(p, "to_json") else p for p in self.points],
            "terminal": self.terminal.to_json(),
            "residual": self.residual,
            "notes": list(self.notes),
        }
