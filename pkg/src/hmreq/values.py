"""Schwartz value space and pairwise conflict scoring.

The packaged table places 56 sub-values on a 2D plane derived from a
smallest-space analysis of the Schwartz survey data: values cluster into
their 10 motivational groups, and motivationally opposed groups sit on
opposite sides of the plane. The conflict score of a value pair is the
Euclidean distance between the two values, normalized by the largest
distance in the table, so scores span (0, 1] with exactly one pair at 1.
Scores are banded into quartiles of the full pairwise distribution.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from itertools import combinations
from typing import Iterable, Protocol, Sequence


class UnknownValueError(KeyError):
    """A value id is not part of the value space."""


class DuplicateAssignmentError(ValueError):
    """Two assignments for the same stakeholder were passed in."""


@dataclass(frozen=True)
class SchwartzValue:
    id: str
    label: str
    group: str
    x: float
    y: float


@dataclass(frozen=True)
class ConflictScore:
    score: float
    quartile: str  # "Q1" .. "Q4"


@dataclass(frozen=True)
class PairScore:
    value_a: str
    value_b: str
    score: float


@dataclass(frozen=True)
class ScoreDistribution:
    """All pairwise scores plus the quartile thresholds over them."""

    pairs: tuple[PairScore, ...]
    q1: float
    q2: float
    q3: float


class AssignmentLike(Protocol):
    """What requirement_conflicts needs from a value assignment."""

    stakeholder_id: str
    value_id: str
    statement: str


@dataclass(frozen=True)
class ConflictPair:
    stakeholder_a: str
    stakeholder_b: str
    value_a: str
    value_b: str
    statement_a: str
    statement_b: str
    score: float
    quartile: str


@dataclass(frozen=True)
class ConflictReport:
    pairs: tuple[ConflictPair, ...]

    @property
    def average(self) -> float | None:
        """Mean pair score; None when fewer than two assignments exist."""
        if not self.pairs:
            return None
        return sum(p.score for p in self.pairs) / len(self.pairs)


class ValueSpace:
    def __init__(self, values: Sequence[SchwartzValue]) -> None:
        self.values: tuple[SchwartzValue, ...] = tuple(values)
        self.by_id: dict[str, SchwartzValue] = {
            v.id: v for v in self.values
        }
        if len(self.by_id) != len(self.values):
            raise ValueError("value ids must be unique")
        self._max_distance, self._max_pair = self._find_max_pair()

    def _find_max_pair(self) -> tuple[float, tuple[str, str]]:
        best = 0.0
        best_pair = ("", "")
        for a, b in combinations(self.values, 2):
            d = math.dist((a.x, a.y), (b.x, b.y))
            if d > best:
                best = d
                best_pair = (a.id, b.id)
        if best <= 0:
            raise ValueError("value space is degenerate")
        return best, best_pair

    @property
    def max_distance(self) -> float:
        return self._max_distance

    @property
    def max_pair(self) -> tuple[str, str]:
        return self._max_pair

    def value(self, value_id: str) -> SchwartzValue:
        try:
            return self.by_id[value_id]
        except KeyError:
            raise UnknownValueError(value_id) from None

    def groups(self) -> tuple[str, ...]:
        """Group names in table order."""
        return tuple(dict.fromkeys(v.group for v in self.values))

    def raw_distance(self, a_id: str, b_id: str) -> float:
        a = self.value(a_id)
        b = self.value(b_id)
        return math.dist((a.x, a.y), (b.x, b.y))

    def score(self, a_id: str, b_id: str) -> float:
        """Normalized conflict score in [0, 1]."""
        return self.raw_distance(a_id, b_id) / self._max_distance

    @cached_property
    def distribution(self) -> ScoreDistribution:
        pairs = tuple(
            PairScore(a.id, b.id, self.score(a.id, b.id))
            for a, b in combinations(self.values, 2)
        )
        scores = [p.score for p in pairs]
        q1, q2, q3 = statistics.quantiles(scores, n=4, method="inclusive")
        return ScoreDistribution(pairs=pairs, q1=q1, q2=q2, q3=q3)

    def quartile(self, score: float) -> str:
        d = self.distribution
        if score <= d.q1:
            return "Q1"
        if score <= d.q2:
            return "Q2"
        if score <= d.q3:
            return "Q3"
        return "Q4"

    def conflict_score(self, a_id: str, b_id: str) -> ConflictScore:
        s = self.score(a_id, b_id)
        return ConflictScore(score=s, quartile=self.quartile(s))

    @cached_property
    def group_centroids(self) -> dict[str, tuple[float, float]]:
        sums: dict[str, list[float]] = {}
        for v in self.values:
            acc = sums.setdefault(v.group, [0.0, 0.0, 0.0])
            acc[0] += v.x
            acc[1] += v.y
            acc[2] += 1.0
        return {
            g: (x / n, y / n) for g, (x, y, n) in sums.items()
        }

    def opposed_group(self, group: str) -> str:
        """The motivationally opposed group: farthest centroid."""
        centroids = self.group_centroids
        if group not in centroids:
            raise UnknownValueError(group)
        gx, gy = centroids[group]
        return max(
            (g for g in centroids if g != group),
            key=lambda g: math.dist((gx, gy), centroids[g]),
        )

    def requirement_conflicts(
        self, assignments: Iterable[AssignmentLike]
    ) -> ConflictReport:
        """Pairwise conflicts over one requirement's value assignments.

        Pairs follow the order assignments are given in; each pair keeps
        the earlier assignment first.
        """
        ordered = list(assignments)
        seen: set[str] = set()
        for a in ordered:
            if a.stakeholder_id in seen:
                raise DuplicateAssignmentError(a.stakeholder_id)
            seen.add(a.stakeholder_id)
            self.value(a.value_id)  # raises UnknownValueError
        pairs = tuple(
            ConflictPair(
                stakeholder_a=a.stakeholder_id,
                stakeholder_b=b.stakeholder_id,
                value_a=a.value_id,
                value_b=b.value_id,
                statement_a=a.statement,
                statement_b=b.statement,
                score=self.score(a.value_id, b.value_id),
                quartile=self.quartile(
                    self.score(a.value_id, b.value_id)
                ),
            )
            for a, b in combinations(ordered, 2)
        )
        return ConflictReport(pairs=pairs)


def load_value_space_from_text(text: str) -> ValueSpace:
    data = json.loads(text)
    if not isinstance(data, dict) or data.get("version") != "1":
        raise ValueError("unsupported value table version")
    values = [
        SchwartzValue(
            id=v["id"],
            label=v["label"],
            group=v["group"],
            x=float(v["x"]),
            y=float(v["y"]),
        )
        for v in data["values"]
    ]
    return ValueSpace(values)


def load_value_space() -> ValueSpace:
    """Load the value table bundled with the package."""
    text = (
        resources.files("hmreq.data")
        .joinpath("schwartz_values.json")
        .read_text(encoding="utf-8")
    )
    return load_value_space_from_text(text)
