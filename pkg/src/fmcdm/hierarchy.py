"""Decision hierarchy: goal, criteria, sub-criteria, alternatives.

The hierarchy is fixed at four levels and induces one pairwise comparison set
per context: the criteria under the goal, each criterion's sub-criteria, and
the alternatives under every sub-criterion.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations


class InvalidHierarchyError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("invalid hierarchy: " + "; ".join(violations))


class Level(str, Enum):
    CRITERIA = "criteria"
    SUB_CRITERIA = "subcriteria"
    ALTERNATIVES = "alternatives"


#: Context marker for the top-level comparison set (criteria under the goal).
GOAL = "GOAL"

#: Name under which the built-in e-government security hierarchy is addressable.
EGOV_PRESET_NAME = "egov-security-v1"


@dataclass(frozen=True)
class Node:
    id: str
    label: str


@dataclass(frozen=True)
class ComparisonSet:
    """The members compared under one context node (or under the goal)."""

    context: str  # node id, or GOAL for the criteria set
    members: tuple[str, ...]
    level: Level

    def pairs(self) -> list[tuple[str, str]]:
        """Unordered member pairs in declaration order; singletons have none."""
        return list(combinations(self.members, 2))


@dataclass(frozen=True)
class Hierarchy:
    goal: str
    criteria: tuple[Node, ...]
    sub_criteria: dict[str, tuple[Node, ...]] = field(default_factory=dict)
    alternatives: tuple[Node, ...] = ()

    def node_label(self, node_id: str) -> str:
        for node in self.all_nodes():
            if node.id == node_id:
                return node.label
        raise KeyError(node_id)

    def all_nodes(self) -> list[Node]:
        nodes = list(self.criteria)
        for criterion in self.criteria:
            nodes.extend(self.sub_criteria.get(criterion.id, ()))
        nodes.extend(self.alternatives)
        return nodes

    def sub_criteria_in_order(self) -> list[Node]:
        """All sub-criteria, in criteria declaration order then their own."""
        out: list[Node] = []
        for criterion in self.criteria:
            out.extend(self.sub_criteria.get(criterion.id, ()))
        return out


def preset_egov() -> Hierarchy:
    """The built-in e-government information security evaluation hierarchy.

    Four criteria (management, technology, economy, culture), ten sub-criteria,
    and the confidentiality/integrity/availability triangle as alternatives.
    """
    return Hierarchy(
        goal="information security policy performance evaluation",
        criteria=(
            Node("M", "Management"),
            Node("T", "Technology"),
            Node("E", "Economy"),
            Node("C", "Culture"),
        ),
        sub_criteria={
            "M": (
                Node("M1", "comply with standard"),
                Node("M2", "regular review"),
                Node("M3", "commitment"),
            ),
            "T": (
                Node("T1", "end point security"),
                Node("T2", "network security"),
                Node("T3", "application security"),
            ),
            "E": (
                Node("E1", "security investment"),
                Node("E2", "cost of attack"),
            ),
            "C": (
                Node("C1", "reward & punishment"),
                Node("C2", "security education"),
            ),
        },
        alternatives=(
            Node("ALT.C", "Confidentiality"),
            Node("ALT.I", "Integrity"),
            Node("ALT.A", "Availability"),
        ),
    )


PRESETS = {EGOV_PRESET_NAME: preset_egov}


def validate(h: Hierarchy) -> list[str]:
    """Check every structural invariant; violations are returned, not raised."""
    violations: list[str] = []
    if len(h.criteria) < 2:
        violations.append("criteria count < 2")
    if len(h.alternatives) < 2:
        violations.append("alternatives count < 2")

    seen: set[str] = set()
    for node in h.all_nodes():
        if not node.id or any(ch.isspace() for ch in node.id):
            violations.append(f"invalid node id: {node.id!r}")
        if node.id in seen:
            violations.append(f"duplicate node id: {node.id}")
        seen.add(node.id)

    for criterion in h.criteria:
        if not h.sub_criteria.get(criterion.id):
            violations.append(f"criterion {criterion.id} has no sub-criteria")
    for key in h.sub_criteria:
        if key not in {c.id for c in h.criteria}:
            violations.append(f"sub-criteria attached to unknown criterion: {key}")
    return violations


def comparison_sets(h: Hierarchy) -> list[ComparisonSet]:
    """All comparison sets in deterministic order.

    One criteria set under the goal, one sub-criteria set per criterion (in
    criteria order), then one alternatives set per sub-criterion.
    """
    violations = validate(h)
    if violations:
        raise InvalidHierarchyError(violations)

    sets = [
        ComparisonSet(GOAL, tuple(c.id for c in h.criteria), Level.CRITERIA)
    ]
    for criterion in h.criteria:
        sets.append(
            ComparisonSet(
                criterion.id,
                tuple(s.id for s in h.sub_criteria[criterion.id]),
                Level.SUB_CRITERIA,
            )
        )
    alt_ids = tuple(a.id for a in h.alternatives)
    for sub in h.sub_criteria_in_order():
        sets.append(ComparisonSet(sub.id, alt_ids, Level.ALTERNATIVES))
    return sets


def question_count(h: Hierarchy) -> int:
    return sum(len(s.pairs()) for s in comparison_sets(h))


def to_dict(h: Hierarchy) -> dict:
    return {
        "goal": h.goal,
        "criteria": [{"id": n.id, "label": n.label} for n in h.criteria],
        "subCriteria": {
            c.id: [{"id": n.id, "label": n.label} for n in h.sub_criteria[c.id]]
            for c in h.criteria
            if c.id in h.sub_criteria
        },
        "alternatives": [{"id": n.id, "label": n.label} for n in h.alternatives],
    }


def from_dict(data: dict) -> Hierarchy:
    def nodes(items) -> tuple[Node, ...]:
        return tuple(Node(str(i["id"]), str(i["label"])) for i in items)

    return Hierarchy(
        goal=str(data["goal"]),
        criteria=nodes(data["criteria"]),
        sub_criteria={k: nodes(v) for k, v in data["subCriteria"].items()},
        alternatives=nodes(data["alternatives"]),
    )


def content_hash(h: Hierarchy) -> str:
    """SHA-256 of the canonical JSON form; identifies a hierarchy in sheets and reports."""
    canonical = json.dumps(to_dict(h), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
