"""Questionnaire answers and their translation into fuzzy pairwise matrices.

Each answer names the favored member of a pair and a linguistic term; the
favored direction receives the term's scale triple and the reverse direction
its complement, so every matrix is complement-reciprocal by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .fuzzy import CANONICAL_TERMS, INDIFFERENCE, TriangularFuzzyNumber, scale_of
from .hierarchy import GOAL, ComparisonSet, Hierarchy, Level, comparison_sets, content_hash


class Favored(str, Enum):
    FIRST = "first"
    SECOND = "second"


class MissingAnswerError(ValueError):
    def __init__(self, pairs: list[tuple[str, str]]):
        self.pairs = pairs
        listed = ", ".join(f"({a}, {b})" for a, b in pairs)
        super().__init__(f"unanswered pairs: {listed}")


class DuplicateAnswerError(ValueError):
    pass


class ForeignNodeError(ValueError):
    pass


class HierarchyMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Answer:
    """One questionnaire response: which member of a pair is favored, and how much."""

    set_index: int
    first: str
    second: str
    favored: Favored
    term: str

    def __post_init__(self):
        if self.first == self.second:
            raise ValueError(f"a pair must name two distinct nodes, got {self.first!r} twice")
        object.__setattr__(self, "favored", Favored(self.favored))

    def key(self) -> tuple[int, frozenset[str]]:
        """Identity of the unordered pair within its comparison set."""
        return (self.set_index, frozenset((self.first, self.second)))


def answer_to_entries(
    answer: Answer,
) -> tuple[TriangularFuzzyNumber, TriangularFuzzyNumber]:
    """Matrix entries (first->second, second->first) for one answer."""
    term = scale_of(answer.term)
    if answer.favored is Favored.FIRST:
        return term.scale, term.reciprocal_scale
    return term.reciprocal_scale, term.scale


@dataclass(frozen=True)
class PairwiseMatrix:
    """n x n grid of fuzzy judgments over one comparison set's members.

    Diagonal entries are exactly (0.5, 0.5, 0.5) and opposite off-diagonal
    entries are complements of each other; both are checked on construction.
    """

    members: tuple[str, ...]
    entries: tuple[tuple[TriangularFuzzyNumber, ...], ...]

    def __post_init__(self):
        n = len(self.members)
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError(f"entries must form an {n}x{n} grid")
        for i in range(n):
            if self.entries[i][i] != INDIFFERENCE:
                raise ValueError(
                    f"diagonal entry for {self.members[i]} must be (0.5, 0.5, 0.5)"
                )
            for j in range(i + 1, n):
                if self.entries[j][i] != self.entries[i][j].complement():
                    raise ValueError(
                        f"entries ({self.members[i]}, {self.members[j]}) are not "
                        "complement-reciprocal"
                    )

    @property
    def size(self) -> int:
        return len(self.members)


def build_matrix(comp_set: ComparisonSet, answers: list[Answer]) -> PairwiseMatrix:
    """Assemble the pairwise matrix of a comparison set from its answers.

    Every unordered member pair must be answered exactly once; the answer
    order is irrelevant.
    """
    members = comp_set.members
    index = {node: i for i, node in enumerate(members)}
    n = len(members)
    grid: list[list[TriangularFuzzyNumber | None]] = [
        [INDIFFERENCE if i == j else None for j in range(n)] for i in range(n)
    ]

    seen: set[frozenset[str]] = set()
    for answer in answers:
        if answer.first not in index or answer.second not in index:
            raise ForeignNodeError(
                f"answer pair ({answer.first}, {answer.second}) is not in "
                f"comparison set {comp_set.context}"
            )
        pair = frozenset((answer.first, answer.second))
        if pair in seen:
            raise DuplicateAnswerError(
                f"pair ({answer.first}, {answer.second}) answered more than once"
            )
        seen.add(pair)
        i, j = index[answer.first], index[answer.second]
        grid[i][j], grid[j][i] = answer_to_entries(answer)

    missing = [(a, b) for a, b in comp_set.pairs() if frozenset((a, b)) not in seen]
    if missing:
        raise MissingAnswerError(missing)

    return PairwiseMatrix(members, tuple(tuple(row) for row in grid))  # type: ignore[arg-type]


@dataclass
class ResponseSheet:
    """All answers of one decision maker against one hierarchy."""

    decision_maker_id: str
    hierarchy_ref: str
    answers: list[Answer] = field(default_factory=list)

    def add_answer(self, answer: Answer) -> None:
        if any(a.key() == answer.key() for a in self.answers):
            raise DuplicateAnswerError(
                f"pair ({answer.first}, {answer.second}) already answered "
                f"in set {answer.set_index}"
            )
        self.answers.append(answer)

    def answers_by_set(self) -> dict[int, list[Answer]]:
        grouped: dict[int, list[Answer]] = {}
        for answer in self.answers:
            grouped.setdefault(answer.set_index, []).append(answer)
        return grouped

    def to_dict(self) -> dict:
        return {
            "decisionMakerId": self.decision_maker_id,
            "hierarchyRef": self.hierarchy_ref,
            "answers": [
                {
                    "set": a.set_index,
                    "first": a.first,
                    "second": a.second,
                    "favored": a.favored.value,
                    "term": a.term,
                }
                for a in self.answers
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ResponseSheet":
        sheet = cls(
            decision_maker_id=str(data["decisionMakerId"]),
            hierarchy_ref=str(data["hierarchyRef"]),
        )
        for item in data["answers"]:
            sheet.add_answer(
                Answer(
                    set_index=int(item["set"]),
                    first=str(item["first"]),
                    second=str(item["second"]),
                    favored=Favored(item["favored"]),
                    term=str(item["term"]),
                )
            )
        return sheet


class Completeness(NamedTuple):
    fraction: float
    unanswered: list[tuple[int, str, str]]


def completeness(sheet: ResponseSheet, h: Hierarchy) -> Completeness:
    """Answered share of the questionnaire, with the open pairs listed."""
    ref = sheet.hierarchy_ref
    if ref != content_hash(h):
        raise HierarchyMismatchError(
            f"sheet {sheet.decision_maker_id!r} references hierarchy {ref!r}, "
            "not the one evaluated"
        )

    answered = {a.key() for a in sheet.answers}
    unanswered: list[tuple[int, str, str]] = []
    total = 0
    for set_index, comp_set in enumerate(comparison_sets(h)):
        for a, b in comp_set.pairs():
            total += 1
            if (set_index, frozenset((a, b))) not in answered:
                unanswered.append((set_index, a, b))
    fraction = 1.0 if total == 0 else (total - len(unanswered)) / total
    return Completeness(fraction, unanswered)


@dataclass(frozen=True)
class Question:
    """One slot of the deterministic questionnaire enumeration."""

    index: int
    set_index: int
    level: Level
    context: str
    context_label: str
    first: str
    first_label: str
    second: str
    second_label: str

    @property
    def prompt(self) -> str:
        return (
            f"How important is {self.first} relative to {self.second} "
            f"with respect to {self.context_label}?"
        )

    def key(self) -> tuple[int, frozenset[str]]:
        return (self.set_index, frozenset((self.first, self.second)))

    def payload(self) -> dict:
        return {
            "questionIndex": self.index,
            "setIndex": self.set_index,
            "level": self.level.value,
            "context": self.context,
            "contextLabel": self.context_label,
            "firstNode": self.first,
            "firstLabel": self.first_label,
            "secondNode": self.second,
            "secondLabel": self.second_label,
            "promptText": self.prompt,
            "options": list(CANONICAL_TERMS),
        }


def enumerate_questions(h: Hierarchy) -> list[Question]:
    """Every pairwise question, in comparison-set order then pair order."""
    questions: list[Question] = []
    for set_index, comp_set in enumerate(comparison_sets(h)):
        context_label = h.goal if comp_set.context == GOAL else h.node_label(comp_set.context)
        for first, second in comp_set.pairs():
            questions.append(
                Question(
                    index=len(questions),
                    set_index=set_index,
                    level=comp_set.level,
                    context=comp_set.context,
                    context_label=context_label,
                    first=first,
                    first_label=h.node_label(first),
                    second=second,
                    second_label=h.node_label(second),
                )
            )
    return questions


def additive_inconsistency(mx: PairwiseMatrix) -> float:
    """Mean transitivity violation of the modal judgments, 0 when consistent.

    Averages |m_ij + m_jk - m_ik - 0.5| over all ordered index triples;
    matrices with fewer than three members cannot be inconsistent.
    Diagnostic only: inconsistent questionnaires are never rejected.
    """
    n = mx.size
    if n < 3:
        return 0.0
    modal = [[entry.m for entry in row] for row in mx.entries]
    total = 0.0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                total += abs(modal[i][j] + modal[j][k] - modal[i][k] - 0.5)
    return total / n**3
