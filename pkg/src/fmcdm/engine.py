"""Weight derivation, hierarchical synthesis, and panel aggregation.

Local weights come from normalized row geometric means of a pairwise matrix,
computed three times over: once per component of the fuzzy judgments.  The
lower components yield the pessimistic analysis, the modal components the
normal one, the upper components the optimistic one.  Because each mode
normalizes by its own sum, the three analyses are parallel crisp pipelines;
normalized weights of one node may cross between modes (w_pessimistic can
exceed w_normal) and are reported as computed.

Global weights multiply down the hierarchy exactly as in classical AHP
synthesis, and a panel of decision makers is combined by the arithmetic mean
of their weight vectors, mode by mode.  The geometric mean in the local step
runs over the entries of one matrix row, not over decision makers; panel
aggregation is solely the arithmetic mean here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .hierarchy import ComparisonSet, Hierarchy, Level, comparison_sets
from .judgment import (
    HierarchyMismatchError,
    PairwiseMatrix,
    ResponseSheet,
    build_matrix,
    completeness,
)


class Mode(str, Enum):
    PESSIMISTIC = "pessimistic"
    NORMAL = "normal"
    OPTIMISTIC = "optimistic"

    @property
    def component(self) -> int:
        """Index of the fuzzy component this mode reads: l, m, or u."""
        return {"pessimistic": 0, "normal": 1, "optimistic": 2}[self.value]


MODES = (Mode.PESSIMISTIC, Mode.NORMAL, Mode.OPTIMISTIC)

#: weights keyed by node id, one dict per mode
ModeVector = dict[str, float]
ModeWeights = dict[Mode, ModeVector]


class NonpositiveEntryError(ValueError):
    pass


class EmptyPanelError(ValueError):
    pass


class MissingContextError(ValueError):
    pass


class IncompleteSheetError(ValueError):
    def __init__(self, decision_maker_id: str, unanswered: list[tuple[int, str, str]]):
        self.decision_maker_id = decision_maker_id
        self.unanswered = unanswered
        pairs = ", ".join(f"set {s}: ({a}, {b})" for s, a, b in unanswered)
        super().__init__(
            f"sheet {decision_maker_id!r} is incomplete; unanswered: {pairs}"
        )


def row_geometric_means(mx: PairwiseMatrix, mode: Mode) -> list[float]:
    """Geometric mean of each row's entries in the given mode's component."""
    component = mode.component
    means = []
    for row in mx.entries:
        product = 1.0
        for entry in row:
            value = entry.as_tuple()[component]
            if value <= 0:
                raise NonpositiveEntryError(
                    f"matrix entry component {value} is not strictly positive"
                )
            product *= value
        means.append(product ** (1.0 / mx.size))
    return means


def normalize_weights(means: list[float]) -> list[float]:
    """Scale positive values to sum to one."""
    if any(g <= 0 for g in means):
        raise NonpositiveEntryError("weights can only be derived from positive values")
    total = math.fsum(means)
    return [g / total for g in means]


def local_weights(mx: PairwiseMatrix) -> ModeWeights:
    """Per-mode sibling weights of one comparison set; singletons get 1.0."""
    out: ModeWeights = {}
    for mode in MODES:
        weights = normalize_weights(row_geometric_means(mx, mode))
        out[mode] = dict(zip(mx.members, weights))
    return out


@dataclass
class Scorecard:
    """Every weight vector of one decision maker, per mode, at every level."""

    decision_maker_id: str | None
    criteria_weights: ModeWeights
    local_sub_weights: dict[str, ModeWeights]  # criterion id -> mode -> sub id -> w
    global_sub_weights: ModeWeights
    alternative_scores: ModeWeights
    rankings: dict[Mode, list[str]]  # alternatives, best first


@dataclass
class PanelReport:
    per_decision_maker: list[Scorecard]
    aggregate: Scorecard


def _rank(scores: ModeVector) -> list[str]:
    # Stable sort: ties keep hierarchy declaration order.
    return sorted(scores, key=lambda node: -scores[node])


def synthesize(
    h: Hierarchy,
    locals_by_set: dict[ComparisonSet, ModeWeights],
    decision_maker_id: str | None = None,
) -> Scorecard:
    """Combine local weights into global ones, mode by mode.

    A sub-criterion's global weight is its parent criterion's weight times its
    local weight; an alternative's score is the global-weight-weighted sum of
    its local weights across all sub-criteria.
    """
    sets = comparison_sets(h)
    for comp_set in sets:
        if comp_set not in locals_by_set:
            raise MissingContextError(
                f"no local weights for comparison set under {comp_set.context!r}"
            )

    criteria_set = sets[0]
    sub_sets = {s.context: s for s in sets if s.level is Level.SUB_CRITERIA}
    alt_sets = {s.context: s for s in sets if s.level is Level.ALTERNATIVES}

    criteria_weights = locals_by_set[criteria_set]
    local_sub: dict[str, ModeWeights] = {
        c.id: locals_by_set[sub_sets[c.id]] for c in h.criteria
    }

    global_sub: ModeWeights = {}
    alternative_scores: ModeWeights = {}
    for mode in MODES:
        global_sub[mode] = {}
        for criterion in h.criteria:
            c_weight = criteria_weights[mode][criterion.id]
            for sub in h.sub_criteria[criterion.id]:
                global_sub[mode][sub.id] = c_weight * local_sub[criterion.id][mode][sub.id]

        scores = {alt.id: 0.0 for alt in h.alternatives}
        for sub in h.sub_criteria_in_order():
            alt_local = locals_by_set[alt_sets[sub.id]][mode]
            weight = global_sub[mode][sub.id]
            for alt in h.alternatives:
                scores[alt.id] += weight * alt_local[alt.id]
        alternative_scores[mode] = scores

    return Scorecard(
        decision_maker_id=decision_maker_id,
        criteria_weights=criteria_weights,
        local_sub_weights=local_sub,
        global_sub_weights=global_sub,
        alternative_scores=alternative_scores,
        rankings={mode: _rank(alternative_scores[mode]) for mode in MODES},
    )


def _mean_vectors(vectors: list[ModeVector]) -> ModeVector:
    keys = list(vectors[0])
    for vector in vectors[1:]:
        if list(vector) != keys:
            raise HierarchyMismatchError(
                "scorecards cover different node sets and cannot be aggregated"
            )
    n = len(vectors)
    return {k: math.fsum(v[k] for v in vectors) / n for k in keys}


def aggregate_panel(cards: list[Scorecard]) -> PanelReport:
    """Arithmetic mean of the panel's weight vectors, per mode and per level."""
    if not cards:
        raise EmptyPanelError("cannot aggregate an empty panel")

    def mean_weights(pick) -> ModeWeights:
        return {mode: _mean_vectors([pick(c)[mode] for c in cards]) for mode in MODES}

    criteria = mean_weights(lambda c: c.criteria_weights)
    local_sub = {
        crit: mean_weights(lambda c, crit=crit: c.local_sub_weights[crit])
        for crit in cards[0].local_sub_weights
    }
    global_sub = mean_weights(lambda c: c.global_sub_weights)
    scores = mean_weights(lambda c: c.alternative_scores)

    aggregate = Scorecard(
        decision_maker_id=None,
        criteria_weights=criteria,
        local_sub_weights=local_sub,
        global_sub_weights=global_sub,
        alternative_scores=scores,
        rankings={mode: _rank(scores[mode]) for mode in MODES},
    )
    return PanelReport(per_decision_maker=list(cards), aggregate=aggregate)


def scorecard_for_sheet(h: Hierarchy, sheet: ResponseSheet) -> Scorecard:
    """Matrices, local weights, and synthesis for one complete sheet."""
    done = completeness(sheet, h)
    if done.unanswered:
        raise IncompleteSheetError(sheet.decision_maker_id, done.unanswered)

    grouped = sheet.answers_by_set()
    locals_by_set: dict[ComparisonSet, ModeWeights] = {}
    for set_index, comp_set in enumerate(comparison_sets(h)):
        matrix = build_matrix(comp_set, grouped.get(set_index, []))
        locals_by_set[comp_set] = local_weights(matrix)
    return synthesize(h, locals_by_set, sheet.decision_maker_id)


def evaluate(h: Hierarchy, sheets: list[ResponseSheet]) -> PanelReport:
    """Full pipeline: one scorecard per decision maker, then the panel mean."""
    cards = [scorecard_for_sheet(h, sheet) for sheet in sheets]
    return aggregate_panel(cards)
