import random

import pytest

from fmcdm import comparison_sets, content_hash
from fmcdm.fuzzy import INDIFFERENCE, TFN, UnknownTermError
from fmcdm.judgment import (
    Answer,
    DuplicateAnswerError,
    Favored,
    ForeignNodeError,
    HierarchyMismatchError,
    MissingAnswerError,
    PairwiseMatrix,
    ResponseSheet,
    additive_inconsistency,
    answer_to_entries,
    build_matrix,
    completeness,
    enumerate_questions,
)

from conftest import constant_sheet, indifference_matrix, random_sheet


def criteria_set(h):
    return comparison_sets(h)[0]


class TestAnswerToEntries:
    def test_favored_first_important(self):
        a12, a21 = answer_to_entries(Answer(0, "M", "T", Favored.FIRST, "Important"))
        assert a12 == TFN(0.65, 0.7, 0.75)
        assert a21 == TFN(0.25, 0.3, 0.35)

    def test_favored_second_absolutely_important(self):
        a12, a21 = answer_to_entries(
            Answer(0, "M", "T", Favored.SECOND, "Absolutely Important")
        )
        assert a12 == TFN(0.1, 0.1, 0.15)
        assert a21 == TFN(0.85, 0.9, 0.9)

    def test_favored_first_equally_important(self):
        a12, a21 = answer_to_entries(
            Answer(0, "M", "T", Favored.FIRST, "Equally Important")
        )
        assert a12 == TFN(0.5, 0.5, 0.55)
        assert a21 == TFN(0.45, 0.5, 0.5)

    def test_unknown_term_propagates(self):
        with pytest.raises(UnknownTermError):
            answer_to_entries(Answer(0, "M", "T", Favored.FIRST, "Okay"))

    def test_same_node_twice_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            Answer(0, "M", "M", Favored.FIRST, "Important")

    def test_bad_favored_rejected(self):
        with pytest.raises(ValueError):
            Answer(0, "M", "T", "both", "Important")


class TestBuildMatrix:
    def test_singleton_set(self, toy):
        sub_set = comparison_sets(toy)[1]
        assert len(sub_set.members) == 1
        mx = build_matrix(sub_set, [])
        assert mx.entries == ((INDIFFERENCE,),)

    def test_two_member_important(self, toy):
        comp = criteria_set(toy)
        mx = build_matrix(comp, [Answer(0, "c1", "c2", Favored.FIRST, "Important")])
        assert mx.entries[0][0] == INDIFFERENCE
        assert mx.entries[0][1] == TFN(0.65, 0.7, 0.75)
        assert mx.entries[1][0] == TFN(0.25, 0.3, 0.35)
        assert mx.entries[1][1] == INDIFFERENCE

    def test_missing_answer_names_pair(self, preset):
        comp = comparison_sets(preset)[1]  # M1, M2, M3
        answers = [
            Answer(1, "M1", "M2", Favored.FIRST, "Important"),
            Answer(1, "M1", "M3", Favored.SECOND, "Slightly Important"),
        ]
        with pytest.raises(MissingAnswerError, match=r"\(M2, M3\)"):
            build_matrix(comp, answers)

    def test_duplicate_answer(self, toy):
        answers = [
            Answer(0, "c1", "c2", Favored.FIRST, "Important"),
            Answer(0, "c2", "c1", Favored.FIRST, "Very Important"),
        ]
        with pytest.raises(DuplicateAnswerError):
            build_matrix(criteria_set(toy), answers)

    def test_foreign_node(self, toy):
        with pytest.raises(ForeignNodeError, match="Z9"):
            build_matrix(
                criteria_set(toy), [Answer(0, "c1", "Z9", Favored.FIRST, "Important")]
            )

    def test_order_insensitive(self, preset):
        comp = comparison_sets(preset)[0]
        rng = random.Random(7)
        answers = [
            Answer(0, a, b, rng.choice(list(Favored)), "Very Important")
            for a, b in comp.pairs()
        ]
        shuffled = answers[:]
        rng.shuffle(shuffled)
        assert build_matrix(comp, answers) == build_matrix(comp, shuffled)

    def test_complement_reciprocity_bit_exact(self, preset):
        rng = random.Random(21)
        sheet = random_sheet(preset, "dm", rng)
        grouped = sheet.answers_by_set()
        for set_index, comp in enumerate(comparison_sets(preset)):
            mx = build_matrix(comp, grouped.get(set_index, []))
            n = mx.size
            for i in range(n):
                for j in range(n):
                    assert mx.entries[j][i] == mx.entries[i][j].complement()
                    # opposing components pair up to exactly 1
                    assert mx.entries[i][j].m + mx.entries[j][i].m == 1.0
                    assert mx.entries[i][j].l + mx.entries[j][i].u == 1.0
                    assert mx.entries[i][j].u + mx.entries[j][i].l == 1.0


class TestPairwiseMatrixInvariants:
    def test_bad_diagonal_rejected(self):
        with pytest.raises(ValueError, match="diagonal"):
            PairwiseMatrix(("a", "b"), (
                (TFN(0.4, 0.5, 0.6), TFN(0.5, 0.5, 0.55)),
                (TFN(0.45, 0.5, 0.5), INDIFFERENCE),
            ))

    def test_non_reciprocal_rejected(self):
        with pytest.raises(ValueError, match="complement-reciprocal"):
            PairwiseMatrix(("a", "b"), (
                (INDIFFERENCE, TFN(0.65, 0.7, 0.75)),
                (TFN(0.65, 0.7, 0.75), INDIFFERENCE),
            ))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError, match="grid"):
            PairwiseMatrix(("a", "b"), ((INDIFFERENCE,),))

    def test_uniform_injection_is_legal(self):
        mx = indifference_matrix(["a", "b", "c"])
        assert mx.size == 3


class TestCompleteness:
    def test_empty_sheet(self, preset):
        sheet = ResponseSheet("dm", content_hash(preset))
        done = completeness(sheet, preset)
        assert done.fraction == 0.0
        assert len(done.unanswered) == 44

    def test_full_sheet(self, preset):
        done = completeness(constant_sheet(preset, "dm"), preset)
        assert done.fraction == 1.0
        assert done.unanswered == []

    def test_half_answered(self, preset):
        full = constant_sheet(preset, "dm")
        half = ResponseSheet("dm", content_hash(preset), full.answers[:22])
        assert completeness(half, preset).fraction == 0.5

    def test_hierarchy_mismatch(self, preset):
        sheet = ResponseSheet("dm", "not-the-right-hash")
        with pytest.raises(HierarchyMismatchError):
            completeness(sheet, preset)

    def test_monotone_in_answers(self, preset):
        full = constant_sheet(preset, "dm")
        rng = random.Random(3)
        order = rng.sample(full.answers, len(full.answers))
        sheet = ResponseSheet("dm", content_hash(preset))
        last = 0.0
        for answer in order:
            sheet.add_answer(answer)
            fraction = completeness(sheet, preset).fraction
            assert fraction >= last
            last = fraction
        assert last == 1.0


class TestResponseSheet:
    def test_duplicate_pair_rejected(self, preset):
        sheet = ResponseSheet("dm", content_hash(preset))
        sheet.add_answer(Answer(0, "M", "T", Favored.FIRST, "Important"))
        with pytest.raises(DuplicateAnswerError):
            sheet.add_answer(Answer(0, "T", "M", Favored.SECOND, "Important"))

    def test_round_trip_preserves_order(self, preset):
        rng = random.Random(11)
        sheet = random_sheet(preset, "dm-rt", rng)
        again = ResponseSheet.from_dict(sheet.to_dict())
        assert again == sheet
        assert [a.key() for a in again.answers] == [a.key() for a in sheet.answers]


class TestAdditiveInconsistency:
    def test_uniform_matrix_is_consistent(self):
        assert additive_inconsistency(indifference_matrix(["a", "b", "c"])) == 0.0

    def test_two_by_two_has_no_triples(self, toy):
        mx = build_matrix(
            criteria_set(toy), [Answer(0, "c1", "c2", Favored.FIRST, "Important")]
        )
        assert additive_inconsistency(mx) == 0.0

    def test_transitive_chain_is_consistent(self, preset):
        # modal entries m12 = m23 = 0.7 and m13 = 0.9 satisfy transitivity:
        # 0.7 + 0.7 - 0.9 = 0.5 exactly, and so do all 27 ordered triples.
        comp = comparison_sets(preset)[1]
        mx = build_matrix(comp, [
            Answer(1, "M1", "M2", Favored.FIRST, "Important"),
            Answer(1, "M2", "M3", Favored.FIRST, "Important"),
            Answer(1, "M1", "M3", Favored.FIRST, "Absolutely Important"),
        ])
        assert additive_inconsistency(mx) == pytest.approx(0.0, abs=1e-12)

    def test_brute_force_enumeration(self, preset):
        comp = comparison_sets(preset)[1]
        mx = build_matrix(comp, [
            Answer(1, "M1", "M2", Favored.FIRST, "Important"),
            Answer(1, "M2", "M3", Favored.FIRST, "Important"),
            Answer(1, "M1", "M3", Favored.SECOND, "Equally Important"),
        ])
        modal = [[e.m for e in row] for row in mx.entries]
        expected = sum(
            abs(modal[i][j] + modal[j][k] - modal[i][k] - 0.5)
            for i in range(3) for j in range(3) for k in range(3)
        ) / 27
        assert expected > 0.01  # genuinely inconsistent judgment set
        assert additive_inconsistency(mx) == pytest.approx(expected, rel=1e-12)


class TestQuestionEnumeration:
    def test_preset_counts_and_first_question(self, preset):
        questions = enumerate_questions(preset)
        assert len(questions) == 44
        first = questions[0]
        assert (first.first, first.second) == ("M", "T")
        assert first.context_label == preset.goal
        assert first.prompt == (
            "How important is M relative to T with respect to "
            "information security policy performance evaluation?"
        )

    def test_indices_sequential_and_keys_unique(self, preset):
        questions = enumerate_questions(preset)
        assert [q.index for q in questions] == list(range(44))
        assert len({q.key() for q in questions}) == 44

    def test_payload_options(self, preset):
        payload = enumerate_questions(preset)[0].payload()
        assert payload["options"] == [
            "Equally Important", "Slightly Important", "Important",
            "Very Important", "Absolutely Important",
        ]
        assert payload["firstNode"] == "M"
        assert payload["firstLabel"] == "Management"
