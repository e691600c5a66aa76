import pytest
from hypothesis import given, settings, strategies as st

from manipdetect.core import ElectionInstance
from manipdetect.errors import ConfigError, DegenerateRosterError
from manipdetect.rules import (
    ScoringVector,
    VotingRule,
    bucklin_levels,
    bucklin_score,
    co_winners,
    evaluate_scores,
    maximin_score,
    stv_elimination_order,
    topk_counts,
    winner,
)

from samples import A, B, C, e1, e3


def test_borda_scores_e1():
    table = evaluate_scores(e1(), ScoringVector.borda(3))
    assert table.scores == (4, 4, 1)


def test_plurality_scores_e1():
    table = evaluate_scores(e1(), ScoringVector.plurality(3))
    assert table.scores == (1, 2, 0)


def test_all_equal_vector_rejected():
    with pytest.raises(ConfigError):
        ScoringVector((1, 1, 1))


def test_vector_must_be_non_increasing():
    with pytest.raises(ConfigError):
        ScoringVector((1, 2, 0))


def test_vector_length_must_match_roster():
    with pytest.raises(ConfigError):
        evaluate_scores(e1(), ScoringVector.borda(4))


def test_named_vectors():
    assert ScoringVector.borda(4).alphas == (3, 2, 1, 0)
    assert ScoringVector.approval(2, 4).alphas == (1, 1, 0, 0)
    assert ScoringVector.plurality(3).alphas == (1, 0, 0)
    assert ScoringVector.veto(3).alphas == (1, 1, 0)
    with pytest.raises(ConfigError):
        ScoringVector.approval(3, 3)


def test_maximin_scores_e1():
    inst = e1()
    assert maximin_score(inst, A) == -1
    assert maximin_score(inst, B) == 1
    assert maximin_score(inst, C) == -3


def test_maximin_unanimous_top_scores_n():
    inst = ElectionInstance(("a", "b", "c"), [(A, B, C)] * 4)
    assert maximin_score(inst, A) == 4


def test_maximin_opposite_ballots_score_zero():
    inst = ElectionInstance(("a", "b", "c"), [(A, B, C), (C, B, A)])
    for c in range(3):
        assert maximin_score(inst, c) == 0


def test_maximin_rejects_single_candidate():
    inst = ElectionInstance(("a",), [(0,)])
    with pytest.raises(DegenerateRosterError):
        maximin_score(inst, 0)


def test_bucklin_scores_e3():
    inst = e3()
    assert bucklin_score(inst, A) == 2
    assert bucklin_score(inst, C) == 3


def test_bucklin_unanimous_top_is_level_one():
    inst = ElectionInstance(("a", "b"), [(A, B)] * 3)
    assert bucklin_score(inst, A) == 1


def test_stv_elimination_e1():
    # round 1 tops: a=1, b=2, c=0 -> drop c; round 2: a=1, b=2 -> drop a
    assert stv_elimination_order(e1()) == (C, A, B)


def test_stv_unanimous_winner_is_common_top():
    inst = ElectionInstance(("a", "b", "c"), [(B, A, C)] * 3)
    assert stv_elimination_order(inst)[-1] == B


def test_stv_single_candidate():
    inst = ElectionInstance(("a",), [(0,)])
    assert stv_elimination_order(inst) == (0,)


def test_winner_examples_e1():
    inst = e1()
    assert winner(inst, VotingRule.scoring(ScoringVector.borda(3))) == A  # 4-4 tie -> a
    assert winner(inst, VotingRule.maximin()) == B
    assert winner(inst, VotingRule.stv()) == B


small_profiles = st.integers(2, 4).flatmap(
    lambda m: st.lists(st.permutations(range(m)), min_size=1, max_size=5)
)


def _rules_for(m):
    return [
        VotingRule.scoring(ScoringVector.borda(m)),
        VotingRule.scoring(ScoringVector.plurality(m)),
        VotingRule.maximin(),
        VotingRule.bucklin(),
    ]


@given(small_profiles, st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_singleton_co_winner_ignores_tiebreak(ballots, rng):
    m = len(ballots[0])
    names = [f"c{i}" for i in range(m)]
    tb = list(range(m))
    rng.shuffle(tb)
    for rule in _rules_for(m):
        base = ElectionInstance(names, ballots)
        cw = co_winners(base, rule)
        if len(cw) == 1:
            permuted = ElectionInstance(names, ballots, tiebreak=tb)
            assert winner(permuted, rule) == cw[0]


@given(small_profiles, st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_anonymity(ballots, rng):
    m = len(ballots[0])
    names = [f"c{i}" for i in range(m)]
    shuffled = list(ballots)
    rng.shuffle(shuffled)
    for rule in _rules_for(m) + [VotingRule.stv()]:
        assert winner(ElectionInstance(names, ballots), rule) == winner(
            ElectionInstance(names, shuffled), rule
        )


@given(small_profiles)
@settings(max_examples=60)
def test_bucklin_levels_bounded_and_full_at_level_m(ballots):
    m = len(ballots[0])
    inst = ElectionInstance([f"c{i}" for i in range(m)], ballots)
    levels = bucklin_levels(m, inst.n, inst.ballots)
    assert all(1 <= l <= m for l in levels)
    counts = topk_counts(m, inst.ballots)
    assert all(counts[c][m] == inst.n for c in range(m))


@given(small_profiles)
@settings(max_examples=60)
def test_stv_agrees_with_plurality_on_strict_majorities(ballots):
    m = len(ballots[0])
    inst = ElectionInstance([f"c{i}" for i in range(m)], ballots)
    tops = [b.ranking[0] for b in inst.ballots]
    for c in range(m):
        if 2 * tops.count(c) > inst.n:
            assert winner(inst, VotingRule.stv()) == c
            assert winner(inst, VotingRule.scoring(ScoringVector.plurality(m))) == c
