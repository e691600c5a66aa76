import random
from itertools import permutations

from manipdetect.core import ElectionInstance
from manipdetect.dispatch import decide_cpm, decide_cpms, decide_cpmsw, decide_cpmw
from manipdetect.oracle import oracle_cpm, oracle_cpmw, search_coalitions
from manipdetect.rules import ScoringVector, VotingRule, winner

from samples import e1, e4, e6


def test_routing_methods():
    borda = VotingRule.scoring(ScoringVector.borda(3))
    plur = VotingRule.scoring(ScoringVector.plurality(3))
    assert decide_cpmw(e1(), borda, (0,), 1).method == "scoring-single"
    assert decide_cpmw(e1(), borda, (0, 1), 1).method == "scoring-coalition"
    inst = ElectionInstance(("a", "b", "c"), [(0, 1, 2)] * 3 + [(1, 0, 2)] * 2)
    assert decide_cpmw(inst, plur, (0, 1), 1).method == "plurality-capacity"
    assert decide_cpmw(e6(), VotingRule.maximin(), (0,), 2).method == "maximin-single"
    assert decide_cpmw(e6(), VotingRule.maximin(), (0, 1), 2).exhaustive
    assert decide_cpmw(e4(), VotingRule.bucklin(), (0,), 1).method == "bucklin-greedy"
    assert decide_cpmw(e1(), VotingRule.stv(), (0,), 0).exhaustive
    irregular = VotingRule.scoring(ScoringVector((3, 1, 0)))
    y = 1 if winner(e1(), irregular) != 1 else 2
    assert decide_cpmw(e1(), irregular, (0, 1), y).method == "oracle-fallback"


def test_search_routing():
    borda = VotingRule.scoring(ScoringVector.borda(3))
    assert decide_cpmsw(e1(), borda, 1, 1).method == "delta-greedy"
    plur = VotingRule.scoring(ScoringVector.plurality(3))
    inst = ElectionInstance(("a", "b", "c"), [(0, 1, 2)] * 3 + [(1, 0, 2)] * 2)
    verdict = decide_cpmsw(inst, plur, 1, 2)
    assert verdict.method == "plurality-capacity"
    assert verdict.answer


def test_dispatch_agrees_with_oracle_across_rules():
    rng = random.Random(400)
    for _ in range(40):
        m = rng.randint(2, 4)
        n = rng.randint(2, 5)
        perms = list(permutations(range(m)))
        inst = ElectionInstance([f"c{i}" for i in range(m)], [rng.choice(perms) for _ in range(n)])
        rules = [
            VotingRule.scoring(ScoringVector.borda(m)),
            VotingRule.scoring(ScoringVector.plurality(m)),
            VotingRule.bucklin(),
            VotingRule.stv(),
            VotingRule.maximin(),
        ]
        for rule in rules:
            x = winner(inst, rule)
            i = rng.randrange(n)
            assert decide_cpm(inst, rule, (i,)).answer == oracle_cpm(inst, rule, (i,)).answer
            for y in range(m):
                if y == x:
                    continue
                got = decide_cpmw(inst, rule, (i,), y)
                want = oracle_cpmw(inst, rule, (i,), y)
                assert got.answer == want.answer


def test_cpms_and_cpmsw_agree_with_subset_oracle():
    rng = random.Random(401)
    for _ in range(25):
        m = rng.randint(2, 3)
        n = rng.randint(2, 4)
        perms = list(permutations(range(m)))
        inst = ElectionInstance([f"c{i}" for i in range(m)], [rng.choice(perms) for _ in range(n)])
        for rule in (
            VotingRule.scoring(ScoringVector.borda(m)),
            VotingRule.scoring(ScoringVector.plurality(m)),
            VotingRule.bucklin(),
        ):
            x = winner(inst, rule)
            for k in (1, 2):
                assert (
                    decide_cpms(inst, rule, k).answer
                    == search_coalitions(inst, rule, k).answer
                )
                for y in range(m):
                    if y == x:
                        continue
                    assert (
                        decide_cpmsw(inst, rule, y, k).answer
                        == search_coalitions(inst, rule, k, y).answer
                    )
