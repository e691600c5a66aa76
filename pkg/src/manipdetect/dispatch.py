"""Routing of detection problems to the cheapest complete procedure.

Polynomial algorithms cover: any scoring rule with one suspect; convex
scoring vectors (Borda, k-approval for k >= 2, veto) and plurality for any
coalition; maximin with one suspect; Bucklin for any coalition.  Everything
else (STV, maximin coalitions, irregular scoring vectors with coalitions)
goes to the exhaustive oracle under a replay budget, and the verdict is
flagged as exhaustive.
"""

from __future__ import annotations

from .core import ElectionInstance
from .detection import DetectionQuery, DetectionVerdict, no_verdict
from .detect_bucklin import cpm_bucklin, cpmw_bucklin
from .detect_maximin import cpm_maximin_single, cpmw_maximin_single
from .detect_scoring import (
    cpm_scoring,
    cpmsw_scoring_greedy,
    cpmw_plurality_coalition,
    cpmw_scoring_coalition,
    cpmw_scoring_single,
)
from .oracle import (
    DEFAULT_REPLAY_BUDGET,
    DEFAULT_SUBSET_BUDGET,
    oracle_cpm,
    oracle_cpmw,
    search_coalitions,
)
from .rules import BUCKLIN, MAXIMIN, SCORING, VotingRule, winner


def decide_cpmw(
    instance: ElectionInstance,
    rule: VotingRule,
    suspects,
    y: int,
    *,
    budget: int = DEFAULT_REPLAY_BUDGET,
    force: bool = False,
) -> DetectionVerdict:
    query = DetectionQuery(instance, rule, tuple(suspects), actual_winner=y)
    if rule.kind == SCORING:
        if len(query.suspects) == 1:
            return cpmw_scoring_single(query)
        return cpmw_scoring_coalition(query, budget=budget, force=force)
    if rule.kind == MAXIMIN:
        if len(query.suspects) == 1:
            return cpmw_maximin_single(query)
        return oracle_cpmw(instance, rule, query.suspects, y, budget=budget, force=force)
    if rule.kind == BUCKLIN:
        return cpmw_bucklin(query)
    return oracle_cpmw(instance, rule, query.suspects, y, budget=budget, force=force)


def decide_cpm(
    instance: ElectionInstance,
    rule: VotingRule,
    suspects,
    *,
    budget: int = DEFAULT_REPLAY_BUDGET,
    force: bool = False,
) -> DetectionVerdict:
    query = DetectionQuery(instance, rule, tuple(suspects))
    if instance.m == 1:
        return no_verdict("cpm")
    if rule.kind == SCORING:
        return cpm_scoring(query, budget=budget, force=force)
    if rule.kind == MAXIMIN and len(query.suspects) == 1:
        return cpm_maximin_single(query)
    if rule.kind == BUCKLIN:
        return cpm_bucklin(query)
    return oracle_cpm(instance, rule, query.suspects, budget=budget, force=force)


def _plurality_skip(instance: ElectionInstance, y: int):
    """Subsets containing a voter whose reported top is y never help plurality."""

    def skip(subset) -> bool:
        return any(instance.ballots[i].ranking[0] == y for i in subset)

    return skip


def decide_cpmsw(
    instance: ElectionInstance,
    rule: VotingRule,
    y: int,
    k: int,
    *,
    budget: int = DEFAULT_REPLAY_BUDGET,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
    force: bool = False,
) -> DetectionVerdict:
    if rule.kind == SCORING and rule.vector.is_convex():
        query = DetectionQuery(instance, rule, (), actual_winner=y, bound=k)
        return cpmsw_scoring_greedy(query)
    if rule.kind == SCORING and rule.vector.is_plurality_like():
        return search_coalitions(
            instance,
            rule,
            k,
            y,
            decide=lambda subset: cpmw_plurality_coalition(
                DetectionQuery(instance, rule, subset, actual_winner=y)
            ),
            subset_budget=subset_budget,
            force=force,
            skip=_plurality_skip(instance, y),
        )
    return search_coalitions(
        instance,
        rule,
        k,
        y,
        decide=lambda subset: decide_cpmw(
            instance, rule, subset, y, budget=budget, force=force
        ),
        subset_budget=subset_budget,
        force=force,
    )


def decide_cpms(
    instance: ElectionInstance,
    rule: VotingRule,
    k: int,
    *,
    budget: int = DEFAULT_REPLAY_BUDGET,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
    force: bool = False,
) -> DetectionVerdict:
    if instance.m == 1:
        return no_verdict("cpms")
    x = winner(instance, rule)
    last: DetectionVerdict | None = None
    for y in instance.tiebreak.ranking:
        if y == x:
            continue
        verdict = decide_cpmsw(
            instance, rule, y, k,
            budget=budget, subset_budget=subset_budget, force=force,
        )
        if verdict.answer:
            return verdict
        last = verdict
    return last if last is not None else no_verdict("cpms")
