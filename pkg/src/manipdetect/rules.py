"""Winner determination for positional scoring rules, maximin, Bucklin, and STV.

Every rule is a co-winner correspondence composed with lexicographic
tie-breaking: the reported winner is the tie-break-earliest member of the
co-winner set.  All arithmetic is exact (ints or fractions); no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import ElectionInstance, Preference, margin_matrix
from .errors import ConfigError, DegenerateRosterError

Score = int | Fraction

SCORING = "scoring"
MAXIMIN = "maximin"
BUCKLIN = "bucklin"
STV = "stv"


@dataclass(frozen=True)
class ScoringVector:
    """Non-increasing position scores with a strict top-to-bottom drop."""

    alphas: tuple[Score, ...]

    def __init__(self, alphas: Sequence[Score]):
        alphas = tuple(alphas)
        if len(alphas) < 1:
            raise ConfigError("scoring vector must be non-empty")
        for i in range(len(alphas) - 1):
            if alphas[i] < alphas[i + 1]:
                raise ConfigError("scoring vector must be non-increasing")
        if alphas[0] <= alphas[-1]:
            raise ConfigError("scoring vector must satisfy alpha_1 > alpha_m")
        object.__setattr__(self, "alphas", alphas)

    def __len__(self) -> int:
        return len(self.alphas)

    @classmethod
    def borda(cls, m: int) -> "ScoringVector":
        return cls(tuple(range(m - 1, -1, -1)))

    @classmethod
    def approval(cls, k: int, m: int) -> "ScoringVector":
        if not 1 <= k <= m - 1:
            raise ConfigError(f"k-approval needs 1 <= k <= m-1, got k={k}, m={m}")
        return cls((1,) * k + (0,) * (m - k))

    @classmethod
    def plurality(cls, m: int) -> "ScoringVector":
        return cls.approval(1, m)

    @classmethod
    def veto(cls, m: int) -> "ScoringVector":
        return cls.approval(m - 1, m)

    def is_convex(self) -> bool:
        """True when the top gap is the smallest gap (alpha_1 - alpha_2 <= alpha_i - alpha_i+1)."""
        a = self.alphas
        top = a[0] - a[1]
        return all(top <= a[i] - a[i + 1] for i in range(len(a) - 1))

    def is_plurality_like(self) -> bool:
        """True when only the top position scores (all lower entries equal)."""
        a = self.alphas
        return len(a) >= 2 and all(v == a[-1] for v in a[1:])


@dataclass(frozen=True)
class VotingRule:
    """Tagged rule descriptor: scoring(vector), maximin, bucklin, or stv."""

    kind: str
    vector: ScoringVector | None = None

    def __post_init__(self):
        if self.kind not in (SCORING, MAXIMIN, BUCKLIN, STV):
            raise ConfigError(f"unknown rule kind {self.kind!r}")
        if self.kind == SCORING and self.vector is None:
            raise ConfigError("scoring rule needs a vector")
        if self.kind != SCORING and self.vector is not None:
            raise ConfigError(f"{self.kind} rule takes no vector")

    @classmethod
    def scoring(cls, vector: ScoringVector) -> "VotingRule":
        return cls(SCORING, vector)

    @classmethod
    def maximin(cls) -> "VotingRule":
        return cls(MAXIMIN)

    @classmethod
    def bucklin(cls) -> "VotingRule":
        return cls(BUCKLIN)

    @classmethod
    def stv(cls) -> "VotingRule":
        return cls(STV)


@dataclass(frozen=True)
class ScoreTable:
    """Per-candidate scores; for Bucklin, scores are the (level) values."""

    scores: tuple[Score, ...]
    levels: tuple[int, ...] | None = None


# ---------------------------------------------------------------------------
# Raw-ballot internals.  These skip instance re-validation so that search
# loops can replay candidate ballots cheaply.
# ---------------------------------------------------------------------------


def positional_scores(m: int, ballots: Iterable[Preference], vector: ScoringVector) -> list[Score]:
    if len(vector) != m:
        raise ConfigError(f"scoring vector length {len(vector)} does not match roster size {m}")
    alphas = vector.alphas
    scores: list[Score] = [0] * m
    for ballot in ballots:
        for p, c in enumerate(ballot.ranking):
            scores[c] += alphas[p]
    return scores


def maximin_scores_from_margins(margins: Sequence[Sequence[int]]) -> list[int]:
    m = len(margins)
    if m < 2:
        raise DegenerateRosterError("maximin needs at least two candidates")
    return [min(margins[c][z] for z in range(m) if z != c) for c in range(m)]


def maximin_scores(m: int, ballots: Iterable[Preference]) -> list[int]:
    return maximin_scores_from_margins(margin_matrix(m, ballots))


def topk_counts(m: int, ballots: Iterable[Preference]) -> list[list[int]]:
    """counts[c][l] = number of ballots ranking c within the top l (l in 0..m)."""
    first = [[0] * (m + 1) for _ in range(m)]
    for ballot in ballots:
        for p, c in enumerate(ballot.ranking):
            first[c][p + 1] += 1
    for c in range(m):
        row = first[c]
        for l in range(1, m + 1):
            row[l] += row[l - 1]
    return first


def bucklin_levels(m: int, n: int, ballots: Iterable[Preference]) -> list[int]:
    """Least level l at which each candidate is in the top l of at least half the voters."""
    counts = topk_counts(m, ballots)
    levels = []
    for c in range(m):
        row = counts[c]
        for l in range(1, m + 1):
            if 2 * row[l] >= n:
                levels.append(l)
                break
    return levels


def stv_order(m: int, ballots: Sequence[Preference], tb_rank: Sequence[int]) -> list[int]:
    """Elimination order, winner last.

    Each round drops the candidate with the least count of ballots currently
    topping it; among tied candidates the one latest in the tie-break order is
    dropped, so tie-break-favored candidates stay alive.
    """
    alive = [True] * m
    pointers = [0] * len(ballots)
    order: list[int] = []
    for _ in range(m - 1):
        counts = [0] * m
        for bi, ballot in enumerate(ballots):
            r = ballot.ranking
            p = pointers[bi]
            while not alive[r[p]]:
                p += 1
            pointers[bi] = p
            counts[r[p]] += 1
        least = min(counts[c] for c in range(m) if alive[c])
        drop = max(
            (c for c in range(m) if alive[c] and counts[c] == least),
            key=lambda c: tb_rank[c],
        )
        alive[drop] = False
        order.append(drop)
    order.append(alive.index(True))
    return order


def _pick_first(candidates: Iterable[int], tb_rank: Sequence[int]) -> int:
    return min(candidates, key=lambda c: tb_rank[c])


def co_winners_from_ballots(
    m: int, ballots: Sequence[Preference], tb_rank: Sequence[int], rule: VotingRule
) -> list[int]:
    if rule.kind == SCORING:
        scores = positional_scores(m, ballots, rule.vector)
        best = max(scores)
        return [c for c in range(m) if scores[c] == best]
    if rule.kind == MAXIMIN:
        scores = maximin_scores(m, ballots)
        best = max(scores)
        return [c for c in range(m) if scores[c] == best]
    if rule.kind == BUCKLIN:
        levels = bucklin_levels(m, len(ballots), ballots)
        best = min(levels)
        return [c for c in range(m) if levels[c] == best]
    return [stv_order(m, ballots, tb_rank)[-1]]


def winner_from_ballots(
    m: int, ballots: Sequence[Preference], tiebreak: Preference, rule: VotingRule
) -> int:
    tb_rank = tiebreak.positions()
    return _pick_first(co_winners_from_ballots(m, ballots, tb_rank, rule), tb_rank)


# ---------------------------------------------------------------------------
# Instance-level operations.
# ---------------------------------------------------------------------------


def evaluate_scores(instance: ElectionInstance, vector: ScoringVector) -> ScoreTable:
    """Positional score of every candidate under the given vector."""
    return ScoreTable(tuple(positional_scores(instance.m, instance.ballots, vector)))


def maximin_score(instance: ElectionInstance, candidate: int) -> int:
    """Worst pairwise margin of `candidate` against any opponent."""
    return maximin_scores(instance.m, instance.ballots)[candidate]


def bucklin_score(instance: ElectionInstance, candidate: int) -> int:
    """Bucklin level of `candidate` (always in 1..m)."""
    return bucklin_levels(instance.m, instance.n, instance.ballots)[candidate]


def score_table(instance: ElectionInstance, rule: VotingRule) -> ScoreTable:
    if rule.kind == SCORING:
        return evaluate_scores(instance, rule.vector)
    if rule.kind == MAXIMIN:
        return ScoreTable(tuple(maximin_scores(instance.m, instance.ballots)))
    if rule.kind == BUCKLIN:
        levels = tuple(bucklin_levels(instance.m, instance.n, instance.ballots))
        return ScoreTable(levels, levels)
    raise ConfigError("STV has no score table; use stv_elimination_order")


def stv_elimination_order(instance: ElectionInstance) -> tuple[int, ...]:
    """m-1 eliminated candidates in order, then the surviving winner."""
    return tuple(stv_order(instance.m, instance.ballots, instance.tiebreak.positions()))


def co_winners(instance: ElectionInstance, rule: VotingRule) -> tuple[int, ...]:
    """The rule's co-winner set before tie-breaking (singleton for STV)."""
    return tuple(
        co_winners_from_ballots(instance.m, instance.ballots, instance.tiebreak.positions(), rule)
    )


def winner(instance: ElectionInstance, rule: VotingRule) -> int:
    """The unique winner: tie-break-earliest member of the co-winner set."""
    return winner_from_ballots(instance.m, instance.ballots, instance.tiebreak, rule)
