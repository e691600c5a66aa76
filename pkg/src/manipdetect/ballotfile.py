"""Ballot-file parsing/rendering and the machine-readable report.

File format (one statement per line, `#` starts a comment):

    candidates: a,b,c        required, first statement
    tiebreak: a,b,c          optional, defaults to the candidates order
    2x b>a>c                 a ballot with a repeat count
    a>c>b                    a single ballot

Voter indices are 0-based positions in the expanded ballot list.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass
from typing import Sequence

from .core import ElectionInstance, Preference
from .errors import ParseError

_COUNT_RE = re.compile(r"^(\d+)x\s+(.*)$")
_NAME_RE = re.compile(r"^[^\s,>#]+$")


def _split_names(raw: str, line_no: int) -> list[str]:
    names = [part.strip() for part in raw.split(",")]
    for name in names:
        if not name:
            raise ParseError("empty candidate name", line_no)
        if not _NAME_RE.match(name):
            raise ParseError(f"invalid candidate name {name!r}", line_no)
    return names


def _parse_ballot(raw: str, ids: dict[str, int], line_no: int) -> tuple[int, ...]:
    parts = [part.strip() for part in raw.split(">")]
    ranking = []
    seen = set()
    for name in parts:
        if not name:
            raise ParseError("empty entry in ballot", line_no)
        if name not in ids:
            raise ParseError(f"unknown candidate {name!r}", line_no)
        c = ids[name]
        if c in seen:
            raise ParseError(f"duplicate candidate {name!r} in ballot", line_no)
        seen.add(c)
        ranking.append(c)
    if len(ranking) != len(ids):
        missing = sorted(set(ids) - {name for name in parts})
        raise ParseError(f"ballot is missing candidates: {', '.join(missing)}", line_no)
    return tuple(ranking)


def parse_election(text: str) -> ElectionInstance:
    """Parse an election file; raises ParseError with the offending line number."""
    names: list[str] | None = None
    ids: dict[str, int] = {}
    tiebreak: tuple[int, ...] | None = None
    ballots: list[tuple[int, ...]] = []
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("candidates:"):
            if names is not None:
                raise ParseError("duplicate candidates line", line_no)
            names = _split_names(line[len("candidates:"):], line_no)
            if len(set(names)) != len(names):
                raise ParseError("duplicate candidate names", line_no)
            ids = {name: i for i, name in enumerate(names)}
            continue
        if names is None:
            raise ParseError("candidates line must come first", line_no)
        if line.startswith("tiebreak:"):
            if tiebreak is not None:
                raise ParseError("duplicate tiebreak line", line_no)
            tb_names = _split_names(line[len("tiebreak:"):], line_no)
            if sorted(tb_names) != sorted(names):
                raise ParseError("tiebreak must list every candidate exactly once", line_no)
            tiebreak = tuple(ids[name] for name in tb_names)
            continue
        count = 1
        ballot_raw = line
        match = _COUNT_RE.match(line)
        if match:
            count = int(match.group(1))
            if count < 1:
                raise ParseError("ballot count must be >= 1", line_no)
            ballot_raw = match.group(2)
        ballots.extend([_parse_ballot(ballot_raw, ids, line_no)] * count)
    if names is None:
        raise ParseError("missing candidates line", max(1, text.count("\n") + 1))
    if not ballots:
        raise ParseError("election has no ballots", max(1, text.count("\n") + 1))
    return ElectionInstance(names, ballots, tiebreak=tiebreak)


def ballot_string(names: Sequence[str], pref: Preference) -> str:
    return ">".join(names[c] for c in pref.ranking)


def render_election(instance: ElectionInstance) -> str:
    """Render an instance so that parse(render(instance)) == instance."""
    lines = ["candidates: " + ",".join(instance.names)]
    lines.append("tiebreak: " + ",".join(instance.names[c] for c in instance.tiebreak))
    lines.extend(ballot_string(instance.names, b) for b in instance.ballots)
    return "\n".join(lines) + "\n"


@dataclass
class Report:
    """Structured outcome of one CLI command; round-trips through JSON."""

    problem: str
    rule: str
    verdict: str  # "YES" | "NO" | "-"
    winner: str | None = None
    current_winner: str | None = None
    witness_actual_winner: str | None = None
    witness: list[dict] | None = None  # [{"voter": int, "ballot": "a>b>c"}, ...]
    coalition: list[int] | None = None
    method: str = ""
    exhaustive: bool = False
    budget: str = "ok"  # "ok" | "forced" | "exceeded"
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def lines(self) -> list[str]:
        out = [f"problem: {self.problem}", f"rule: {self.rule}"]
        if self.winner is not None:
            out.append(f"winner: {self.winner}")
        else:
            out.append(f"verdict: {self.verdict}")
        if self.current_winner is not None:
            out.append(f"current winner: {self.current_winner}")
        if self.witness_actual_winner is not None:
            out.append(f"actual winner: {self.witness_actual_winner}")
        if self.coalition is not None:
            out.append("coalition: " + ",".join(str(i) for i in self.coalition))
        if self.witness:
            for entry in self.witness:
                out.append(f"witness[{entry['voter']}]: {entry['ballot']}")
        out.append(f"method: {self.method}" + (" (exhaustive)" if self.exhaustive else ""))
        out.append(f"elapsed: {self.elapsed_ms:.1f} ms")
        return out
