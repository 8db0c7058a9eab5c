"""Block-suffix dense sets and the dichotomy sweep.

For each level n, the block-suffix set contains every word that ends, at
some block boundary k_m > n, with the suffix g2(k_m). Any word meeting it
pins down a block at which the woven x or y carries g1(k_m), which is what
forces the pair to meet every pair requirement up to level n.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from .construction import BlockSchedule, GadgetTable, ScheduleExhausted
from .requirements import FBlock, PairRequirement, meets_pair, meets_single
from .words import iter_words

OUTCOMES = ("x_side", "y_side", "both", "violation")


class DichotomyPreconditionError(ValueError):
    """The inputs to a dichotomy check violate its hypotheses."""


@dataclass(frozen=True)
class DichotomyVerdict:
    level: int
    z: str
    outcome: str  # one of OUTCOMES
    witness_block: int  # least m certifying z's block-suffix membership
    block_side: str  # side whose block [k_m, k_{m+1}) equals g1(k_m)
    evidence_x: Tuple[bool, ...]  # meets evidence for (x, z) per index j
    evidence_y: Tuple[bool, ...]

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "type": "verdict",
            "level": self.level,
            "z": self.z,
            "outcome": self.outcome,
            "witness_block": self.witness_block,
            "block_side": self.block_side,
            "evidence_x": list(self.evidence_x),
            "evidence_y": list(self.evidence_y),
        }


def f_requirement(level: int, schedule: BlockSchedule, gadget: GadgetTable) -> FBlock:
    """The dense block-suffix requirement at *level*; fails with a range
    error if the schedule cannot reach past the level."""
    m = 0
    try:
        while schedule.k(m) <= level:
            m += 1
    except ScheduleExhausted:
        raise ScheduleExhausted(
            f"schedule has no cut point above level {level}"
        ) from None
    return FBlock(level=level, schedule=schedule, gadget=gadget)


def enumerate_meeting_z(level: int, max_len: int, req: FBlock) -> Iterator[str]:
    """All words of length <= max_len meeting *req*, in shortlex order."""
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")
    for w in iter_words(max_len):
        if meets_single(w, req):
            yield w


def _witness_block(z: str, level: int, schedule: BlockSchedule, gadget: GadgetTable):
    """Least m with k_m > level and a matching g2-suffix prefix of z."""
    m = 0
    while True:
        km = schedule.k(m)
        if km > len(z):
            return None
        if km > level:
            g2 = gadget.g2(km)
            if km + len(g2) <= len(z) and z[km : km + len(g2)] == g2:
                return m
        m += 1


def verify_dichotomy(
    x: str,
    y: str,
    z: str,
    level: int,
    pair_reqs: Sequence[PairRequirement],
    schedule: BlockSchedule,
    gadget: GadgetTable,
) -> DichotomyVerdict:
    """Classify whether (x, z), (y, z), both, or neither meet every pair
    requirement up to *level*."""
    m = _witness_block(z, level, schedule, gadget)
    if m is None:
        raise DichotomyPreconditionError(
            f"z={z!r} does not meet the block-suffix set at level {level}"
        )
    cover = schedule.k(m + 1)
    if len(x) < cover or len(y) < cover:
        raise DichotomyPreconditionError(
            f"x/y must cover block {m} (length >= {cover}); "
            f"got {len(x)} and {len(y)}"
        )
    active = pair_reqs[: level + 1]
    evidence_x = tuple(meets_pair(x, z, r) for r in active)
    evidence_y = tuple(meets_pair(y, z, r) for r in active)
    x_ok, y_ok = all(evidence_x), all(evidence_y)
    if x_ok and y_ok:
        outcome = "both"
    elif x_ok:
        outcome = "x_side"
    elif y_ok:
        outcome = "y_side"
    else:
        outcome = "violation"
    km, km1 = schedule.k(m), schedule.k(m + 1)
    g1 = gadget.g1(km)
    if x[km:km1] == g1:
        block_side = "x"
    elif y[km:km1] == g1:
        block_side = "y"
    else:
        block_side = "neither"
    return DichotomyVerdict(level, z, outcome, m, block_side, evidence_x, evidence_y)


@dataclass(frozen=True)
class ReportSummary:
    checked: int
    counts: Tuple[Tuple[str, int], ...]  # (outcome, count) in OUTCOMES order
    violations: Tuple[DichotomyVerdict, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def lines(self) -> List[str]:
        out = [f"checked: {self.checked}"]
        out.extend(f"{name}: {count}" for name, count in self.counts)
        if self.violations:
            for v in self.violations:
                out.append(f"violation: level={v.level} z={v.z}")
            out.append("result: FAIL")
        else:
            out.append("violations: none")
            out.append("result: PASS")
        return out


def report(verdicts: Sequence[DichotomyVerdict]) -> ReportSummary:
    """Aggregate verdicts; the check passes iff no violation occurred."""
    tally: Dict[str, int] = {name: 0 for name in OUTCOMES}
    violations = []
    for v in verdicts:
        tally[v.outcome] += 1
        if v.outcome == "violation":
            violations.append(v)
    return ReportSummary(
        checked=len(verdicts),
        counts=tuple((name, tally[name]) for name in OUTCOMES),
        violations=tuple(violations),
    )
