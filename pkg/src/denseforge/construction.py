"""Gadget functions, block schedule, and the two-sided weave.

The gadget pair (g1(n), g2(n)) is computed by a chain of 2^(2n) steps, one
per pair of length-n words taken in pair-shortlex order: each step extends
the running pair minimally (total added length, then pair-shortlex) until
appending it to the step's pair meets every configured pair requirement up
to index n. Most steps are no-ops; they are skipped in bulk by locating the
next failing pair exactly, so levels far beyond exhaustive reach stay cheap.

The weave alternates, per stage, between meeting a single-word requirement
on one side and copying gadget blocks on the other, with 0-padding so both
prefixes always end on a block boundary.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .limits import WidthBudget
from .requirements import (
    PairContains,
    PairRequirement,
    SingleRequirement,
    meets_pair,
    meets_single,
)
from .words import words_of_length

PLAIN_SCAN_LIMIT = 1 << 16  # direct step scans only below this many pairs


class ScheduleExhausted(IndexError):
    """A block index was requested beyond a fixed, non-extendable schedule."""


def _bits(index: int, n: int) -> str:
    return format(index, f"0{n}b") if n else ""


# ---------------------------------------------------------------------------
# Substring automaton helpers (exact bulk skipping of no-op gadget steps)
# ---------------------------------------------------------------------------


def _kmp_delta(pattern: str) -> List[List[int]]:
    """Transition table of the substring automaton; state len(pattern) is the
    absorbing match state."""
    m = len(pattern)
    delta = [[0, 0] for _ in range(m + 1)]
    fail = [0] * m
    for i in range(1, m):
        s = fail[i - 1]
        while s and pattern[i] != pattern[s]:
            s = fail[s - 1]
        fail[i] = s + 1 if pattern[i] == pattern[s] else 0
    for s in range(m):
        for b in (0, 1):
            c = str(b)
            if c == pattern[s]:
                delta[s][b] = s + 1
            elif s == 0:
                delta[s][b] = 0
            else:
                delta[s][b] = delta[fail[s - 1]][b]
    delta[m] = [m, m]
    return delta


def min_word_avoiding(pattern: str, suffix: str, n: int, start: int) -> Optional[int]:
    """Least index in [start, 2^n) whose n-bit word g satisfies
    ``pattern not in g + suffix``, or None if no such word exists."""
    if not pattern:
        return None  # the empty pattern occurs everywhere
    if start >= (1 << n):
        return None
    if n == 0:
        return 0 if pattern not in suffix else None
    m = len(pattern)
    delta = _kmp_delta(pattern)

    safe = [True] * (m + 1)
    safe[m] = False
    for s in range(m):
        st = s
        ok = True
        for c in suffix:
            st = delta[st][int(c)]
            if st == m:
                ok = False
                break
        safe[s] = ok

    # feasible[r][s]: an accept-free length-r continuation from s ends safe
    feasible = [safe[:]]
    for _ in range(n):
        prev = feasible[-1]
        row = [
            any(delta[s][b] != m and prev[delta[s][b]] for b in (0, 1))
            for s in range(m + 1)
        ]
        row[m] = False
        feasible.append(row)

    word = _bits(start, n)
    states = [0]
    for c in word:
        ns = delta[states[-1]][int(c)]
        if ns == m:
            break
        states.append(ns)
    if len(states) == n + 1 and safe[states[-1]]:
        return start
    # branch upward from the longest valid tight prefix
    for i in range(min(len(states), n) - 1, -1, -1):
        if word[i] == "1":
            continue
        ns = delta[states[i]][1]
        r = n - i - 1
        if ns == m or not feasible[r][ns]:
            continue
        out = list(word[:i]) + ["1"]
        st = ns
        for rr in range(r, 0, -1):
            for b in (0, 1):
                s2 = delta[st][b]
                if s2 != m and feasible[rr - 1][s2]:
                    out.append(str(b))
                    st = s2
                    break
        return int("".join(out), 2)
    return None


# ---------------------------------------------------------------------------
# Gadget computation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GadgetStep:
    """One executed (extending) step of a gadget chain."""

    index: int  # 0-based position in the 2^(2n) step sequence
    gamma1: str
    gamma2: str
    sigma: str  # chain value after the step
    tau: str


@dataclass(frozen=True)
class GadgetLog:
    """Compressed chain record: only extending steps are stored; all other
    steps leave the chain unchanged."""

    level: int
    total_steps: int
    executed: Tuple[GadgetStep, ...]

    def chain(self) -> List[Tuple[str, str]]:
        """Materialize the full (sigma_i, tau_i) chain, i = 0 .. total."""
        out = [("", "")]
        by_index = {s.index: s for s in self.executed}
        for i in range(self.total_steps):
            if i in by_index:
                out.append((by_index[i].sigma, by_index[i].tau))
            else:
                out.append(out[-1])
        return out


def _universal(req: PairRequirement, n: int, sigma: str, tau: str) -> bool:
    """True only if (g1 + sigma, g2 + tau) meets *req* for every pair of
    length-n words g1, g2 (a sufficient, never-wrong test)."""
    if isinstance(req, PairContains):
        return req.left in sigma and req.right in tau
    pairs = getattr(req, "pairs", None)
    if pairs is not None and req.dense:
        max_left = max((len(a) for a, _ in pairs), default=0)
        return n + len(sigma) > max_left
    return False


def _next_failing_step(
    n: int, reqs: Sequence[PairRequirement], sigma: str, tau: str, start: int
) -> Optional[int]:
    """Least step index >= start whose pair fails to meet some requirement."""
    total = 1 << (2 * n)
    if start >= total:
        return None
    pending = [r for r in reqs if not _universal(r, n, sigma, tau)]
    if not pending:
        return None
    if all(isinstance(r, PairContains) for r in pending) and total > PLAIN_SCAN_LIMIT:
        return _next_failing_factored(n, pending, sigma, tau, start)
    budget = WidthBudget(f"gadget step scan at level {n}")
    for idx in range(start, total):
        budget.spend()
        g1, g2 = _bits(idx >> n, n), _bits(idx & ((1 << n) - 1), n)
        if any(not r.meets(g1 + sigma, g2 + tau) for r in pending):
            return idx
    return None


def _next_failing_factored(
    n: int, reqs: Sequence[PairContains], sigma: str, tau: str, start: int
) -> Optional[int]:
    size = 1 << n
    a, b = divmod(start, size)

    def left_fails(word: str) -> bool:
        return any(r.left and r.left not in word + sigma for r in reqs)

    def min_right_fail(from_idx: int) -> Optional[int]:
        hits = [
            m
            for r in reqs
            if (m := min_word_avoiding(r.right, tau, n, from_idx)) is not None
        ]
        return min(hits) if hits else None

    def min_left_fail(from_idx: int) -> Optional[int]:
        hits = [
            m
            for r in reqs
            if (m := min_word_avoiding(r.left, sigma, n, from_idx)) is not None
        ]
        return min(hits) if hits else None

    if left_fails(_bits(a, n)):
        return start
    b2 = min_right_fail(b)
    if b2 is not None:
        return a * size + b2
    # row a is clean; find the first failing pair in later rows
    if a + 1 >= size:
        return None
    a_left = min_left_fail(a + 1)
    b0 = min_right_fail(0)
    if b0 is None:
        return None if a_left is None else a_left * size
    if a_left == a + 1:
        return a_left * size
    return (a + 1) * size + b0


def _chained_witness_bound(
    g1: str, g2: str, sigma: str, tau: str, reqs: Sequence[PairRequirement]
) -> int:
    """Upper bound on the total added length of the minimal meeting
    extension, obtained by chaining requirement witnesses."""
    u, v = g1 + sigma, g2 + tau
    uu, vv = u, v
    for r in reqs:
        if not r.meets(uu, vv):
            uu, vv = r.witness(uu, vv)
    return (len(uu) - len(u)) + (len(vv) - len(v))


def _min_meeting_extension(
    g1: str, g2: str, sigma: str, tau: str, reqs: Sequence[PairRequirement]
) -> Tuple[str, str]:
    """Minimal (total added length, then pair-shortlex) extension of
    (sigma, tau) such that (g1+sigma', g2+tau') meets every requirement."""
    bound = _chained_witness_bound(g1, g2, sigma, tau, reqs)
    budget = WidthBudget("gadget extension search")
    for total in range(bound + 1):
        for l1 in range(total + 1):
            l2 = total - l1
            for s1 in words_of_length(l1):
                for s2 in words_of_length(l2):
                    budget.spend()
                    if all(r.meets(g1 + sigma + s1, g2 + tau + s2) for r in reqs):
                        return sigma + s1, tau + s2
    raise AssertionError("chained witness bound missed the search")  # pragma: no cover


def _compute_level(n: int, reqs: Sequence[PairRequirement]) -> Tuple[str, str, GadgetLog]:
    active = list(reqs[: n + 1])
    sigma = tau = ""
    total = 1 << (2 * n)
    executed: List[GadgetStep] = []
    i = 0
    while i < total:
        nxt = _next_failing_step(n, active, sigma, tau, i)
        if nxt is None:
            break
        i = nxt
        g1w = _bits(i >> n, n)
        g2w = _bits(i & ((1 << n) - 1), n)
        sigma, tau = _min_meeting_extension(g1w, g2w, sigma, tau, active)
        executed.append(GadgetStep(i, g1w, g2w, sigma, tau))
        i += 1
    return sigma, tau, GadgetLog(n, total, tuple(executed))


class GadgetTable:
    """Memoized gadget values for one ordered list of pair requirements.

    g1 is padded to "0" whenever the raw chain value is empty, so block
    lengths are always positive; g2 is returned raw.
    """

    def __init__(self, pair_reqs: Sequence[PairRequirement]):
        self.pair_reqs = list(pair_reqs)
        self.values: Dict[int, Tuple[str, str]] = {}
        self.raw_g1: Dict[int, str] = {}
        self.step_log: Dict[int, GadgetLog] = {}

    def _ensure(self, n: int) -> None:
        if n in self.values:
            return
        sigma, tau, log = _compute_level(n, self.pair_reqs)
        self.raw_g1[n] = sigma
        self.values[n] = (sigma if sigma else "0", tau)
        self.step_log[n] = log

    def g1(self, n: int) -> str:
        self._ensure(n)
        return self.values[n][0]

    def g2(self, n: int) -> str:
        self._ensure(n)
        return self.values[n][1]


def compute_gadget(n: int, pair_reqs: Sequence[PairRequirement]) -> Tuple[str, str]:
    """The gadget pair at level *n* (g1 padded), without table reuse."""
    table = GadgetTable(pair_reqs)
    return table.g1(n), table.g2(n)


# ---------------------------------------------------------------------------
# Block schedule
# ---------------------------------------------------------------------------


class BlockSchedule:
    """The strictly increasing cut points k_0 = 0 < k_1 < k_2 < ...

    Backed by a gadget table, the sequence extends on demand via
    k_{n+1} = k_n + |g1(k_n)|; without one it is fixed and finite.
    """

    def __init__(self, gadget=None, ks: Sequence[int] = (0,)):
        self.ks: List[int] = list(ks)
        if self.ks[0] != 0:
            raise ValueError("schedule must start at k_0 = 0")
        self._gadget = gadget

    def k(self, m: int) -> int:
        while m >= len(self.ks):
            if self._gadget is None:
                raise ScheduleExhausted(f"block index {m} beyond fixed schedule")
            kn = self.ks[-1]
            self.ks.append(kn + len(self._gadget.g1(kn)))
        return self.ks[m]

    def least_block_reaching(self, length: int, above: int) -> int:
        """Least m > above with k(m) >= length."""
        m = above + 1
        while self.k(m) < length:
            m += 1
        return m


def block_schedule(count: int, gadget: GadgetTable) -> BlockSchedule:
    """Schedule with k_0 .. k_count computed eagerly."""
    sched = BlockSchedule(gadget)
    sched.k(count)
    return sched


# ---------------------------------------------------------------------------
# Weave
# ---------------------------------------------------------------------------

TRACE_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TraceEvent:
    stage: int
    half: str  # "first" | "second"
    role: str  # "meet" | "pad" | "copy"
    input: str
    output: str
    requirement: str
    block_range: Tuple[int, int]  # (m_from, m_to) block indices

    def to_json(self) -> dict:
        return {
            "schema_version": TRACE_SCHEMA_VERSION,
            "type": "trace_event",
            "stage": self.stage,
            "half": self.half,
            "role": self.role,
            "input": self.input,
            "output": self.output,
            "requirement": self.requirement,
            "block_range": list(self.block_range),
        }


@dataclass(frozen=True)
class WeaveState:
    x_prefix: str = ""
    y_prefix: str = ""
    stage: int = 0
    block_index: int = 0
    active_side: str = "x"  # side that meets first in the next stage
    trace: Tuple[TraceEvent, ...] = ()


def _min_meeting_extension_single(word: str, req: SingleRequirement) -> str:
    """Shortlex-minimal extension of *word* meeting *req*."""
    if meets_single(word, req):
        return word
    bound = len(req.witness(word)) - len(word)
    budget = WidthBudget(f"meet search for {req.describe()}")
    for added in range(1, bound + 1):
        for suffix in words_of_length(added):
            budget.spend()
            if meets_single(word + suffix, req):
                return word + suffix
    raise AssertionError("witness bound missed the search")  # pragma: no cover


def weave_stage(
    state: WeaveState,
    req: SingleRequirement,
    gadget: GadgetTable,
    schedule: BlockSchedule,
    label: Optional[str] = None,
) -> WeaveState:
    """One full stage: the active side meets *req* (then is 0-padded to a
    strictly later block boundary) while the other copies gadget blocks;
    then the roles reverse against the same requirement."""
    label = label or req.describe()
    stage = state.stage + 1
    events = list(state.trace)
    sides = {"x": state.x_prefix, "y": state.y_prefix}
    first = state.active_side
    second = "y" if first == "x" else "x"
    m = state.block_index

    for half, actor in (("first", first), ("second", second)):
        passive = "y" if actor == "x" else "x"
        word = sides[actor]
        met = _min_meeting_extension_single(word, req)
        m_to = schedule.least_block_reaching(len(met), m)
        events.append(TraceEvent(stage, half, "meet", word, met, label, (m, m_to)))
        padded = met + "0" * (schedule.k(m_to) - len(met))
        if padded != met:
            events.append(TraceEvent(stage, half, "pad", met, padded, label, (m, m_to)))
        copied = sides[passive] + "".join(
            gadget.g1(schedule.k(i)) for i in range(m, m_to)
        )
        events.append(
            TraceEvent(stage, half, "copy", sides[passive], copied, label, (m, m_to))
        )
        sides[actor] = padded
        sides[passive] = copied
        m = m_to

    return WeaveState(
        x_prefix=sides["x"],
        y_prefix=sides["y"],
        stage=stage,
        block_index=m,
        active_side=state.active_side,
        trace=tuple(events),
    )


@dataclass(frozen=True)
class BuildResult:
    x_prefix: str
    y_prefix: str
    schedule: BlockSchedule = field(compare=False)
    gadget: GadgetTable = field(compare=False)
    trace: Tuple[TraceEvent, ...] = ()


def build_xy(
    stages: int,
    single_reqs: Sequence[SingleRequirement],
    pair_reqs: Sequence[PairRequirement],
    gadget: Optional[GadgetTable] = None,
    schedule: Optional[BlockSchedule] = None,
) -> BuildResult:
    """Fold the weave over the first *stages* single requirements."""
    if stages > len(single_reqs):
        raise ValueError(
            f"stages ({stages}) exceeds the number of single requirements "
            f"({len(single_reqs)})"
        )
    if gadget is None:
        gadget = GadgetTable(pair_reqs)
    if schedule is None:
        schedule = BlockSchedule(gadget)
    state = WeaveState()
    for i in range(stages):
        state = weave_stage(state, single_reqs[i], gadget, schedule, label=f"E{i + 1}")
    return BuildResult(state.x_prefix, state.y_prefix, schedule, gadget, state.trace)


def replay_trace(events: Sequence[TraceEvent]) -> Tuple[str, str]:
    """Reconstruct the final (x, y) prefixes from a trace.

    The first half of every stage acts on x; event outputs are the new
    prefix of the side they touch.
    """
    x = y = ""
    for ev in events:
        active_is_x = ev.half == "first"
        touches_x = active_is_x != (ev.role == "copy")
        if touches_x:
            x = ev.output
        else:
            y = ev.output
    return x, y
