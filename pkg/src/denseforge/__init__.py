"""denseforge: a deterministic laboratory for dense-set combinatorics on
binary words — gadget pairs, block schedules, the two-sided weave, and
exhaustive dichotomy verification."""

from .construction import (
    BlockSchedule,
    BuildResult,
    GadgetTable,
    TraceEvent,
    WeaveState,
    block_schedule,
    build_xy,
    compute_gadget,
    replay_trace,
    weave_stage,
)
from .requirements import (
    Contains,
    DensityFailure,
    DensityResult,
    ExactSet,
    FBlock,
    FiniteMeetOrAvoid,
    PairContains,
    PairExactSet,
    PairMeetOrAvoid,
    avoids_single,
    check_density,
    derive_meet_or_avoid,
    meets_pair,
    meets_single,
    witness_pair,
    witness_single,
)
from .verify import (
    DichotomyVerdict,
    enumerate_meeting_z,
    f_requirement,
    report,
    verify_dichotomy,
)
from .words import extend, interleave, is_prefix, lex_cmp, word_slice

__version__ = "0.1.0"
