import pytest

from denseforge.construction import BlockSchedule, GadgetTable, build_xy
from denseforge.requirements import (
    Contains,
    PairContains,
    check_density,
    meets_single,
    witness_single,
)
from denseforge.verify import (
    DichotomyPreconditionError,
    DichotomyVerdict,
    enumerate_meeting_z,
    f_requirement,
    report,
    verify_dichotomy,
)
from denseforge.words import iter_words, shortlex_key

UNIT = [PairContains("1", "1")]


@pytest.fixture(scope="module")
def unit_family():
    # g1(k) = g2(k) = "1" at every level, so k_n = n
    table = GadgetTable(UNIT)
    sched = BlockSchedule(table)
    return table, sched


def test_f_requirement_membership(unit_family):
    table, sched = unit_family
    f0 = f_requirement(0, sched, table)
    assert f0.member("01")
    assert not f0.member("00")
    for w in iter_words(8):
        if set(w) <= {"0"}:
            assert not f0.member(w)


def test_f_requirement_witness(unit_family):
    table, sched = unit_family
    f0 = f_requirement(0, sched, table)
    assert witness_single(f0, "") == "01"
    assert meets_single(witness_single(f0, "0110"), f0)


def test_f_requirement_density(unit_family):
    table, sched = unit_family
    for n in (0, 2):
        assert check_density(f_requirement(n, sched, table), 8)


def test_enumerate_meeting_z(unit_family):
    table, sched = unit_family
    f0 = f_requirement(0, sched, table)
    assert list(enumerate_meeting_z(0, 1, f0)) == []
    assert list(enumerate_meeting_z(0, 0, f0)) == []
    got = list(enumerate_meeting_z(0, 2, f0))
    assert got == ["01", "11"]


def test_enumerate_matches_brute_filter(unit_family):
    table, sched = unit_family
    f1 = f_requirement(1, sched, table)
    got = list(enumerate_meeting_z(1, 12, f1))
    expected = [w for w in iter_words(12) if meets_single(w, f1)]
    assert got == expected
    keys = [shortlex_key(w) for w in got]
    assert keys == sorted(keys)
    assert all(a < b for a, b in zip(keys, keys[1:]))


@pytest.fixture(scope="module")
def woven(unit_family):
    result = build_xy(2, [Contains("1"), Contains("00")], UNIT)
    assert (result.x_prefix, result.y_prefix) == ("110011", "101100")
    return result


def test_verify_dichotomy_meeting_z(woven):
    v = verify_dichotomy(
        woven.x_prefix, woven.y_prefix, "01", 0, UNIT, woven.schedule, woven.gadget
    )
    assert v.witness_block == 1
    assert v.block_side == "x"
    assert v.evidence_x == (True,)
    # z contains "1", so the y pairing meets as well; both sides hold
    assert v.outcome == "both"


def test_verify_dichotomy_rejects_nonmeeting_z(woven):
    with pytest.raises(DichotomyPreconditionError):
        verify_dichotomy(
            woven.x_prefix, woven.y_prefix, "", 0, UNIT, woven.schedule, woven.gadget
        )


def test_verify_dichotomy_rejects_short_prefixes(woven):
    with pytest.raises(DichotomyPreconditionError):
        verify_dichotomy("1", "1", "01", 0, UNIT, woven.schedule, woven.gadget)


def test_verify_dichotomy_outcome_invariant(woven):
    from denseforge.requirements import meets_pair

    f0 = f_requirement(0, woven.schedule, woven.gadget)
    for z in enumerate_meeting_z(0, 5, f0):
        v = verify_dichotomy(
            woven.x_prefix, woven.y_prefix, z, 0, UNIT, woven.schedule, woven.gadget
        )
        x_ok = all(meets_pair(woven.x_prefix, z, d) for d in UNIT)
        y_ok = all(meets_pair(woven.y_prefix, z, d) for d in UNIT)
        assert v.outcome == {
            (True, True): "both",
            (True, False): "x_side",
            (False, True): "y_side",
            (False, False): "violation",
        }[(x_ok, y_ok)]
        assert v.outcome != "violation"


def test_witness_block_soundness(woven):
    f0 = f_requirement(0, woven.schedule, woven.gadget)
    for z in enumerate_meeting_z(0, 5, f0):
        v = verify_dichotomy(
            woven.x_prefix, woven.y_prefix, z, 0, UNIT, woven.schedule, woven.gadget
        )
        assert v.block_side in ("x", "y")
        carrier = v.evidence_x if v.block_side == "x" else v.evidence_y
        assert all(carrier)


def test_report_examples(woven):
    empty = report([])
    assert empty.passed and empty.checked == 0
    assert empty.lines()[-1] == "result: PASS"

    one = verify_dichotomy(
        woven.x_prefix, woven.y_prefix, "01", 0, UNIT, woven.schedule, woven.gadget
    )
    single = report([one])
    assert single.passed and single.checked == 1

    bad = DichotomyVerdict(0, "0101", "violation", 1, "x", (False,), (False,))
    failing = report([one, bad])
    assert not failing.passed
    lines = failing.lines()
    assert "violation: level=0 z=0101" in lines
    assert lines[-1] == "result: FAIL"


def test_f_requirement_needs_reachable_level():
    from denseforge.construction import ScheduleExhausted

    sched = BlockSchedule(ks=[0, 1])
    table = GadgetTable(UNIT)
    with pytest.raises(ScheduleExhausted):
        f_requirement(3, sched, table)
