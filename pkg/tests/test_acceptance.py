"""Acceptance gate: one test per criterion, each printing a pass/fail line.

All checks are exact (zero tolerance); run with ``pytest -s`` to see the
per-criterion lines.
"""

import json
from contextlib import contextmanager
from itertools import combinations

import pytest

from denseforge import cli
from denseforge.construction import GadgetTable, build_xy
from denseforge.requirements import (
    Contains,
    ExactSet,
    PairContains,
    avoids_single,
    check_density,
    derive_meet_or_avoid,
    meets_pair,
    meets_single,
)
from denseforge.verify import enumerate_meeting_z, f_requirement, report, verify_dichotomy
from denseforge.words import iter_words, words_of_length

from oracle import naive_gadget

D_LIST = [
    PairContains("1", "1"),
    PairContains("01", "10"),
    PairContains("00", "11"),
]

E_SETS = [{"101"}, {"000", "111"}, {"01", "110"}, {"10", "010", "001"}]
E_LIST = [
    Contains("1"),
    Contains("00"),
    Contains("101"),
    Contains("0110"),
] + [derive_meet_or_avoid(a) for a in E_SETS]

D_SPECS = [
    {"kind": "pair_contains", "left": "1", "right": "1"},
    {"kind": "pair_contains", "left": "01", "right": "10"},
    {"kind": "pair_contains", "left": "00", "right": "11"},
]
E_SPECS = [
    {"kind": "contains", "word": "1"},
    {"kind": "contains", "word": "00"},
    {"kind": "contains", "word": "101"},
    {"kind": "contains", "word": "0110"},
] + [{"kind": "finite_meet_or_avoid", "words": sorted(a, key=lambda w: (len(w), w))} for a in E_SETS]


@contextmanager
def criterion(number, title):
    try:
        yield
    except BaseException:
        print(f"criterion {number} ({title}): FAIL")
        raise
    print(f"criterion {number} ({title}): PASS")


@pytest.fixture(scope="module")
def woven():
    return build_xy(8, E_LIST, D_LIST)


def test_criterion_1_gadget_guarantee():
    with criterion(1, "gadget guarantee, exhaustive n <= 3"):
        table = GadgetTable(D_LIST)
        for n in range(4):
            g1, g2 = table.g1(n), table.g2(n)
            active = D_LIST[: n + 1]
            for gamma1 in words_of_length(n):
                for gamma2 in words_of_length(n):
                    assert all(
                        meets_pair(gamma1 + g1, gamma2 + g2, d) for d in active
                    ), (n, gamma1, gamma2)


def test_criterion_2_gadget_oracle_cross_check():
    with criterion(2, "gadget oracle cross-check"):
        unit = [PairContains("1", "1")]
        table = GadgetTable(unit)
        assert (table.g1(1), table.g2(1)) == ("1", "1")
        assert naive_gadget(1, unit)[0] == ("1", "1")

        heavy = [PairContains("11", "00")]
        table2 = GadgetTable(heavy)
        assert (table2.g1(0), table2.g2(0)) == ("11", "00")
        assert naive_gadget(0, heavy)[0] == ("11", "00")


def test_criterion_3_block_dichotomy(woven):
    with criterion(3, "block dichotomy over 8 stages"):
        x, y = woven.x_prefix, woven.y_prefix
        sched, table = woven.schedule, woven.gadget
        m = 0
        while sched.k(m + 1) <= len(x):
            k0, k1 = sched.k(m), sched.k(m + 1)
            g1 = table.g1(k0)
            assert x[k0:k1] == g1 or y[k0:k1] == g1, m
            m += 1
        assert m >= 16
        for req in E_LIST:
            assert meets_single(x, req)
            assert meets_single(y, req)


def test_criterion_4_theorem_sweep(woven):
    with criterion(4, "dichotomy sweep, z up to length 14"):
        x, y = woven.x_prefix, woven.y_prefix
        for n in (0, 1):
            f_n = f_requirement(n, woven.schedule, woven.gadget)
            verdicts = [
                verify_dichotomy(x, y, z, n, D_LIST, woven.schedule, woven.gadget)
                for z in enumerate_meeting_z(n, 14, f_n)
            ]
            assert verdicts
            summary = report(verdicts)
            assert summary.passed, summary.violations[:3]


def test_criterion_5_derived_set_density():
    with criterion(5, "meet-or-avoid density, all 128 subsets, depth 6"):
        universe = list(iter_words(2))
        assert len(universe) == 7
        count = 0
        for k in range(len(universe) + 1):
            for subset in combinations(universe, k):
                assert check_density(derive_meet_or_avoid(subset), 6)
                count += 1
        assert count == 128


def test_criterion_6_byte_determinism(tmp_path):
    with criterion(6, "byte-identical verify runs"):
        config_data = {
            "pair_requirements": D_SPECS,
            "single_requirements": E_SPECS,
            "stages": 8,
            "max_gadget_n": 3,
            "verify": {
                "z_max_len": 14,
                "dichotomy_levels": [0, 1],
                "simultaneous_f": False,
            },
            "density_depth": 5,
        }
        config = tmp_path / "config.json"
        config.write_text(json.dumps(config_data))
        runs = []
        for tag in ("a", "b"):
            trace = tmp_path / f"trace-{tag}.jsonl"
            summary = tmp_path / f"summary-{tag}.txt"
            code = cli.main(
                [
                    "verify",
                    "--config",
                    str(config),
                    "--trace",
                    str(trace),
                    "--out",
                    str(summary),
                    "--quiet",
                ]
            )
            assert code == 0
            runs.append((trace.read_bytes(), summary.read_bytes()))
        assert runs[0][0] == runs[1][0]
        assert runs[0][1] == runs[1][1]
        assert b"result: PASS" in runs[0][1]


def test_criterion_7_monotonicity_and_decidedness():
    with criterion(7, "meets/avoids monotonicity and decidedness"):
        universe = list(iter_words(2))
        words6 = list(iter_words(6))
        for k in range(len(universe) + 1):
            for subset in combinations(universe, k):
                base = ExactSet(frozenset(subset))
                derived = derive_meet_or_avoid(subset)
                for w in words6:
                    if meets_single(w, derived):
                        assert meets_single(w, base) or avoids_single(w, base)
                    if len(w) < 6:
                        for bit in "01":
                            w2 = w + bit
                            if meets_single(w, base):
                                assert meets_single(w2, base)
                            if avoids_single(w, base):
                                assert avoids_single(w2, base)
                            if meets_single(w, derived):
                                assert meets_single(w2, derived)
