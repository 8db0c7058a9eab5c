"""Run configuration: JSON parsing, validation, and requirement building.

The config file is a single JSON object. Requirement kinds are tagged with
the exact strings used throughout the package; words are '0'/'1' strings.
Parsing normalizes word lists to shortlex order, so parse(render(config))
round-trips exactly.
"""

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .requirements import (
    Contains,
    ExactSet,
    FBlock,
    FiniteMeetOrAvoid,
    PairContains,
    PairExactSet,
    PairMeetOrAvoid,
    PairRequirement,
    SingleRequirement,
)
from .words import ALPHABET, shortlex_key

SINGLE_KINDS = ("contains", "finite_meet_or_avoid", "exact_set", "f_block")
PAIR_KINDS = ("pair_contains", "pair_finite_meet_or_avoid", "pair_exact_set")


class ConfigError(ValueError):
    """Invalid configuration; carries the offending location."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


def _require_word(value, location: str) -> str:
    if not isinstance(value, str) or any(c not in ALPHABET for c in value):
        raise ConfigError(location, f"expected a '0'/'1' string, got {value!r}")
    return value


def _require_int(value, location: str, minimum: int = 0) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ConfigError(location, f"expected an integer >= {minimum}, got {value!r}")
    return value


def _normalize_single(spec, location: str) -> dict:
    if not isinstance(spec, dict):
        raise ConfigError(location, f"expected an object, got {spec!r}")
    kind = spec.get("kind")
    if kind == "contains":
        return {"kind": kind, "word": _require_word(spec.get("word"), f"{location}.word")}
    if kind in ("finite_meet_or_avoid", "exact_set"):
        words = spec.get("words")
        if not isinstance(words, list):
            raise ConfigError(f"{location}.words", f"expected a list, got {words!r}")
        norm = sorted(
            {_require_word(w, f"{location}.words[{i}]") for i, w in enumerate(words)},
            key=shortlex_key,
        )
        return {"kind": kind, "words": norm}
    if kind == "f_block":
        return {"kind": kind, "level": _require_int(spec.get("level"), f"{location}.level")}
    raise ConfigError(f"{location}.kind", f"unknown single requirement kind {kind!r}")


def _normalize_pair(spec, location: str) -> dict:
    if not isinstance(spec, dict):
        raise ConfigError(location, f"expected an object, got {spec!r}")
    kind = spec.get("kind")
    if kind == "pair_contains":
        return {
            "kind": kind,
            "left": _require_word(spec.get("left"), f"{location}.left"),
            "right": _require_word(spec.get("right"), f"{location}.right"),
        }
    if kind in ("pair_finite_meet_or_avoid", "pair_exact_set"):
        pairs = spec.get("pairs")
        if not isinstance(pairs, list):
            raise ConfigError(f"{location}.pairs", f"expected a list, got {pairs!r}")
        seen = set()
        for i, p in enumerate(pairs):
            if not (isinstance(p, list) and len(p) == 2):
                raise ConfigError(
                    f"{location}.pairs[{i}]", f"expected a [left, right] pair, got {p!r}"
                )
            seen.add(
                (
                    _require_word(p[0], f"{location}.pairs[{i}][0]"),
                    _require_word(p[1], f"{location}.pairs[{i}][1]"),
                )
            )
        norm = sorted(seen, key=lambda p: (shortlex_key(p[0]), shortlex_key(p[1])))
        return {"kind": kind, "pairs": [list(p) for p in norm]}
    raise ConfigError(f"{location}.kind", f"unknown pair requirement kind {kind!r}")


@dataclass
class VerifySettings:
    z_max_len: int = 8
    dichotomy_levels: List[int] = field(default_factory=lambda: [0])
    simultaneous_f: bool = False


@dataclass
class RunConfig:
    pair_requirements: List[dict]
    single_requirements: List[dict]
    stages: int
    max_gadget_n: int
    verify: VerifySettings
    density_depth: int = 6
    outputs: Dict[str, str] = field(default_factory=dict)


def parse_config(text: str) -> RunConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<json>", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected a JSON object")

    raw_pairs = data.get("pair_requirements", [])
    if not isinstance(raw_pairs, list):
        raise ConfigError("pair_requirements", "expected a list")
    pairs = [
        _normalize_pair(s, f"pair_requirements[{i}]") for i, s in enumerate(raw_pairs)
    ]

    raw_singles = data.get("single_requirements", [])
    if not isinstance(raw_singles, list):
        raise ConfigError("single_requirements", "expected a list")
    singles = [
        _normalize_single(s, f"single_requirements[{i}]")
        for i, s in enumerate(raw_singles)
    ]

    stages = _require_int(data.get("stages", 0), "stages")
    if stages > len(singles):
        raise ConfigError(
            "stages",
            f"stages ({stages}) exceeds the number of single requirements "
            f"({len(singles)})",
        )
    max_gadget_n = _require_int(data.get("max_gadget_n", 0), "max_gadget_n")

    raw_verify = data.get("verify", {})
    if not isinstance(raw_verify, dict):
        raise ConfigError("verify", "expected an object")
    levels_raw = raw_verify.get("dichotomy_levels", [0])
    if not isinstance(levels_raw, list) or not levels_raw:
        raise ConfigError("verify.dichotomy_levels", "expected a non-empty list")
    levels = [
        _require_int(n, f"verify.dichotomy_levels[{i}]") for i, n in enumerate(levels_raw)
    ]
    settings = VerifySettings(
        z_max_len=_require_int(raw_verify.get("z_max_len", 8), "verify.z_max_len"),
        dichotomy_levels=levels,
        simultaneous_f=bool(raw_verify.get("simultaneous_f", False)),
    )

    density_depth = _require_int(data.get("density_depth", 6), "density_depth")

    raw_outputs = data.get("outputs", {})
    if not isinstance(raw_outputs, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in raw_outputs.items()
    ):
        raise ConfigError("outputs", "expected an object of string paths")

    return RunConfig(
        pair_requirements=pairs,
        single_requirements=singles,
        stages=stages,
        max_gadget_n=max_gadget_n,
        verify=settings,
        density_depth=density_depth,
        outputs=dict(sorted(raw_outputs.items())),
    )


def render_config(config: RunConfig) -> str:
    data = {
        "pair_requirements": config.pair_requirements,
        "single_requirements": config.single_requirements,
        "stages": config.stages,
        "max_gadget_n": config.max_gadget_n,
        "verify": {
            "z_max_len": config.verify.z_max_len,
            "dichotomy_levels": config.verify.dichotomy_levels,
            "simultaneous_f": config.verify.simultaneous_f,
        },
        "density_depth": config.density_depth,
        "outputs": config.outputs,
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def load_config(path: str) -> RunConfig:
    with open(path, "r", encoding="ascii") as fh:
        return parse_config(fh.read())


def build_pair_requirement(spec: dict) -> PairRequirement:
    kind = spec["kind"]
    if kind == "pair_contains":
        return PairContains(spec["left"], spec["right"])
    if kind == "pair_finite_meet_or_avoid":
        return PairMeetOrAvoid(frozenset(tuple(p) for p in spec["pairs"]))
    if kind == "pair_exact_set":
        return PairExactSet(frozenset(tuple(p) for p in spec["pairs"]))
    raise ConfigError("kind", f"unknown pair requirement kind {kind!r}")


def build_single_requirement(
    spec: dict, schedule=None, gadget=None
) -> SingleRequirement:
    kind = spec["kind"]
    if kind == "contains":
        return Contains(spec["word"])
    if kind == "finite_meet_or_avoid":
        return FiniteMeetOrAvoid(frozenset(spec["words"]))
    if kind == "exact_set":
        return ExactSet(frozenset(spec["words"]))
    if kind == "f_block":
        if schedule is None or gadget is None:
            raise ConfigError(
                "kind", "f_block requirements need a schedule and gadget table"
            )
        return FBlock(level=spec["level"], schedule=schedule, gadget=gadget)
    raise ConfigError("kind", f"unknown single requirement kind {kind!r}")
