"""Batch front end: gadget / weave / verify / density-check over a JSON config.

Exit status contract:
  0  success (for verify: zero violations)
  1  dichotomy violation
  2  parse or validation error
  3  density failure
"""

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .config import (
    ConfigError,
    RunConfig,
    build_pair_requirement,
    build_single_requirement,
    load_config,
)
from .construction import (
    BlockSchedule,
    GadgetTable,
    ScheduleExhausted,
    build_xy,
)
from .limits import SearchWidthError
from .requirements import DensityFailure, check_density, meets_single
from .verify import (
    DichotomyPreconditionError,
    enumerate_meeting_z,
    f_requirement,
    report,
    verify_dichotomy,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_DENSITY = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="denseforge",
        description="Deterministic gadget/weave/dichotomy runs over binary words.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("gadget", "weave", "verify", "density-check"):
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True, help="path to the JSON config")
        cmd.add_argument("--trace", help="path for the JSONL trace output")
        cmd.add_argument("--out", help="path for the main output artifact")
        cmd.add_argument("--quiet", action="store_true", help="suppress stdout")
        if name == "verify":
            cmd.add_argument(
                "--simultaneous-f",
                action="store_true",
                help="require each z to meet the block-suffix set at every level",
            )
    return parser


class _Runner:
    def __init__(self, config: RunConfig, args):
        self.config = config
        self.args = args
        self.trace_path = args.trace or config.outputs.get("trace")
        self.out_path = args.out or config.outputs.get("out")
        self.pair_reqs = [build_pair_requirement(s) for s in config.pair_requirements]
        self.table = GadgetTable(self.pair_reqs)
        self.schedule = BlockSchedule(self.table)
        self.single_reqs = [
            build_single_requirement(s, self.schedule, self.table)
            for s in config.single_requirements
        ]

    def say(self, line: str) -> None:
        if not self.args.quiet:
            print(line)

    def write_out(self, text: str) -> None:
        if self.out_path:
            with open(self.out_path, "w", encoding="ascii", newline="\n") as fh:
                fh.write(text)

    def write_trace(self, records: Sequence[dict]) -> None:
        if self.trace_path:
            with open(self.trace_path, "w", encoding="ascii", newline="\n") as fh:
                for rec in records:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")

    # -- commands ----------------------------------------------------------

    def gadget(self) -> int:
        n_max = self.config.max_gadget_n
        values = [
            {"n": n, "g1": self.table.g1(n), "g2": self.table.g2(n)}
            for n in range(n_max + 1)
        ]
        self.schedule.k(n_max)
        artifact = {
            "schema_version": 1,
            "values": values,
            "schedule": self.schedule.ks[: n_max + 1],
        }
        text = json.dumps(artifact, indent=2, sort_keys=True) + "\n"
        self.write_out(text)
        for v in values:
            self.say(f"g1({v['n']})={v['g1']} g2({v['n']})={v['g2']}")
        return EXIT_OK

    def _build(self):
        return build_xy(
            self.config.stages,
            self.single_reqs,
            self.pair_reqs,
            gadget=self.table,
            schedule=self.schedule,
        )

    def weave(self) -> int:
        result = self._build()
        blocks = self.schedule.ks[:]
        artifact = {
            "schema_version": 1,
            "x": result.x_prefix,
            "y": result.y_prefix,
            "schedule": blocks,
        }
        self.write_out(json.dumps(artifact, indent=2, sort_keys=True) + "\n")
        self.write_trace([ev.to_json() for ev in result.trace])
        self.say(f"x={result.x_prefix}")
        self.say(f"y={result.y_prefix}")
        return EXIT_OK

    def verify(self) -> int:
        result = self._build()
        settings = self.config.verify
        simultaneous = settings.simultaneous_f or getattr(
            self.args, "simultaneous_f", False
        )
        levels = settings.dichotomy_levels
        f_reqs = {n: f_requirement(n, self.schedule, self.table) for n in levels}
        records = [ev.to_json() for ev in result.trace]
        lines = [
            "command: verify",
            "levels: " + ",".join(str(n) for n in levels),
            f"z_max_len: {settings.z_max_len}",
            f"simultaneous_f: {str(simultaneous).lower()}",
        ]
        any_violation = False
        for n in levels:
            verdicts = []
            for z in enumerate_meeting_z(n, settings.z_max_len, f_reqs[n]):
                if simultaneous and not all(
                    meets_single(z, f_reqs[lvl]) for lvl in levels
                ):
                    continue
                verdicts.append(
                    verify_dichotomy(
                        result.x_prefix,
                        result.y_prefix,
                        z,
                        n,
                        self.pair_reqs,
                        self.schedule,
                        self.table,
                    )
                )
            records.extend(v.to_json() for v in verdicts)
            summary = report(verdicts)
            any_violation = any_violation or not summary.passed
            counts = " ".join(f"{name}={count}" for name, count in summary.counts)
            lines.append(f"level {n}: checked={summary.checked} {counts}")
            for v in summary.violations:
                lines.append(f"violation: level={v.level} z={v.z}")
        lines.append("result: " + ("FAIL" if any_violation else "PASS"))
        self.write_trace(records)
        self.write_out("\n".join(lines) + "\n")
        for line in lines:
            self.say(line)
        return EXIT_VIOLATION if any_violation else EXIT_OK

    def density_check(self) -> int:
        depth = self.config.density_depth
        lines = ["command: density-check", f"depth: {depth}"]
        failures = []
        for label, req in self._all_requirements():
            outcome = check_density(req, depth)
            if outcome:
                lines.append(f"{label} {req.describe()}: ok")
            else:
                stuck = outcome.counterexample
                lines.append(f"{label} {req.describe()}: FAIL stuck={stuck}")
                failures.append((req.describe(), stuck))
        lines.append("result: " + ("FAIL" if failures else "PASS"))
        self.write_out("\n".join(lines) + "\n")
        for line in lines:
            self.say(line)
        return EXIT_DENSITY if failures else EXIT_OK

    def _all_requirements(self):
        for i, req in enumerate(self.pair_reqs):
            yield f"pair_requirements[{i}]", req
        for i, req in enumerate(self.single_reqs):
            yield f"single_requirements[{i}]", req


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        runner = _Runner(config, args)
        command = args.command.replace("-", "_")
        return getattr(runner, command)()
    except DensityFailure as exc:
        print(f"density failure: {exc}", file=sys.stderr)
        return EXIT_DENSITY
    except (
        ConfigError,
        DichotomyPreconditionError,
        ScheduleExhausted,
        SearchWidthError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def entry() -> None:  # console script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
