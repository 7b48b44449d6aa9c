"""Command-line harness: run identity suites, emit reports, return exit codes.

Report schema (JSON):

    {"config": {...}, "checks": [{"name": str, "paper_anchor": str,
      "status": "pass"|"fail"|"skipped", "trials_run": int,
      "elapsed_ms": int, "counterexample": object|null}], "overall": "pass"|"fail"}

Everything except elapsed_ms is deterministic for a fixed config; elapsed_ms
is genuine wall time and therefore varies run to run.

Display-comparison checks (names ending in "-display") report how a printed
closed-form right-hand side compares with the projector oracle.  Their
counterexample slot always carries the comparison record, and their status is
"pass" exactly when the comparison came out as documented in EXPECTED_DISPLAYS
below; a documented mismatch of a printed display therefore does not fail the
run, while a surprise (a display behaving differently from its documented
verdict) does.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from .exact import RandomStream
from .verify import (
    ActionReport,
    corollary11_suite,
    fedosov_suite,
    lemma1_suite,
    lemma4_suite,
    lemma5_suite,
    lemma6_suite,
    lemma7_suite,
    replay_counterexample,
    symbol_complex_suite,
    theorem9_suite,
    theorem10_suite,
)

__all__ = [
    "RunConfig",
    "CheckRecord",
    "SuiteReport",
    "run_suite",
    "emit_report",
    "parse_report",
    "main",
]

SUITE_ORDER = (
    "lemma1",
    "lemma4",
    "lemma5",
    "lemma6",
    "lemma7",
    "theorem9",
    "theorem10",
    "corollary11",
    "symbol-complex",
    "fedosov",
)

SPINOR_SUITES = frozenset(
    {"lemma1", "lemma4", "lemma5", "theorem9", "theorem10", "corollary11", "symbol-complex"}
)
THEOREM_SUITES = frozenset({"theorem9", "theorem10", "corollary11", "symbol-complex"})

ANCHORS = {
    "lemma1": "e_a.e_b.s - e_b.e_a.s = -i omega(e_a, e_b) s",
    "lemma4": "XY + YX = i (r - l) Id on degree-r forms",
    "lemma5.idempotency": "p.p = p for each of the five projectors",
    "lemma5.orthogonality": "p_a.p_b = 0 for distinct projectors of one form degree",
    "lemma5.partition-of-identity": "p10 + p11 = Id and p20 + p21 + p22 = Id",
    "lemma6": "R^{ijkl} omega_kl = 2 sigma^{ij} and sigma symmetric",
    "lemma7.weyl-trace-free": "all six omega-traces of W vanish; 4-term cyclic identity",
    "lemma7.ricci-section": "ricci(sigma_tilde(s)) = s for symmetric s",
    "theorem9": "p22 of the Ricci-type spinor action vanishes",
    "theorem9.eq9-display": "printed p20 of the Ricci-type action vs projector oracle",
    "theorem9.eq10-display": "printed p21 of the Ricci-type action vs projector oracle",
    "theorem10": "p20 and Y^2 of the trace-free spinor action vanish",
    "theorem10.eq11-display": "printed p21 of the trace-free action vs projector oracle",
    "theorem10.eq12-display": "printed p22 of the trace-free action (bound variant) vs oracle",
    "corollary11": "p2j(action R) = p2j(action sigma_tilde) + p2j(action W), j = 0,1,2",
    "corollary11.p20-display": "printed p20 of the full action vs projector oracle",
    "corollary11.p21-display": "printed p21 of the full action vs projector oracle",
    "corollary11.p22-display": "printed p22 of the full action vs projector oracle",
    "symbol-complex": "p22(xi ^ p10(eta)) = 0 for random covectors and 1-forms",
    "symbol-complex.negative-control": "p22(xi ^ p11(eta)) != 0 for a recorded witness",
    "fedosov.axioms": "nabla omega = 0 and zero torsion as polynomial identities",
    "fedosov.curvature-symmetries": "evaluated curvatures satisfy all four symmetries",
    "fedosov.decomposition": "R = sigma_tilde(ricci R) + W with W trace-free, pointwise",
}

# Documented verdicts for the printed displays: (literal_match, corrected_match).
# The p20/p21 displays of the Ricci-type action omit the 1/(2(l+1))
# normalization of sigma_tilde and so exceed the oracle by exactly 2(l+1);
# the trace-free p21 display carries a spurious factor of 2i; and the printed
# trace-free p22 display has an unbound index, so only its bound variant is
# evaluable.  Each corrected variant matches the oracle exactly.  A display
# check fails only when a comparison disagrees with this documented account.
EXPECTED_DISPLAYS = {
    ("theorem9", "eq9"): (False, True),
    ("theorem9", "eq10"): (False, True),
    ("theorem10", "eq11"): (False, True),
    ("theorem10", "eq12"): (None, True),
    ("corollary11", "p20-display"): (False, True),
    ("corollary11", "p21-display"): (False, True),
    ("corollary11", "p22-display"): (False, True),
}


@dataclass(frozen=True)
class RunConfig:
    l: int = 2
    max_degree: int = 6
    pad: int = 6
    trials: int = 20
    seed: int = 42
    suites: tuple[str, ...] = ("all",)
    out: str = "-"
    format: str = "text"

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "max_degree": self.max_degree,
            "pad": self.pad,
            "trials": self.trials,
            "seed": self.seed,
            "suites": list(self.suites),
            "out": self.out,
            "format": self.format,
        }


@dataclass(frozen=True)
class CheckRecord:
    name: str
    paper_anchor: str
    status: str
    trials_run: int
    elapsed_ms: int
    counterexample: dict | None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "status": self.status,
            "trials_run": self.trials_run,
            "elapsed_ms": self.elapsed_ms,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class SuiteReport:
    config: RunConfig
    checks: tuple[CheckRecord, ...]
    overall: str

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "checks": [c.to_json() for c in self.checks],
            "overall": self.overall,
        }


def expand_suites(suites) -> list[str]:
    requested = []
    for s in suites:
        if s == "all":
            requested.extend(SUITE_ORDER)
        elif s in SUITE_ORDER:
            requested.append(s)
        else:
            raise ValueError(f"unknown suite {s!r}")
    seen = set()
    ordered = []
    for s in SUITE_ORDER:
        if s in requested and s not in seen:
            seen.add(s)
            ordered.append(s)
    return ordered


def validate_config(config: RunConfig) -> list[str]:
    """Expand and validate; raises before any computation on a bad config."""
    selected = expand_suites(config.suites)
    if config.l < 1 or config.max_degree < 0 or config.pad < 0 or config.trials < 0:
        raise ValueError("l, max_degree, pad, trials must be non-negative (l >= 1)")
    if config.l < 2 and any(s in SPINOR_SUITES for s in selected):
        raise ValueError("spinor suites require l >= 2")
    if config.pad < 6 and any(s in THEOREM_SUITES for s in selected):
        raise ValueError("theorem suites require pad >= 6")
    if config.format not in ("json", "text"):
        raise ValueError("format must be json or text")
    return selected


def _report_to_record(report: ActionReport, anchor_key: str, elapsed_ms: int) -> CheckRecord:
    return CheckRecord(
        name=report.theorem_id,
        paper_anchor=ANCHORS.get(anchor_key, anchor_key),
        status=report.status,
        trials_run=report.trials,
        elapsed_ms=elapsed_ms,
        counterexample=report.counterexample,
    )


def _display_records(suite: str, report: ActionReport, elapsed_ms: int) -> list[CheckRecord]:
    records = []
    for d in report.displays:
        expected = EXPECTED_DISPLAYS.get((suite, d.display))
        if expected is None:
            continue
        actual = (d.literal_match, d.corrected_match)
        as_documented = actual == expected
        payload = {
            "literal_match": d.literal_match,
            "corrected_match": d.corrected_match,
            "expected_literal_match": expected[0],
            "expected_corrected_match": expected[1],
            "note": d.note,
        }
        name = f"{suite}.{d.display}" if "-display" in d.display else f"{suite}.{d.display}-display"
        records.append(
            CheckRecord(
                name=name,
                paper_anchor=ANCHORS.get(name, name),
                status="pass" if (as_documented and report.status != "skipped") else "fail",
                trials_run=report.trials,
                elapsed_ms=elapsed_ms,
                counterexample=payload,
            )
        )
    return records


def _run_named_suite(name: str, config: RunConfig, seed: int) -> list[CheckRecord]:
    l, deg, trials = config.l, config.max_degree, config.trials
    t0 = time.perf_counter()
    reports: list[ActionReport] = []
    displays_from: list[ActionReport] = []
    if name == "lemma1":
        reports = [lemma1_suite(l, deg, trials, seed)]
    elif name == "lemma4":
        reports = [lemma4_suite(l, deg, trials, seed)]
    elif name == "lemma5":
        reports = lemma5_suite(l, deg, trials, seed)
    elif name == "lemma6":
        reports = [lemma6_suite(l, trials, seed)]
    elif name == "lemma7":
        reports = lemma7_suite(l, trials, seed)
    elif name == "theorem9":
        rep = theorem9_suite(l, deg, trials, seed)
        reports, displays_from = [rep], [rep]
    elif name == "theorem10":
        rep = theorem10_suite(l, deg, trials, seed)
        reports, displays_from = [rep], [rep]
    elif name == "corollary11":
        rep = corollary11_suite(l, deg, trials, seed)
        reports, displays_from = [rep], [rep]
    elif name == "symbol-complex":
        reports = symbol_complex_suite(l, deg, trials, seed)
    elif name == "fedosov":
        n_conn = 0 if trials == 0 else 5
        reports = fedosov_suite(l, seed, n_connections=n_conn, n_points=5)
    else:
        raise ValueError(f"unknown suite {name!r}")
    elapsed_ms = int((time.perf_counter() - t0) * 1000)
    records = [_report_to_record(r, r.theorem_id, elapsed_ms) for r in reports]
    for rep in displays_from:
        records.extend(_display_records(name, rep, elapsed_ms))
    return records


def run_suite(config: RunConfig) -> SuiteReport:
    """Run the selected suites; deterministic apart from elapsed_ms."""
    selected = validate_config(config)
    base = RandomStream(config.seed)
    records: list[CheckRecord] = []
    for idx, name in enumerate(SUITE_ORDER):
        if name not in selected:
            continue
        suite_seed = base.split(idx + 1).next_int(0, 2**31 - 1)
        records.extend(_run_named_suite(name, config, suite_seed))
    overall = "pass" if records and all(r.status == "pass" for r in records) else "fail"
    return SuiteReport(config=config, checks=tuple(records), overall=overall)


# ---------------------------------------------------------------------------
# Emission and parsing
# ---------------------------------------------------------------------------


def emit_report(report: SuiteReport, format: str = "json") -> bytes:
    if format == "json":
        return (json.dumps(report.to_json(), indent=2) + "\n").encode()
    if format != "text":
        raise ValueError("format must be json or text")
    lines = []
    cfg = report.config
    lines.append(
        f"sympspin  l={cfg.l} max_degree={cfg.max_degree} pad={cfg.pad} "
        f"trials={cfg.trials} seed={cfg.seed}"
    )
    lines.append("-" * 78)
    for c in report.checks:
        lines.append(
            f"{c.name:<40} trials={c.trials_run:<4} {c.elapsed_ms:>7}ms  "
            f"{c.status.upper()}"
        )
    lines.append("-" * 78)
    lines.append(f"overall: {report.overall.upper()}")
    return ("\n".join(lines) + "\n").encode()


def parse_report(data: bytes | str) -> SuiteReport:
    obj = json.loads(data)
    cfg = obj["config"]
    config = RunConfig(
        l=cfg["l"],
        max_degree=cfg["max_degree"],
        pad=cfg["pad"],
        trials=cfg["trials"],
        seed=cfg["seed"],
        suites=tuple(cfg["suites"]),
        out=cfg["out"],
        format=cfg["format"],
    )
    checks = tuple(
        CheckRecord(
            name=c["name"],
            paper_anchor=c["paper_anchor"],
            status=c["status"],
            trials_run=c["trials_run"],
            elapsed_ms=c["elapsed_ms"],
            counterexample=c["counterexample"],
        )
        for c in obj["checks"]
    )
    return SuiteReport(config=config, checks=checks, overall=obj["overall"])


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sympspin",
        description="Exact verification of symplectic spinor operator identities.",
    )
    parser.add_argument("--l", type=int, default=2, help="half-dimension (default 2)")
    parser.add_argument("--max-degree", type=int, default=6, dest="max_degree",
                        help="maximum sampled spinor degree (default 6)")
    parser.add_argument("--pad", type=int, default=6,
                        help="degree headroom floor; theorem suites need >= 6")
    parser.add_argument("--trials", type=int, default=20,
                        help="random trials per check (default 20)")
    parser.add_argument("--seed", type=int, default=42,
                        help="base seed; SYMPSPIN_SEED overrides when set")
    parser.add_argument("--suite", action="append", dest="suites",
                        choices=list(SUITE_ORDER) + ["all"],
                        help="suite to run (repeatable; default all)")
    parser.add_argument("--out", default="-", help="output path, '-' for stdout")
    parser.add_argument("--format", choices=["json", "text"], default="text")
    parser.add_argument("--replay", metavar="FILE",
                        help="re-evaluate a serialized counterexample and exit")
    return parser


def _replay_main(path: str) -> int:
    with open(path, "rb") as fh:
        obj = json.load(fh)
    if "checks" in obj:
        items = [c["counterexample"] for c in obj["checks"]
                 if c["counterexample"] and "check" in c["counterexample"]]
    elif "check" in obj:
        items = [obj]
    else:
        print("replay file contains no counterexample", file=sys.stderr)
        return 2
    if not items:
        print("replay file contains no counterexample", file=sys.stderr)
        return 2
    worst = 0
    for ce in items:
        result = replay_counterexample(ce)
        print(json.dumps(result))
        if result["status"] == "fail":
            worst = 1
    return worst


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.replay:
        return _replay_main(args.replay)
    seed = args.seed
    env_seed = os.environ.get("SYMPSPIN_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    config = RunConfig(
        l=args.l,
        max_degree=args.max_degree,
        pad=args.pad,
        trials=args.trials,
        seed=seed,
        suites=tuple(args.suites) if args.suites else ("all",),
        out=args.out,
        format=args.format,
    )
    try:
        report = run_suite(config)
    except ValueError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    data = emit_report(report, config.format)
    if config.out == "-":
        sys.stdout.write(data.decode())
    else:
        try:
            with open(config.out, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            print(f"cannot write report: {exc}", file=sys.stderr)
            return 2
    return 0 if report.overall == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
