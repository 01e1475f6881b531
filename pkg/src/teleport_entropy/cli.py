"""Command-line front end: stage reports, the S(A,C) grid scan and the property suite.

Exit codes: 0 ok, 1 property failure, 2 usage error, 3 amplitudes not
normalizable, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Sequence

from .errors import NotNormalized
from .entropy import REPORT_KEYS
from .inputs import STAGES, InputAmplitudes, Stage
from .pipeline import MARGINALS, RELATIVE_PAIRS, StageReport, ac_entropy_scan, stage_report
from .verify import run_suite

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2
EXIT_BAD_VALUE = 3
EXIT_IO = 4

RELATIVE_KEYS = tuple(f"rel_{x}_{y}" for x, y in RELATIVE_PAIRS)
SCAN_HEADER = ("r", "theta", "s_ac_451", "s_ac_452")
MAX_SEED = 2**64 - 1
# Magnitudes below this are roundoff residue and print as 0.
DISPLAY_ZERO = 1e-12

_DECIMAL = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_AMPLITUDE = re.compile(rf"^\s*(\()?\s*({_DECIMAL})\s*,\s*({_DECIMAL})\s*(\))?\s*$")


def parse_amplitude(text: str) -> complex:
    """Parse ``"re,im"`` or ``"(re,im)"`` with plain decimal components."""
    m = _AMPLITUDE.match(text)
    if not m or bool(m.group(1)) != bool(m.group(4)):
        raise argparse.ArgumentTypeError(f"malformed amplitude {text!r}; expected RE,IM such as 0.6,0")
    return complex(float(m.group(2)), float(m.group(3)))


def format_number(x: float) -> str:
    """12 significant digits, ``"inf"`` for divergences, no negative zero."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if abs(x) < DISPLAY_ZERO:
        return "0"
    return f"{x:.12g}"


def _json_number(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(format_number(x))


def classification_label(report: StageReport, name: str) -> str:
    """Table-style label; single qubits only carry a purity class."""
    return report.classifications[name].short(factorization=len(name) > 1)


def _text(reports: Sequence[StageReport]) -> str:
    lines = []
    for rep in reports:
        lines.append(f"stage {rep.stage.value}")
        for key, value in rep.entropies.as_dict().items():
            lines.append(f"  {key} = {format_number(value)}")
        for key in RELATIVE_KEYS:
            value = rep.relative_entropies[key]
            flag = "  (divergent)" if math.isinf(value) else ""
            lines.append(f"  {key} = {format_number(value)}{flag}")
        for name in MARGINALS:
            lines.append(f"  class_{name} = {classification_label(rep, name)}")
        if rep.divergent:
            lines.append(f"  note: divergent relative entropies: {', '.join(rep.divergent)}")
    return "\n".join(lines) + "\n"


def _csv(reports: Sequence[StageReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("stage",) + REPORT_KEYS + RELATIVE_KEYS + tuple(f"class_{m}" for m in MARGINALS))
    for rep in reports:
        ent = rep.entropies.as_dict()
        writer.writerow(
            [rep.stage.value]
            + [format_number(ent[k]) for k in REPORT_KEYS]
            + [format_number(rep.relative_entropies[k]) for k in RELATIVE_KEYS]
            + [classification_label(rep, m) for m in MARGINALS]
        )
    return buf.getvalue()


def report_json(reports: Sequence[StageReport]) -> dict:
    out = {}
    for rep in reports:
        obj = {k: _json_number(v) for k, v in rep.entropies.as_dict().items()}
        obj["relative"] = {k: _json_number(rep.relative_entropies[k]) for k in RELATIVE_KEYS}
        obj["classification"] = {
            name: {
                "purity": rep.classifications[name].purity_class,
                "factorization": rep.classifications[name].factorization_class,
                "label": classification_label(rep, name),
            }
            for name in MARGINALS
        }
        out[rep.stage.value] = obj
    return out


def _json(reports: Sequence[StageReport]) -> str:
    return json.dumps(report_json(reports), indent=2) + "\n"


FORMATTERS = {"text": _text, "csv": _csv, "json": _json}


def scan_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_HEADER)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
    return buf.getvalue()


def _positive_int(minimum: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}, got {value}")
        return value

    return parse


def _seed(text: str) -> int:
    value = _positive_int(0)(text)
    if value > MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teleport-entropy",
        description="Entropy bookkeeping for single-qubit teleportation on a three-qubit density-matrix simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="entropies, relative entropies and classes at each stage")
    rep.add_argument("--amp-a", required=True, type=parse_amplitude, metavar="RE,IM")
    rep.add_argument("--amp-b", required=True, type=parse_amplitude, metavar="RE,IM")
    rep.add_argument("--stage", default="all", choices=[s.value for s in STAGES] + ["all"])
    rep.add_argument("--format", default="text", choices=sorted(FORMATTERS))

    scan = sub.add_parser("scan", help="S(A,C) after measuring only C or only A, over an (r, theta) grid")
    scan.add_argument("--r-steps", required=True, type=_positive_int(2), metavar="N")
    scan.add_argument("--theta-steps", required=True, type=_positive_int(2), metavar="M")
    scan.add_argument("--out", required=True, metavar="PATH")

    ver = sub.add_parser("verify", help="run the seeded property suite")
    ver.add_argument("--seed", required=True, type=_seed, metavar="S")
    ver.add_argument("--trials", required=True, type=_positive_int(1), metavar="N")
    return parser


def cmd_report(args) -> int:
    try:
        amps = InputAmplitudes(args.amp_a, args.amp_b)
    except NotNormalized as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_VALUE
    stages = STAGES if args.stage == "all" else (Stage.parse(args.stage),)
    reports = [stage_report(amps, s) for s in stages]
    sys.stdout.write(FORMATTERS[args.format](reports))
    return EXIT_OK


def cmd_scan(args) -> int:
    text = scan_csv(ac_entropy_scan(args.r_steps, args.theta_steps))
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.seed, args.trials)
    for res in results:
        print(res.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return EXIT_PROPERTY
    print(f"all {len(results)} properties pass")
    return EXIT_OK


COMMANDS = {"report": cmd_report, "scan": cmd_scan, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)
