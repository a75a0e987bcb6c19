"""Command-line front end.

Subcommands: compute (one slot), table (all slots within truncation),
verify (the built-in check suite), expr (evaluate an expression), inputs
(which open-moduli entries a slot depends on).

Exit codes: 0 ok, 2 usage, 3 parse error in an expression or table
document, 4 violated operation precondition, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .dataset import dataset_text
from .errors import ExprParseError, PreconditionError, TableFormatError
from .exprlang import evaluate, parse_table, render_table
from .partitions import format_partition
from .pipeline import (
    ModuliTable,
    SlotReport,
    build_slot_report,
    closed_moduli_series,
    open_moduli_series,
    required_inputs,
    stable_slots,
)
from .plethysm import GluingMode
from .series import SymSeries, Truncation


@dataclass(frozen=True)
class CliConfig:
    command: str
    g: int | None = None
    n: int | None = None
    input_path: str | None = None
    truncation: int = 5
    delta_mode: GluingMode = GluingMode.GRADED
    fmt: str = "text"
    withhold: tuple[int, int] | None = None
    expression: str | None = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablemoduli",
        description=(
            "Exact equivariant Serre polynomials of moduli spaces of stable "
            "curves, computed from those of the open strata."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, slot: bool) -> None:
        if slot:
            p.add_argument("--g", type=int, required=True, help="genus")
            p.add_argument("--n", type=int, required=True, help="marked points")
        p.add_argument("--input", dest="input_path", help="dataset file override")
        p.add_argument(
            "--truncation", type=int, default=5, help="lambda-exponent bound (default 5)"
        )
        p.add_argument(
            "--delta-mode",
            choices=["graded", "literal"],
            default="graded",
            help="gluing-operator grading convention",
        )

    p_compute = sub.add_parser("compute", help="one (g, n) slot report")
    common(p_compute, slot=True)
    p_compute.add_argument("--format", dest="fmt", choices=["text", "json", "latex"], default="text")
    p_compute.add_argument(
        "--withhold", metavar="G,N", help="zero out one table entry, e.g. 3,1"
    )

    p_table = sub.add_parser("table", help="reports for all slots within truncation")
    common(p_table, slot=False)
    p_table.add_argument("--format", dest="fmt", choices=["text", "json", "latex"], default="text")
    p_table.add_argument("--withhold", metavar="G,N", help="zero out one table entry")

    p_verify = sub.add_parser("verify", help="run the built-in check suite")
    common(p_verify, slot=False)

    p_expr = sub.add_parser("expr", help="evaluate an expression to a power-sum series")
    p_expr.add_argument("expression", help="e.g. 'q*s[4] - s[2,2]'")
    p_expr.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")

    p_inputs = sub.add_parser("inputs", help="open-moduli entries a slot depends on")
    p_inputs.add_argument("--g", type=int, required=True)
    p_inputs.add_argument("--n", type=int, required=True)
    p_inputs.add_argument("--input", dest="input_path", help="dataset file override")

    return parser


class UsageError(Exception):
    """Usage problem detected after argparse (maps to exit code 2)."""


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    withhold = None
    raw = getattr(ns, "withhold", None)
    if raw is not None:
        pieces = raw.split(",")
        if len(pieces) != 2 or not all(p.strip().isdigit() for p in pieces):
            raise UsageError(f"--withhold expects 'g,n', got {raw!r}")
        withhold = (int(pieces[0]), int(pieces[1]))
    return CliConfig(
        command=ns.command,
        g=getattr(ns, "g", None),
        n=getattr(ns, "n", None),
        input_path=getattr(ns, "input_path", None),
        truncation=getattr(ns, "truncation", 5),
        delta_mode=GluingMode(getattr(ns, "delta_mode", "graded")),
        fmt=getattr(ns, "fmt", "text"),
        withhold=withhold,
        expression=getattr(ns, "expression", None),
    )


def load_table(cfg: CliConfig) -> ModuliTable:
    if cfg.input_path is None:
        text = dataset_text()
    else:
        try:
            text = Path(cfg.input_path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read dataset file: {exc}") from exc
    table = parse_table(text)
    if cfg.withhold is not None:
        table = table.withhold(*cfg.withhold)
    return table


def _closed_series(cfg: CliConfig, table: ModuliTable) -> SymSeries:
    trunc = Truncation.standard(cfg.truncation)
    return closed_moduli_series(open_moduli_series(table, trunc), cfg.delta_mode)


def _warn_missing(table: ModuliTable, needed: list[tuple[int, int]]) -> None:
    for (h, m) in needed:
        if (h, m) not in table.entries:
            print(
                f"warning: no table entry for M[{h},{m}]; it contributes zero",
                file=sys.stderr,
            )


def _emit_report(report: SlotReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_json_obj(), indent=2)
    if fmt == "latex":
        return report.render_latex()
    return report.render_text()


def run_compute(cfg: CliConfig) -> int:
    if cfg.truncation < 2 * cfg.g - 2 + cfg.n:
        raise PreconditionError(
            f"slot ({cfg.g}, {cfg.n}) sits at lambda^{2 * cfg.g - 2 + cfg.n}, "
            f"beyond truncation {cfg.truncation}"
        )
    table = load_table(cfg)
    _warn_missing(table, required_inputs(cfg.g, cfg.n))
    closed = _closed_series(cfg, table)
    report = build_slot_report(closed, cfg.g, cfg.n)
    print(_emit_report(report, cfg.fmt))
    return 0


def run_table(cfg: CliConfig) -> int:
    table = load_table(cfg)
    slots = stable_slots(cfg.truncation)
    _warn_missing(table, slots)
    closed = _closed_series(cfg, table)
    reports = [build_slot_report(closed, g, n) for (g, n) in slots]
    if cfg.fmt == "json":
        print(json.dumps([r.to_json_obj() for r in reports], indent=2))
    elif cfg.fmt == "latex":
        print("\n".join(r.render_latex() for r in reports))
    else:
        print("\n\n".join(r.render_text() for r in reports))
    return 0


def run_expr(cfg: CliConfig) -> int:
    value = evaluate(cfg.expression)
    if cfg.fmt == "json":
        print(json.dumps(value.to_json_obj(), indent=2))
    else:
        print(value.render())
    return 0


def run_inputs(cfg: CliConfig) -> int:
    needed = required_inputs(cfg.g, cfg.n)
    table = load_table(cfg)
    for (h, m) in needed:
        suffix = "" if (h, m) in table.entries else "  (missing from dataset)"
        print(f"M[{h},{m}]{suffix}")
    return 0


# -- verification suite --------------------------------------------------------


EXPECTED_RANKS = {
    (1, 1): "q + 1",
    (0, 4): "q + 1",
    (0, 5): "q^2 + 5q + 1",
    (0, 6): "q^3 + 16q^2 + 16q + 1",
    (3, 1): "q^7 + 5q^6 + 16q^5 + 29q^4 + 29q^3 + 16q^2 + 5q + 1",
}
EXPECTED_CORRECTION = "3q^6 + 15q^5 + 29q^4 + 29q^3 + 16q^2 + 4q"


def _rank_text(closed: SymSeries, g: int, n: int) -> str:
    rank = closed.rank(2 * g - 2 + n, n)
    return rank.render_q() if rank.is_diagonal() else rank.render()


def run_verify(cfg: CliConfig) -> int:
    table = load_table(cfg)
    trunc = Truncation.standard(cfg.truncation)
    closed = _closed_series(cfg, table)
    if cfg.delta_mode is GluingMode.LITERAL:
        print(
            "note: literal gluing mode exists to demonstrate misplaced boundary "
            "strata; failures below are the expected demonstration"
        )

    checks: list[tuple[str, str, str]] = []

    for (g, n), expected in sorted(EXPECTED_RANKS.items(), key=lambda kv: (2 * kv[0][0] - 2 + kv[0][1], kv[0])):
        if 2 * g - 2 + n <= cfg.truncation:
            checks.append((f"rank M[{g},{n}]", expected, _rank_text(closed, g, n)))

    if cfg.truncation >= 5 and (3, 1) in table.entries:
        withheld = closed_moduli_series(
            open_moduli_series(table.withhold(3, 1), trunc), cfg.delta_mode
        )
        checks.append(
            (
                "boundary correction M[3,1] with its entry withheld",
                EXPECTED_CORRECTION,
                _rank_text(withheld, 3, 1),
            )
        )

    if cfg.truncation >= 2:
        schur04 = build_slot_report(closed, 0, 4).equivariant
        actual = "; ".join(
            f"s{format_partition(mu)} * ({c.render_q() if c.is_diagonal() else c.render()})"
            for mu, c in schur04
        )
        checks.append(("schur M[0,4]", "s[4] * (q + 1)", actual or "0"))

    bad_slots = []
    for (g, n) in stable_slots(cfg.truncation):
        report = build_slot_report(closed, g, n)
        ok = report.duality_ok and report.off_diagonal is None
        for _, coeff in report.equivariant:
            if not coeff.is_diagonal() or not coeff.is_integral():
                ok = False
                break
            if any(c < 0 for _, c in coeff.q_coefficients()):
                ok = False
                break
        if not ok:
            bad_slots.append(f"M[{g},{n}]")
    checks.append(
        (
            "functional equation, integrality and positivity on all slots",
            "all slots pass",
            "all slots pass" if not bad_slots else "failing: " + ", ".join(bad_slots),
        )
    )

    rendered = render_table(table)
    roundtrip_ok = parse_table(rendered) == table and render_table(parse_table(rendered)) == rendered
    checks.append(
        (
            "table render/parse round trip",
            "fixed point",
            "fixed point" if roundtrip_ok else "differs",
        )
    )

    failures = 0
    for name, expected, actual in checks:
        status = "pass" if expected == actual else "FAIL"
        failures += status == "FAIL"
        print(f"check {name}: expected {expected}; actual {actual} -> {status}")
    if failures:
        print(f"{failures} of {len(checks)} checks failed")
        return 5
    print(f"all {len(checks)} checks passed")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        if cfg.command == "compute":
            return run_compute(cfg)
        if cfg.command == "table":
            return run_table(cfg)
        if cfg.command == "verify":
            return run_verify(cfg)
        if cfg.command == "expr":
            return run_expr(cfg)
        if cfg.command == "inputs":
            return run_inputs(cfg)
        raise UsageError(f"unknown command {cfg.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ExprParseError, TableFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
