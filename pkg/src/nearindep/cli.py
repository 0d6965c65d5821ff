"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
Data goes to stdout (or ``--output``), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from .families import FAMILY_NAMES, FamilyError, FamilySpec, build, closed_form_ng
from .graph import Graph6Error, GraphError, read_graph6_lines, to_graph6
from .invariants import report
from .search import SearchError, extremal_scan, verify_theorem

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

REPORT_FIELDS = ["order", "size", "sigma0", "sigma1", "ng_sum", "is_good"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    g6: str | None = None
    input: str | None = None
    order: int | None = None
    orders: list[int] = field(default_factory=list)
    objective: str | None = None
    theorem: str | None = None
    graph_class: str = "all"
    k: list[int] = field(default_factory=list)
    format: str = "text"
    threads: int = 1
    output: str | None = None
    name: str | None = None
    show_ng: bool = False

    def __post_init__(self):
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.subcommand == "compute" and (self.g6 is None) == (self.input is None):
            raise UsageError("compute needs exactly one of --g6 or --input")
        if self.g6 is not None and self.input is not None:
            raise UsageError("--g6 and --input are mutually exclusive")


def parse_orders(text: str) -> list[int]:
    """``"6..9"`` -> [6, 7, 8, 9]; ``"5"`` -> [5]; ``"1..3,7"`` -> [1, 2, 3, 7]."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("no orders given")
    return out


def _orders_arg(text):
    try:
        return parse_orders(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _k_arg(text):
    try:
        ks = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k list {text!r}") from None
    if any(k < 0 for k in ks):
        raise argparse.ArgumentTypeError("k must be nonnegative")
    return ks


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nearindep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, inputs=False):
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
        sp.add_argument("--output", help="write data here instead of stdout")
        if inputs:
            sp.add_argument("--g6", help="a single graph in graph6")
            sp.add_argument("--input", help="newline-delimited graph6 file, '-' for stdin")

    sp = sub.add_parser("compute", help="invariants of each input graph")
    common(sp, inputs=True)
    sp.add_argument("--k", type=_k_arg, action="append", default=[],
                    help="extra sigma_k to report (repeatable or comma list)")

    sp = sub.add_parser("family", help="build a named extremal family member")
    common(sp)
    sp.add_argument("--name", required=True, choices=list(FAMILY_NAMES))
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--show-ng", action="store_true", help="also print the closed-form NG sum")

    threads_default = os.cpu_count() or 1
    sp = sub.add_parser("search", help="exhaustive extremal scan")
    common(sp, inputs=True)
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--objective", required=True, choices=["ng-max", "ng-min", "sigma1-max"])
    sp.add_argument("--class", dest="graph_class", choices=["all", "trees"], default="all")
    sp.add_argument("--threads", type=int, default=threads_default)

    sp = sub.add_parser("verify", help="check a theorem's bound and equality cases")
    common(sp)
    sp.add_argument("--theorem", required=True,
                    choices=["ng-lower", "ng-lower-tree", "ng-max", "sigma1-max"])
    sp.add_argument("--orders", type=_orders_arg, required=True, help="inclusive range a..b")
    sp.add_argument("--threads", type=int, default=threads_default)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    ks = sorted({k for group in getattr(ns, "k", []) for k in group})
    return RunConfig(
        subcommand=ns.subcommand,
        g6=getattr(ns, "g6", None),
        input=getattr(ns, "input", None),
        order=getattr(ns, "order", None),
        orders=getattr(ns, "orders", None) or [],
        objective=getattr(ns, "objective", None),
        theorem=getattr(ns, "theorem", None),
        graph_class=getattr(ns, "graph_class", "all"),
        k=ks,
        format=ns.format,
        threads=getattr(ns, "threads", 1),
        output=ns.output,
        name=getattr(ns, "name", None),
        show_ng=getattr(ns, "show_ng", False),
    )


def _input_lines(cfg: RunConfig, stdin):
    if cfg.g6 is not None:
        return [cfg.g6]
    if cfg.input == "-":
        return stdin.buffer if hasattr(stdin, "buffer") else stdin
    with open(cfg.input, "rb") as fh:
        return fh.read().splitlines()


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_compute(cfg: RunConfig, stdin) -> tuple[int, str]:
    try:
        parsed = list(read_graph6_lines(_input_lines(cfg, stdin)))
    except Graph6Error as exc:
        raise UsageError(f"parse error: {exc}") from None
    reports = [(line, report(g, cfg.k)) for line, g in parsed]
    g6s = [to_graph6(g).decode() for _, g in parsed]
    extra = [f"sigma{k}" for k in cfg.k]
    if cfg.format == "json":
        return EXIT_OK, json.dumps([dict(graph6=s, **r.to_dict()) for s, (_, r) in zip(g6s, reports)], indent=2) + "\n"
    rows = []
    for s, (_, r) in zip(g6s, reports):
        d = r.to_dict()
        rows.append([s] + [d[f] for f in REPORT_FIELDS] + [r.sigma_k_extra[k] for k in cfg.k])
    header = ["graph6"] + REPORT_FIELDS + extra
    if cfg.format == "csv":
        return EXIT_OK, _csv(rows, header)
    if not rows:
        return EXIT_OK, ""
    lines = ["\t".join(header)] + ["\t".join(str(x) for x in row) for row in rows]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_family(cfg: RunConfig) -> tuple[int, str]:
    spec = FamilySpec.from_cli(cfg.name, cfg.order)
    g6 = to_graph6(build(spec)).decode()
    ng = closed_form_ng(spec) if cfg.show_ng else None
    if cfg.format == "json":
        d = {"family": cfg.name, "order": cfg.order, "graph6": g6}
        if cfg.show_ng:
            d["ng_sum"] = ng
        return EXIT_OK, json.dumps(d, indent=2) + "\n"
    if cfg.format == "csv":
        header = ["family", "order", "graph6"] + (["ng_sum"] if cfg.show_ng else [])
        return EXIT_OK, _csv([[cfg.name, cfg.order, g6] + ([ng] if cfg.show_ng else [])], header)
    return EXIT_OK, g6 + "\n" + (f"{ng}\n" if cfg.show_ng else "")


def _objective_name(cfg: RunConfig) -> str:
    return cfg.objective.replace("-", "_")


def cmd_search(cfg: RunConfig, stdin) -> tuple[int, str]:
    source = None
    if cfg.g6 is not None or cfg.input is not None:
        try:
            source = [g for _, g in read_graph6_lines(_input_lines(cfg, stdin))]
        except Graph6Error as exc:
            raise UsageError(f"parse error: {exc}") from None
    res = extremal_scan(cfg.order, _objective_name(cfg), cfg.graph_class, source, cfg.threads)
    d = res.to_dict()
    if cfg.format == "json":
        return EXIT_OK, json.dumps(d, indent=2) + "\n"
    if cfg.format == "csv":
        header = ["order", "objective", "value", "attainers", "classes_scanned"]
        return EXIT_OK, _csv([[d["order"], d["objective"], d["value"], " ".join(d["attainers"]),
                               d["classes_scanned"]]], header)
    lines = [
        f"order {d['order']}  objective {d['objective']}  value {d['value']}",
        f"classes scanned {d['classes_scanned']}",
        f"attainers ({len(d['attainers'])}):",
    ] + [f"  {a}" for a in d["attainers"]]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    rep = verify_theorem(cfg.theorem, cfg.orders, cfg.threads)
    code = EXIT_OK if rep.passed else EXIT_FAIL
    d = rep.to_dict()
    if cfg.format == "json":
        return code, json.dumps(d, indent=2) + "\n"
    if cfg.format == "csv":
        header = ["theorem", "order", "passed", "value", "bound", "expected_value",
                  "attainers", "expected_attainers", "counterexamples", "classes_scanned"]
        rows = []
        for c in d["checks"]:
            rows.append([d["theorem"], c["order"], c["passed"], c["value"], c["bound"], c["expected_value"],
                         " ".join(c["attainers"]),
                         "" if c["expected_attainers"] is None else " ".join(c["expected_attainers"]),
                         " ".join(c["counterexamples"]), c["classes_scanned"]])
        return code, _csv(rows, header)
    lines = [f"theorem {d['theorem']}: {'PASS' if rep.passed else 'FAIL'}"]
    for c in d["checks"]:
        lines.append(
            f"  n={c['order']:<3} {'pass' if c['passed'] else 'FAIL'}  value {c['value']}"
            f"  expected {c['expected_value']}  bound {c['bound']}  classes {c['classes_scanned']}"
            f"  attainers {' '.join(c['attainers'])}"
        )
        if c["counterexamples"]:
            lines.append(f"       counterexamples {' '.join(c['counterexamples'])}")
        if c["expected_attainers"] is not None and c["expected_attainers"] != c["attainers"]:
            lines.append(f"       expected attainers {' '.join(c['expected_attainers'])}")
    return code, "\n".join(lines) + "\n"


def run(cfg: RunConfig, stdin=None) -> tuple[int, str]:
    stdin = stdin if stdin is not None else sys.stdin
    if cfg.subcommand == "compute":
        return cmd_compute(cfg, stdin)
    if cfg.subcommand == "family":
        return cmd_family(cfg)
    if cfg.subcommand == "search":
        return cmd_search(cfg, stdin)
    return cmd_verify(cfg)


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        code, text = run(cfg, stdin)
    except (UsageError, FamilyError, SearchError, GraphError, OSError) as exc:
        print(f"nearindep: error: {exc}", file=stderr)
        return EXIT_USAGE
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
