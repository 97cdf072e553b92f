"""Command line front end.

A single JSON problem document describes the input; the command picks the
computation.  Reports are plain dicts whose exact numbers are strings, so the
json output is byte-stable for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Mapping

from .counting import (
    DEFAULT_BUDGET,
    brute_force_count,
    fm_brute,
    fm_count,
    formula_count,
    lift_brute,
    lift_problem,
    q8_survey,
)
from .errors import BudgetExceeded, ConventionError, InvalidInput, SurfsecError
from .geometry import extension_from_spec
from .groups import FiniteGroup, build_group, trivial
from .reps import irr_catalog, irreps_from_spec
from .statesum import (
    CWSurface,
    GSystem,
    central_idempotents,
    crossed_axioms_check,
    g_center,
    group_algebra_biangular,
    idempotent_rep_match,
    one_face_scheme,
    quotient,
    state_sum,
)

COMMANDS = ("count", "exists", "verify", "fm", "lift", "q8-survey", "center", "statesum", "selftest")

EXIT_OK, EXIT_CONVENTION, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3, 4


class CommandFailed(ConventionError):
    """A computation finished but its internal cross-check disagreed."""

    def __init__(self, message: str, report: dict) -> None:
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------------------
# ingestion helpers


def _require(doc: Mapping, key: str) -> Any:
    if key not in doc:
        raise InvalidInput(f"problem document is missing {key!r}")
    return doc[key]


def _grading(doc: Mapping) -> tuple[FiniteGroup, FiniteGroup, tuple[int, ...]]:
    """cover group plus grading: explicit base and q, a kernel, or trivial."""
    cover = build_group(_require(doc, "cover"))
    if "kernel" in doc:
        base, q = quotient(cover, [cover.index(x) for x in doc["kernel"]])
        return cover, base, q
    if "base" in doc:
        base = build_group(doc["base"])
        raw = _require(doc, "q")
        if isinstance(raw, Mapping):
            q = [None] * cover.order
            for k, v in raw.items():
                q[cover.index(k)] = base.index(v)
            if None in q:
                raise InvalidInput("q must give an image for every cover element")
        else:
            q = [base.index(v) for v in raw]
        return cover, base, tuple(q)
    base = trivial()
    return cover, base, (base.identity,) * cover.order


def _base_element(cover: FiniteGroup, base: FiniteGroup, q, name, via_cover: bool) -> int:
    return q[cover.index(name)] if via_cover else base.index(name)


# ---------------------------------------------------------------------------
# commands


def cmd_count(doc: Mapping, opts) -> dict:
    E = extension_from_spec(doc.get("extension", doc))
    irreps = irreps_from_spec(E.phi, doc.get("irreps"))
    report = formula_count(E, irreps)
    if opts.verify:
        report.brute_value = brute_force_count(E, opts.budget, opts.jobs)
    out = report.to_dict()
    out["boundary"] = E.surface.boundary
    if opts.verify and not report.agrees:
        raise CommandFailed("formula and enumeration disagree", out)
    return out


def cmd_exists(doc: Mapping, opts) -> dict:
    E = extension_from_spec(doc.get("extension", doc))
    report = formula_count(E, irreps_from_spec(E.phi, doc.get("irreps")))
    return {"exists": report.exists, "existence_sum": str(report.existence_sum)}


def cmd_verify(doc: Mapping, opts) -> dict:
    E = extension_from_spec(doc.get("extension", doc))
    report = formula_count(E, irreps_from_spec(E.phi, doc.get("irreps")))
    report.brute_value = brute_force_count(E, opts.budget, opts.jobs)
    out = report.to_dict()
    out["boundary"] = E.surface.boundary
    out["agrees"] = bool(report.agrees)
    out["diff"] = str(report.formula_value - report.brute_value)
    if not report.agrees:
        raise CommandFailed("formula and enumeration disagree", out)
    return out


def cmd_fm(doc: Mapping, opts) -> dict:
    g = build_group(_require(doc, "group"))
    genus = int(_require(doc, "genus"))
    classes = [g.class_of(g.index(x)) for x in doc.get("classes", [])]
    irreps = irreps_from_spec(g, doc.get("irreps")) if doc.get("irreps") else irr_catalog(g)
    value = fm_count(g, genus, classes, irreps)
    out: dict = {"formula": str(value)}
    if not getattr(opts, "no_oracle", False):
        out["brute"] = fm_brute(g, genus, classes, opts.budget)
        if out["brute"] != value:
            raise CommandFailed("formula and enumeration disagree", out)
    return out


def cmd_lift(doc: Mapping, opts) -> dict:
    cover, base, q = _grading(doc)
    genus = int(_require(doc, "genus"))
    via_cover = "kernel" in doc
    images = [_base_element(cover, base, q, x, via_cover) for x in _require(doc, "g_images")]
    problem = lift_problem(cover, base, q, images, genus)
    report = formula_count(problem.extension)
    if not getattr(opts, "no_oracle", False):
        report.brute_value = lift_brute(problem, opts.budget)
    out = report.to_dict()
    out["boundary"] = 0
    out["kernel_order"] = problem.kernel.order
    if report.brute_value is not None and not report.agrees:
        raise CommandFailed("formula and enumeration disagree", out)
    return out


def cmd_q8_survey(doc: Mapping, opts) -> dict:
    values, freq = q8_survey(with_pairs=True)
    return {"values": sorted(values), "pairs": {str(k): freq[k] for k in sorted(freq)}}


def cmd_center(doc: Mapping, opts) -> dict:
    cover, base, q = _grading(doc)
    B = group_algebra_biangular(cover, base, q)
    L = g_center(B)
    report = crossed_axioms_check(L)
    out: dict = {
        "algebra_dim": B.dim,
        "dimensions": {base.label(a): L.dim(a) for a in base.elements},
        "total_dim": L.dim(),
        "axioms_ok": report.ok,
        "violations": report.violations,
    }
    if base.order == 1:
        irreps = irreps_from_spec(cover, doc.get("irreps"))
        ids = central_idempotents(cover, irreps)
        match = idempotent_rep_match(ids, irreps)
        out["idempotents"] = [
            {"rep": irreps[k].label, "dim": irreps[k].degree, "eta_ii": str(B.eta_form(i, i))}
            for i, k in zip(ids, match)
        ]
    if not report.ok:
        raise CommandFailed(report.summary(), out)
    return out


def cmd_statesum(doc: Mapping, opts) -> dict:
    cover, base, q = _grading(doc)
    B = group_algebra_biangular(cover, base, q)
    surf = doc.get("surface", {"genus": 1})
    S = one_face_scheme(int(surf["genus"])) if "faces" not in surf else CWSurface.from_spec(surf)
    raw = doc.get("gsystem", {})
    unknown = set(raw) - set(S.edges)
    if unknown:
        raise InvalidInput(f"G-system names unknown edges {sorted(unknown)}")
    g = GSystem(base, {e: base.index(raw[e]) if e in raw else base.identity for e in S.edges})
    value = state_sum(B, S, g)
    return {
        "value": str(value),
        "euler": S.euler,
        "vertices": S.vertex_count(),
        "edges": len(S.edges),
        "faces": len(S.faces),
        "kernel_order": cover.order // base.order,
    }


def cmd_selftest(doc: Mapping, opts) -> dict:
    from .selftest import run_selftest

    results = run_selftest(doc.get("checks"))
    out = {
        "ok": all(r.ok for r in results),
        "checks": [
            {"name": r.name, "ok": r.ok, "instances": r.instances, "failures": r.failures[:10]} for r in results
        ],
    }
    if opts.timings:
        for entry, r in zip(out["checks"], results):
            entry["seconds"] = round(r.seconds, 2)
    if not out["ok"]:
        raise CommandFailed("self-test failures", out)
    return out


HANDLERS: dict[str, Callable[[Mapping, Any], dict]] = {
    "count": cmd_count,
    "exists": cmd_exists,
    "verify": cmd_verify,
    "fm": cmd_fm,
    "lift": cmd_lift,
    "q8-survey": cmd_q8_survey,
    "center": cmd_center,
    "statesum": cmd_statesum,
    "selftest": cmd_selftest,
}


def run(command: str, doc: Mapping, opts) -> dict:
    if command not in HANDLERS:
        raise InvalidInput(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")
    return HANDLERS[command](doc, opts)


# ---------------------------------------------------------------------------
# output


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def emit_report(command: str, report: dict, fmt: str = "json") -> str:
    report = _plain(report)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "tsv":
        return _tsv(report)
    if fmt == "human":
        return _human(command, report)
    raise InvalidInput(f"unknown format {fmt!r}")


def _term_rows(report: dict) -> tuple[list[str], list[list[str]]]:
    with_t = report.get("boundary", 0) > 0
    header = ["rep", "dim", "in_I0"] + (["t"] if with_t else []) + ["zeta", "term"]
    rows = []
    for t in report["terms"]:
        row = [t["rep"], str(t["dim"]), "yes" if t["in_I0"] else "no"]
        if with_t:
            row.append(",".join(str(x) for x in t["t"]))
        row += [t["zeta_eval"] if t["zeta_eval"] is not None else "-", t["term"]]
        rows.append(row)
    return header, rows


def _table(header: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    fmt = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()  # noqa: E731
    return [fmt(header), fmt(["-" * w for w in widths])] + [fmt(r) for r in rows]


def _human(command: str, report: dict) -> str:
    lines: list[str] = []
    if "terms" in report:
        header, rows = _term_rows(report)
        lines += _table(header, rows)
        lines.append("")
        lines.append(f"total (formula): {report['formula']}")
        lines.append(f"existence sum:   {report['existence_sum']}")
        lines.append(f"section exists:  {'yes' if report['exists'] else 'no'}")
        if "brute" in report:
            lines.append(f"enumeration:     {report['brute']}")
        for key in ("kernel_order", "agrees", "diff"):
            if key in report:
                lines.append(f"{key}: {report[key]}")
    elif command == "q8-survey":
        lines.append("values: " + ", ".join(str(v) for v in report["values"]))
        lines += _table(["count", "pairs"], [[k, str(v)] for k, v in report["pairs"].items()])
    elif command == "center":
        lines += _table(["grade", "dim L"], [[k, str(v)] for k, v in report["dimensions"].items()])
        lines.append(f"crossed-algebra axioms: {'pass' if report['axioms_ok'] else 'FAIL'}")
        for v in report["violations"]:
            lines.append(f"  axiom {v['axiom']} at ({v['alpha']}, {v['beta']}): {v['detail']}")
        if "idempotents" in report:
            lines += _table(["rep", "dim", "eta(i,i)"], [[d["rep"], str(d["dim"]), d["eta_ii"]] for d in report["idempotents"]])
    elif command == "selftest":
        for c in report["checks"]:
            secs = f" ({c['seconds']}s)" if "seconds" in c else ""
            lines.append(f"{'PASS' if c['ok'] else 'FAIL'} {c['name']}: {c['instances']} instances{secs}")
            lines += [f"    {f}" for f in c["failures"]]
    else:
        for k in sorted(report):
            lines.append(f"{k}: {_scalar(report[k])}")
    return "\n".join(lines) + "\n"


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _tsv(report: dict) -> str:
    lines = []
    for k in sorted(report):
        if k == "terms":
            continue
        lines.append(f"{k}\t{_scalar(report[k])}")
    if "terms" in report:
        header, rows = _term_rows(report)
        lines.append("")
        lines.append("\t".join(header))
        lines += ["\t".join(r) for r in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surfsec", description="Exact section counts for surface bundles with finite fiber group.")
    p.add_argument("command_pos", nargs="?", metavar="COMMAND", help=f"one of: {', '.join(COMMANDS)}")
    p.add_argument("--command", dest="command_flag", choices=COMMANDS)
    p.add_argument("--spec", type=Path, help="JSON problem document")
    p.add_argument("--verify", action="store_true", help="also run the enumeration oracle (count)")
    p.add_argument("--no-oracle", action="store_true", help="skip the oracle for fm and lift")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", choices=("human", "json", "tsv"), default="human")
    p.add_argument("--out", type=Path)
    p.add_argument("--timings", action="store_true", help="include wall-clock seconds in selftest output")
    return p


def load_spec(path: Path | None) -> dict:
    if path is None:
        return {}
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read spec file: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"spec is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InvalidInput("spec must be a JSON object")
    return doc


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET
    if isinstance(exc, ConventionError):
        return EXIT_CONVENTION
    return EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command_flag or args.command_pos
    if command is None:
        print("error: no command given", file=sys.stderr)
        return EXIT_INPUT
    if args.command_flag and args.command_pos and args.command_flag != args.command_pos:
        print("error: conflicting commands", file=sys.stderr)
        return EXIT_INPUT
    try:
        doc = load_spec(args.spec)
        report = run(command, doc, args)
        code = EXIT_OK
    except CommandFailed as exc:
        report, code = exc.report, EXIT_CONVENTION
        print(f"error: {exc}", file=sys.stderr)
    except SurfsecError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return exit_code(exc)
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error (InvalidInput): malformed problem document: {exc!r}", file=sys.stderr)
        return EXIT_INPUT
    text = emit_report(command, report, args.format)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
