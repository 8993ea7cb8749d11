"""Command-line frontend: ``polybu gcode|analyze|height|table|verify``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from .classify import NONTIDY, TIDY, AnalysisReport, ConsistencyError, EmptySpaceError, classify
from .cohomology import InconsistentRingError, build_ring
from .genetics import CodeError, GeneticCode, parse_code, validate_code
from .lengths import LengthError, LengthVector, genetic_code, is_generic, parse_lengths
from .quasieq import residue_table, table_mismatches
from .verify import FAMILIES, sweep

EXIT_OK, EXIT_INPUT, EXIT_NONGENERIC, EXIT_CONSISTENCY = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str, source: str | None = None):
        super().__init__(message)
        self.code, self.kind, self.source = code, kind, source


def load_schema(name: str) -> dict:
    """JSON schema shipped with the package: report, gcode, height, table, verify, error."""
    text = resources.files("polybu").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


# -- input handling -----------------------------------------------------------


def _parse_entry(text: str, n: int | None):
    """A line is a genetic code when it contains a brace, else a length vector."""
    text = text.strip()
    try:
        if "{" in text:
            code = parse_code(text, n)
            status = validate_code(code)
            if not status.valid:
                raise CodeError("; ".join(status.problems))
            return code
        return parse_lengths(text)
    except (LengthError, CodeError, ValueError) as exc:
        raise CliError(EXIT_INPUT, "invalid-input", str(exc), text) from None


def _entries(args) -> list[str]:
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise CliError(EXIT_INPUT, "invalid-input", f"cannot read {args.file}: {exc.strerror}")
        out = []
        for line in lines:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(line)
        return out
    if getattr(args, "code", None) is not None:
        return [args.code]
    return [args.lengths]


def _resolve_code(obj) -> tuple[GeneticCode, LengthVector | None]:
    if isinstance(obj, LengthVector):
        if not is_generic(obj):
            raise CliError(EXIT_NONGENERIC, "non-generic", f"length vector {obj} is not generic", str(obj))
        code = genetic_code(obj)
        if code is None:
            raise CliError(EXIT_INPUT, "empty-space",
                           f"length vector {obj} has a side at least the sum of the others: the space is empty",
                           str(obj))
        return code, obj
    return obj, None


# -- rendering ----------------------------------------------------------------


def _iv(iv) -> str:
    lo, hi = iv
    return str(lo) if lo == hi else f"[{lo},{hi}]"


def verdict_line(report: AnalysisReport) -> str:
    h, ind, co = report.height, report.index, report.coindex
    if report.tidiness == TIDY:
        return f"ht=ind=coind={h}  {TIDY}"
    if report.tidiness == NONTIDY:
        return f"coind={_iv(co)} < ind={_iv(ind)}  {NONTIDY}"
    return f"coind={_iv(co)}, ht={h}, ind={_iv(ind)}  {report.tidiness}"


def render_report(report: AnalysisReport, fmt: str = "text") -> str:
    if fmt == "json":
        return dumps(report.to_dict())
    lines = []
    if report.lengths is not None:
        lines.append(f"lengths:      {report.lengths}")
    lines += [
        f"genetic code: ⟨{report.genetic_code}⟩  (n={report.n}, m={report.m})",
        f"height:       {report.height}",
        f"index:        {_iv(report.index)}",
        f"coindex:      {_iv(report.coindex)}",
        f"verdict:      {verdict_line(report)}",
        f"BU-triple:    d=m {report.bu_top}; guaranteed for d <= {report.bu_max_guaranteed}",
    ]
    for note in report.annotations:
        lines.append(f"topology:     {note}")
    if report.conjecture:
        c = report.conjecture
        tag = "proven" if c["proven"] else "unproven"
        lines.append(f"{c['label']}: {c['statement']} = {c['value']} ({tag})")
    lines.append("provenance:")
    lines += [f"  - {p}" for p in report.provenance]
    if report.consistent:
        lines.append("consistency:  ok")
    else:
        lines.append("consistency:  CONFLICT")
        lines += [f"  ! {c}" for c in report.consistency]
    return "\n".join(lines)


def render_table(emax: int, fmt: str = "text") -> str:
    tables = {e: residue_table(e) for e in range(2, emax + 1)}
    if fmt == "json":
        return dumps({str(e): {str(k): v for k, v in t.rows.items()} for e, t in tables.items()})
    es = list(tables)
    cells = {e: {k: ",".join(map(str, v)) for k, v in t.rows.items()} for e, t in tables.items()}
    width = max([5] + [len(c) for col in cells.values() for c in col.values()])
    head = "ht \\ e".ljust(8) + " ".join(str(e).ljust(width) for e in es)
    mods = "mod".ljust(8) + " ".join(str(tables[e].modulus).ljust(width) for e in es)
    out = [
        "# residues of n (not n-2) modulo 2^(t+1), 2^t <= e < 2^(t+1); row n-i holds n with height n-i",
        head.rstrip(),
        mods.rstrip(),
    ]
    for off in range(0, emax + 1):
        row = f"n-{off + 3}".ljust(8) + " ".join(cells[e].get(off, "").ljust(width) for e in es)
        out.append(row.rstrip())
    return "\n".join(out)


# -- per-entry work (module level so worker processes can pickle it) -----------


def _error_text(exc: CliError, fmt: str) -> str:
    if fmt == "json":
        return dumps({"error": exc.kind, "message": str(exc), "input": exc.source, "exit": exc.code})
    where = f" [{exc.source}]" if exc.source else ""
    return f"error ({exc.kind}){where}: {exc}"


def _gcode_one(text: str, n: int | None, fmt: str):
    obj = _parse_entry(text, n)
    if not isinstance(obj, LengthVector):
        raise CliError(EXIT_INPUT, "invalid-input", "gcode takes length vectors, not codes", text)
    generic = is_generic(obj)
    code = genetic_code(obj) if generic else None
    rec = {"n": obj.n, "generic": generic, "genetic_code": str(code) if code is not None else None}
    if generic and code is None:
        rec["empty"] = True
    if fmt == "json":
        out = dumps(rec)
    elif not generic:
        out = f"{obj}: not generic"
    elif code is None:
        out = f"{obj}: empty space (longest side too long)"
    else:
        out = f"{obj}: ⟨{code}⟩"
    if not generic:
        return out, _error_text(CliError(EXIT_NONGENERIC, "non-generic", f"length vector {obj} is not generic", str(obj)), fmt), EXIT_NONGENERIC
    return out, None, EXIT_OK


def _analyze_one(text: str, n: int | None, fmt: str):
    obj = _parse_entry(text, n)
    code, lengths = _resolve_code(obj)
    try:
        report = classify(lengths if lengths is not None else code)
    except (ConsistencyError, InconsistentRingError) as exc:
        raise CliError(EXIT_CONSISTENCY, "consistency", str(exc), text) from None
    except EmptySpaceError as exc:
        raise CliError(EXIT_INPUT, "empty-space", str(exc), text) from None
    if not report.consistent:
        err = CliError(EXIT_CONSISTENCY, "consistency", "; ".join(report.consistency), text)
        return render_report(report, fmt), _error_text(err, fmt), EXIT_CONSISTENCY
    return render_report(report, fmt), None, EXIT_OK


def _height_one(text: str, n: int | None, fmt: str, verbose: bool = False):
    obj = _parse_entry(text, n)
    code, _ = _resolve_code(obj)
    try:
        ring = build_ring(code)
    except InconsistentRingError as exc:
        raise CliError(EXIT_CONSISTENCY, "consistency", str(exc), text) from None
    h = ring.sw_height()
    rec = {"n": code.n, "m": ring.m, "genetic_code": str(code), "height": h}
    if verbose:
        rec["degrees"] = ring.diagnostics()
    if fmt == "json":
        return dumps(rec), None, EXIT_OK
    lines = [f"⟨{code}⟩: height {h} (m={ring.m})"]
    if verbose:
        lines += [f"  H^{d}: {v['quotient_rank']} (span {v['span_size']}, relations {v['rank']})"
                  for d, v in rec["degrees"].items()]
    return "\n".join(lines), None, EXIT_OK


def _run_one(job):
    fn, text, n, fmt, extra = job
    try:
        return fn(text, n, fmt, *extra)
    except CliError as exc:
        return None, _error_text(exc, fmt), exc.code


# -- commands -----------------------------------------------------------------


def _batch(args, fn, extra=()) -> int:
    entries = _entries(args)
    n = getattr(args, "n", None)
    jobs = [(fn, text, n, args.format, extra) for text in entries]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    status = EXIT_OK
    text_mode = args.format == "text"
    for i, (out, err, code) in enumerate(results):
        if out is not None:
            if text_mode and fn is _analyze_one and i:
                print()
            print(out)
        if err is not None:
            print(err, file=sys.stderr)
        status = max(status, code)
    return status


def cmd_table(args) -> int:
    if args.emax < 2:
        raise CliError(EXIT_INPUT, "invalid-input", "--emax must be at least 2")
    print(render_table(args.emax, args.format))
    bad = table_mismatches(args.emax)
    if bad:
        for line in bad:
            print(_error_text(CliError(EXIT_CONSISTENCY, "consistency", line), args.format), file=sys.stderr)
        return EXIT_CONSISTENCY
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_n < 4:
        raise CliError(EXIT_INPUT, "invalid-input", "--max-n must be at least 4")
    families = FAMILIES if args.family == "all" else (args.family,)
    status = EXIT_OK
    for fam in families:
        res = sweep(fam, args.max_n, jobs=args.jobs)
        if args.format == "json":
            print(dumps(res.to_dict()))
        else:
            print(f"{fam} (n <= {args.max_n}): {res.codes} codes, "
                  f"{res.checks} checks, {len(res.mismatches)} mismatches")
            for line in res.mismatches:
                print(f"  ! {line}")
        if res.mismatches:
            status = EXIT_CONSISTENCY
    return status


def _add_inputs(p, codes: bool = True):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--lengths", metavar="CSV", help="comma-separated side lengths")
    if codes:
        src.add_argument("--code", metavar="STRING", help="genetic code, e.g. '{2,4,9},{6,9}'")
    src.add_argument("--file", metavar="PATH", help="one length vector or code per line, '#' comments")
    if codes:
        p.add_argument("--n", type=int, help="number of sides, when the code alone does not fix it")


def _add_common(p):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for batch input")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polybu", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gcode", help="genetic code of a length vector")
    _add_inputs(p, codes=False)
    _add_common(p)
    p.set_defaults(run=lambda a: _batch(a, _gcode_one))

    p = sub.add_parser("analyze", help="height, index, coindex, tidiness and BU verdicts")
    _add_inputs(p)
    _add_common(p)
    p.set_defaults(run=lambda a: _batch(a, _analyze_one))

    p = sub.add_parser("height", help="Stiefel-Whitney height from the cohomology engine")
    _add_inputs(p)
    _add_common(p)
    p.add_argument("-v", "--verbose", action="store_true", help="also print per-degree ranks")
    p.set_defaults(run=lambda a: _batch(a, _height_one, (a.verbose,)))

    p = sub.add_parser("table", help="residue table of quasi-equilateral heights")
    p.add_argument("--emax", type=int, default=6)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(run=cmd_table)

    p = sub.add_parser("verify", help="closed forms against the engine")
    p.add_argument("--family", choices=FAMILIES + ("all",), default="all")
    p.add_argument("--max-n", type=int, default=9)
    _add_common(p)
    p.set_defaults(run=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.run(args)
    except CliError as exc:
        print(_error_text(exc, getattr(args, "format", "text")), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
