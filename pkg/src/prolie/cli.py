"""Command-line interface: ``prolie COMMAND FILE [options]``.

Exit codes: 0 success, 1 a requested certification failed, 2 usage or
parse error, 3 internal error.
"""

import argparse
import sys
from pathlib import Path

from . import catalog
from .constructions import ExtensionSpec, TorusAction, build_extension, central_extension, current_algebra
from .constructions import direct_sum, exp_derivation
from .derivations import (
    center_and_inner,
    characteristically_pronilpotent,
    derivation_space,
    inner_derivation,
    rank,
    root_decomposition,
    torus_system,
)
from .dsl import parse_cocycle, parse_dsl, parse_sum, to_dsl
from .errors import ProlieError, UsageError, VerdictFailure
from .filtration import nilpotency_profile, series, solvability_profile, truncate
from .presentation import check_jacobi, classify_weighting, elem_str
from .report import Report, jsonable
from .seeding import content_hash, set_override
from .verdict import Verdict

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def _windows(text):
    try:
        ws = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("windows are comma-separated integers, got %r" % text)
    if not ws or any(w < 0 for w in ws):
        raise argparse.ArgumentTypeError("need at least one non-negative window")
    return ws


def read_source(ref):
    """Text of a ``.lie`` file, ``catalog:NAME`` or a bare catalog name."""
    if ref.startswith("catalog:"):
        return catalog.source(ref[len("catalog:"):])
    path = Path(ref)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    try:
        return catalog.source(ref)
    except ProlieError:
        raise UsageError("no such file or catalog algebra: %s" % ref)


def read_cocycle(ref):
    if ref.startswith("catalog:"):
        return catalog.cocycle_source(ref[len("catalog:"):])
    path = Path(ref)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    try:
        return catalog.cocycle_source(ref)
    except ProlieError:
        raise UsageError("no such cocycle file or catalog cocycle: %s" % ref)


def _names(q, vectors):
    return [jsonable(q.element_vector(v)) for v in vectors]


def _write_out(args, p, results):
    if getattr(args, "out", None):
        Path(args.out).write_text(to_dsl(p), encoding="utf-8")
        results["written"] = args.out
    else:
        results["presentation"] = to_dsl(p)


# commands; each returns (results, verdicts, warnings, windows)

def cmd_check(p, args, text):
    M = args.window
    kind = classify_weighting(p, M)
    v = check_jacobi(p, M)
    return {"name": p.name, "weighting": kind, "truncation": p.truncation,
            "dim": truncate(p, M).dim if kind != "invalid" else None}, [v], [], [M]


def cmd_series(p, args, text):
    q = truncate(p, args.window)
    ch = series(q, args.kind)
    return {"kind": args.kind, "dims": ch.dims, "layer_dims": ch.layer_dims, "stabilized": ch.stabilized,
            "terms": [_names(q, t.basis()) for t in ch.terms]}, [], [], [args.window]


def cmd_profile(p, args, text):
    nil = nilpotency_profile(p, args.windows)
    sol = solvability_profile(p, args.windows)
    res = {
        "lcs": {"dims": nil.dims, "layers": nil.layers, "stable_layers": nil.stable_layers},
        "derived": {"dims": sol.dims, "layers": sol.layers, "stable_layers": sol.stable_layers},
        "truncation": nil.mode,
    }
    warn = sorted(set(nil.warnings) | set(sol.warnings))
    return res, list(nil.verdicts) + list(sol.verdicts), warn, sorted(set(args.windows))


def cmd_torus(p, args, text):
    _, t = torus_system(p, args.window)
    q = t.quotient
    basis = [{elem_str(e): t.basis[k][i] for i, e in enumerate(q.basis)} for k in range(t.dim)]
    return {"dim": t.dim, "basis": basis, "free": [elem_str(q.basis[f]) for f in t.free],
            "equations": len(t.equations), "unknowns": q.dim}, [], [], [args.window]


def cmd_rank(p, args, text):
    r = rank(p, args.windows)
    return {"rank": r.rank, "maximal_rank": r.maximal_rank, "layer_one_dim": r.layer_one_dim,
            "torus_dims": r.trace["torus_dims"]}, [r.verdict], [], sorted(set(args.windows))


def cmd_roots(p, args, text):
    _, t = torus_system(p, args.window)
    rd = root_decomposition(p, t)
    spaces = [{"root": list(r), "elements": [elem_str(e) for e in rd.spaces[r]]} for r in rd.roots]
    warn = ["%d roots are not integer combinations of the primitive roots" % len(rd.failures)] if rd.failures else []
    v = (Verdict.holds("integral_roots", args.window, {"roots": len(rd.roots)}) if not rd.failures
         else Verdict.fails("integral_roots", args.window, rd.failures[0]))
    return {"torus_dim": t.dim, "primitive": [list(r) for r in rd.primitive], "roots": spaces}, [v], warn, [
        args.window]


def cmd_derivations(p, args, text):
    q = truncate(p, args.window)
    ders = derivation_space(q)
    center, inner, equal = center_and_inner(q)
    return {"dim_quotient": q.dim, "dim_derivations": len(ders), "dim_inner": inner,
            "center": _names(q, center), "der_equals_inner": equal}, [], [], [args.window]


def cmd_char(p, args, text):
    v = characteristically_pronilpotent(p, args.windows, seed_text=text)
    return {"property": v.property}, [v], [], sorted(set(args.windows))


def cmd_extend(p, args, text):
    ws = sorted(set(args.windows))
    _, t = torus_system(p, ws[-1])
    warn = []
    if t.dim == 0:
        warn.append("torus is zero on window %d; the extension is trivial" % ws[-1])
    spec = ExtensionSpec(p, [TorusAction(t, k) for k in range(t.dim)], window=ws[-1])
    R, rep = build_extension(spec, ws)
    verdicts = []
    for name, v in sorted(rep["checks"].items()):
        if isinstance(v, Verdict):
            verdicts.append(v)
        else:
            verdicts.extend(v[str(M)] for M in ws if str(M) in v)
    per_window = {}
    if t.dim:
        for M in ws:
            c, inner, eq = center_and_inner(truncate(R, M))
            per_window[str(M)] = {"center_dim": len(c), "dim_inner": inner, "der_equals_inner": eq}
    res = {"codim": rep["codim"], "complement": spec.names, "passed": rep["passed"], "quotients": per_window}
    _write_out(args, R, res)
    return res, verdicts, warn + list(R.notes), ws


def cmd_central(p, args, text):
    ctext = read_cocycle(args.cocycle)
    c = parse_cocycle(ctext, p)
    N, rep = central_extension(p, c, args.windows)
    res = {"cocycle": c.name, "space": list(c.space), "coboundary": rep["coboundary"],
           "nu": rep["nu"], "theta_perp": rep["theta_perp"], "center": rep["center"],
           "center_matches": rep["center_matches"]}
    v = Verdict.holds("center_formula", rep["window"]) if rep["center_matches"] else Verdict.fails(
        "center_formula", rep["window"], {"center": rep["center"]})
    _write_out(args, N, res)
    return res, [rep["cocycle"], v], [], sorted(set(args.windows))


def cmd_current(p, args, text):
    C = current_algebra(p, args.degree_max)
    res = {"name": C.name}
    _write_out(args, C, res)
    return res, [], list(C.notes[len(p.notes):]), []


def cmd_sum(p, args, text):
    other = parse_dsl(read_source(args.other))
    S = direct_sum(p, other)
    res = {"name": S.name}
    _write_out(args, S, res)
    return res, [], [n for n in S.notes if "collision" in n], []


def _derivation(q, p, spec):
    spec = spec.strip()
    if spec == "zero":
        from .exactlin import Matrix
        return Matrix.zeros(q.dim)
    if spec.startswith("ad:"):
        x = parse_sum(spec[3:], p)
        missing = [elem_str(e) for e in x.keys() if e not in q.pos]
        if missing:
            raise UsageError("%s lies outside window %d" % (", ".join(missing), q.window))
        return inner_derivation(q, q.vector(x))
    raise UsageError("derivation spec must be 'zero' or 'ad:SUM', got %r" % spec)


def cmd_exp(p, args, text):
    q = truncate(p, args.window)
    d = _derivation(q, p, args.derivation)
    E, v = exp_derivation(q, d)
    return {"derivation": args.derivation, "matrix": jsonable(E, q.basis)}, [v], [], [args.window]


def cmd_catalog(args):
    if args.name:
        text = catalog.source(args.name)
        return {"entry": catalog.describe(args.name), "source": text}
    return {"algebras": [catalog.describe(n) for n in catalog.names()], "count": len(catalog.names()),
            "cocycles": sorted(catalog.COCYCLES)}


COMMANDS = {
    "check": cmd_check, "series": cmd_series, "profile": cmd_profile, "torus": cmd_torus, "rank": cmd_rank,
    "roots": cmd_roots, "derivations": cmd_derivations, "char-pronilpotent": cmd_char, "extend": cmd_extend,
    "central-ext": cmd_central, "current": cmd_current, "sum": cmd_sum, "exp": cmd_exp,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("prolie: error: %s\n" % message)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--seed-override", type=int, default=argparse.SUPPRESS)
    ap = _Parser(prog="prolie", description="Exact analysis of pro-nilpotent Lie algebras.", parents=[common])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, windows=None, window=None):
        sp = sub.add_parser(name, help=help_text, parents=[common])
        if name != "catalog":
            sp.add_argument("file", help="a .lie file, catalog:NAME or a catalog name")
        if window is not None:
            sp.add_argument("--window", type=int, default=window)
        if windows is not None:
            sp.add_argument("--windows", type=_windows, default=windows)
        return sp

    add("check", "weighting class and Jacobi identity on a window", window=12)
    add("series", "lower central or derived series on a window", window=8).add_argument(
        "--kind", choices=["lcs", "derived"], default="lcs")
    add("profile", "nilpotency and solvability verdicts", windows=[8, 12])
    add("torus", "diagonal derivations from the system a_i + a_j = a_k", window=10)
    add("rank", "torus dimension stabilized across windows", windows=[8, 12, 16])
    add("roots", "root decomposition under the normalized torus", window=10)
    add("derivations", "derivation algebra, inner derivations and center", window=8)
    add("char-pronilpotent", "whether every derivation acts nilpotently on layer one", windows=[8, 12])
    sp = add("extend", "semidirect extension by a full torus with validation", windows=[6, 8, 10])
    sp.add_argument("--complement", choices=["abelian"], default="abelian")
    sp.add_argument("--out")
    sp = add("central-ext", "central extension by a cocycle", windows=[10])
    sp.add_argument("--cocycle", required=True, help="a cocycle file or catalog:NAME")
    sp.add_argument("--out")
    sp = add("current", "current algebra over t*C[t]")
    sp.add_argument("--degree-max", type=int, default=None)
    sp.add_argument("--out")
    sp = add("sum", "direct sum of two algebras")
    sp.add_argument("other")
    sp.add_argument("--out")
    sp = add("exp", "exponential of a nilpotent derivation on a window", window=6)
    sp.add_argument("--derivation", required=True, help="'zero' or 'ad:SUM', for example ad:e(1)")
    sp = add("catalog", "list builtin algebras or print one")
    sp.add_argument("name", nargs="?")
    return ap


def run_command(argv):
    """Parse ``argv`` and return ``(Report, exit_code)``; raises ProlieError on failure."""
    args = build_parser().parse_args(argv)
    set_override(getattr(args, "seed_override", None))
    style = getattr(args, "format", "text")
    try:
        if args.command == "catalog":
            res = cmd_catalog(args)
            return Report(list(argv), content_hash(""), [], res, style=style), EXIT_OK
        text = read_source(args.file)
        p = parse_dsl(text)
        h = text
        if args.command == "central-ext":
            h += read_cocycle(args.cocycle)
        if args.command == "sum":
            h += read_source(args.other)
        res, verdicts, warns, ws = COMMANDS[args.command](p, args, text)
        rep = Report(list(argv), content_hash(h), ws, res, verdicts, warns, style=style)
        return rep, (EXIT_FAIL if rep.failed else EXIT_OK)
    finally:
        set_override(None)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        rep, code = run_command(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except VerdictFailure as e:
        sys.stderr.write("prolie: %s: %s\n" % (type(e).__name__, e))
        if e.witness is not None:
            sys.stderr.write("witness: %s\n" % (jsonable(e.witness),))
        return EXIT_FAIL
    except UsageError as e:
        sys.stderr.write("prolie: %s: %s\n" % (type(e).__name__, e))
        return EXIT_USAGE
    except Exception as e:  # noqa: BLE001
        sys.stderr.write("prolie: internal error: %s: %s\n" % (type(e).__name__, e))
        return EXIT_INTERNAL
    sys.stdout.write(rep.render())
    return code


if __name__ == "__main__":
    sys.exit(main())
