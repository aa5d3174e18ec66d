"""Command line: ``homalg verify | derive | catalog``.

Exit codes: 0 every axiom holds, 1 an axiom or derivation precondition fails,
2 the input could not be read, parsed or used for the requested target.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import catalog
from .bialgebroid import dual_bialgebroid, from_poisson, induced_poisson, verify_bialgebroid
from .algebroid import verify_algebroid
from .courant import build_double, to_hom_lie_2, verify_courant, verify_hom_lie_2
from .homlie import (PurelyHomLieBialgebra, QuadraticHomLieAlgebra, build_double as algebra_double,
                     verify_bialgebra, verify_homlie, verify_quadratic)
from .identities import SampleConfig, verify_catalog
from .poisson import cotangent_algebroid, verify_poisson, verify_purely_hom_poisson
from .report import Report
from .structfile import StructureError, StructureFile, load_structure, parse_structure, print_structure

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

TARGETS = {
    "double": ("bialgebroid", "bialgebra"),
    "cotangent": ("poisson",),
    "two-algebra": ("courant",),
    "dual": ("bialgebroid", "bialgebra"),
    "induced-poisson": ("bialgebroid",),
    "bialgebroid": ("poisson",),
}


def verify_structure(sf: StructureFile, max_degree=3, identities=True) -> Report:
    """Run the suite that belongs to ``sf.kind`` and merge it into one report."""
    rep = Report(f"{sf.kind}:{sf.name}", sample_degree=max_degree)
    o = sf.obj
    if sf.kind == "homlie":
        rep.extend(verify_quadratic(o) if isinstance(o, QuadraticHomLieAlgebra) else verify_homlie(o))
    elif sf.kind == "bialgebra":
        rep.extend(verify_bialgebra(o))
    elif sf.kind == "algebroid":
        rep.extend(verify_algebroid(o, max_degree))
        if identities:
            rep.extend(verify_catalog(o, SampleConfig(max_degree=max_degree)), "identity.")
    elif sf.kind == "poisson":
        rep.extend(verify_poisson(o, max_degree))
        rep.extend(verify_purely_hom_poisson(o.variables, o, o.sigma, max_degree, o.name),
                   "bracket.")
    elif sf.kind == "bialgebroid":
        rep.extend(verify_algebroid(o.A, max_degree), "A.")
        rep.extend(verify_algebroid(o.Astar, max_degree), "A*.")
        rep.extend(verify_bialgebroid(o, max_degree, check_constituents=False))
    elif sf.kind == "courant":
        rep.extend(verify_courant(o, max_degree))
    else:
        raise ValueError(f"unknown kind {sf.kind!r}")
    return rep


def _render(rep: Report, as_json: bool, timing: bool) -> str:
    if as_json:
        return json.dumps(rep.to_dict(timing), indent=2, sort_keys=True)
    text = str(rep)
    if timing and rep.timing is not None:
        text += f"\n  time: {rep.timing:.3f} s"
    if not rep.passed:
        text += "\nfailed: " + ", ".join(c.axiom for c in rep.failures())
    return text


def _timed(fn, *args, **kw) -> Report:
    t0 = time.perf_counter()
    rep = fn(*args, **kw)
    rep.timing = time.perf_counter() - t0
    return rep


def _load(path, err):
    try:
        if path == "-":
            return parse_structure(sys.stdin.read())
        return load_structure(path)
    except StructureError as exc:
        kind = "semantic error" if exc.semantic else "parse error"
        print(f"{path}: {kind}: {exc}", file=err)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"{path}: cannot read: {exc}", file=err)
    return None


def cmd_verify(path, max_degree=3, report=None, as_json=False, timing=False,
               identities=True, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    sf = _load(path, err)
    if sf is None:
        return EXIT_INPUT
    rep = _timed(verify_structure, sf, max_degree, identities)
    print(_render(rep, as_json, timing), file=out)
    if report:
        with open(report, "w", encoding="utf-8") as fh:
            json.dump(rep.to_dict(timing), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def derive(sf: StructureFile, target: str, max_degree=3):
    """Return ``(derived object or None, precondition report)``; the object is None on failure."""
    pre = verify_structure(sf, max_degree)
    if not pre.passed:
        return None, pre
    o = sf.obj
    if target == "double":
        if isinstance(o, PurelyHomLieBialgebra):
            return algebra_double(o), pre
        return build_double(o, check=False, name=f"double of {sf.name}"), pre
    if target == "cotangent":
        return cotangent_algebroid(o, check=False, name=f"cotangent of {sf.name}"), pre
    if target == "dual":
        if isinstance(o, PurelyHomLieBialgebra):
            return PurelyHomLieBialgebra(o.gstar, o.g), pre
        return dual_bialgebroid(o, f"dual of {sf.name}"), pre
    if target == "bialgebroid":
        return from_poisson(o, f"{sf.name} bialgebroid"), pre
    if target == "induced-poisson":
        return induced_poisson(o, f"induced by {sf.name}"), pre
    raise ValueError(f"unknown target {target!r}")


def cmd_derive(path, target, out_path=None, max_degree=3, as_json=False,
               out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    sf = _load(path, err)
    if sf is None:
        return EXIT_INPUT
    if sf.kind not in TARGETS[target]:
        print(f"{path}: cannot derive {target!r} from a {sf.kind} file "
              f"(needs {' or '.join(TARGETS[target])})", file=err)
        return EXIT_INPUT
    if target == "two-algebra":
        # sections form an infinite-dimensional complex; the output is its verification report
        pre = verify_structure(sf, max_degree)
        if not pre.passed:
            print(_render(pre, as_json, False), file=err)
            return EXIT_FAIL
        rep = Report(f"two-algebra of {sf.name}", sample_degree=min(max_degree, 2))
        rep.extend(_timed(verify_hom_lie_2, to_hom_lie_2(sf.obj, min(max_degree, 2))))
        text = _render(rep, as_json, False) + "\n"
        _write(text, out_path, out)
        return EXIT_OK if rep.passed else EXIT_FAIL
    obj, pre = derive(sf, target, max_degree)
    if obj is None:
        print(f"{path}: precondition for {target!r} fails", file=err)
        print(_render(pre, as_json, False), file=err)
        return EXIT_FAIL
    name = obj.name if hasattr(obj, "name") else f"{target} of {sf.name}"
    text = print_structure(obj, name)
    _write(text, out_path, out)
    # the derived file is checked as a user would check it: parse the text back first
    rep = verify_structure(parse_structure(text), max_degree)
    print(_render(rep, as_json, False), file=err if out_path is None else out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _write(text, path, out):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_catalog(action, name=None, out_path=None, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    if action == "list":
        for e in catalog.ENTRIES.values():
            print(f"{e.name:18} {e.kind:10} {e.summary}", file=out)
        return EXIT_OK
    if name not in catalog.ENTRIES:
        print(f"unknown catalog entry {name!r}; known: {', '.join(catalog.names())}", file=err)
        return EXIT_INPUT
    _write(catalog.emit(name), out_path, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homalg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check every axiom of a structure file")
    v.add_argument("file", help="structure file, or - for stdin")
    v.add_argument("--max-degree", type=int, default=3, metavar="N",
                   help="total degree of monomial samples (default 3)")
    v.add_argument("--report", metavar="OUT", help="also write the JSON report here")
    v.add_argument("--json", action="store_true", help="print the report as JSON")
    v.add_argument("--timing", action="store_true", help="include wall time in the report")
    v.add_argument("--axioms-only", action="store_true",
                   help="algebroids: skip the calculus identity catalog")

    d = sub.add_parser("derive", help="build a derived structure and re-verify it")
    d.add_argument("file")
    d.add_argument("target", choices=sorted(TARGETS))
    d.add_argument("--out", metavar="PATH", help="write the derived file here (default stdout)")
    d.add_argument("--max-degree", type=int, default=3, metavar="N")
    d.add_argument("--json", action="store_true")

    c = sub.add_parser("catalog", help="list or emit built-in examples")
    c.add_argument("action", choices=["list", "emit"])
    c.add_argument("name", nargs="?")
    c.add_argument("--out", metavar="PATH")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_degree", 1) < 0:
        print("--max-degree must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "verify":
        return cmd_verify(args.file, args.max_degree, args.report, args.json, args.timing,
                          not args.axioms_only)
    if args.command == "derive":
        return cmd_derive(args.file, args.target, args.out, args.max_degree, args.json)
    if args.action == "emit" and not args.name:
        print("catalog emit needs a name", file=sys.stderr)
        return EXIT_INPUT
    return cmd_catalog(args.action, args.name, args.out)


if __name__ == "__main__":
    sys.exit(main())
