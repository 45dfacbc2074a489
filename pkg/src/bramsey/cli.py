"""Command-line front end.

Exit codes: 0 good / match / decided, 1 verified bad / mismatch,
2 usage or I/O error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from . import tables
from .constructions import NAMED, star_witness
from .core import ProblemSpec, verify
from .errors import BramseyError, SpecMismatch
from .formats import (CERT_MAGIC, Certificate, WitnessFile, load_witness,
                      loads_certificate, save_certificate)
from .oracle import brute_force_arrow
from .satbridge import SolverHarness, cegar, encode_cnf
from .search import RULES, Budget, Status, brm_scan, decide_arrow

EXIT_OK, EXIT_BAD, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _add_spec(p: argparse.ArgumentParser, required: bool = True, n: bool = True) -> None:
    p.add_argument("--m", type=int, required=required)
    if n:
        p.add_argument("--n", type=int, required=required)
    p.add_argument("--a", type=int, default=None if not required else 2)
    p.add_argument("--s", type=int, default=None if not required else 6)


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, default=Budget().max_nodes)
    p.add_argument("--budget-seconds", type=float, default=Budget().max_seconds)
    p.add_argument("--jobs", type=int, default=1)


def _budget(args) -> Budget:
    return Budget(args.budget_nodes, args.budget_seconds, args.jobs)


def _rules(text: Optional[str]):
    if text is None or text == "all":
        return tuple(RULES.values())
    if text == "none":
        return ()
    names = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [n for n in names if n not in RULES]
    if unknown:
        raise BramseyError(f"unknown rule(s) {unknown}; choose from {sorted(RULES)}")
    return tuple(RULES[n] for n in names)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _status_exit(status: Status) -> int:
    return EXIT_INCONCLUSIVE if status is Status.INCONCLUSIVE else EXIT_OK


def cmd_construct(args) -> int:
    if args.name == "star":
        if args.m is None or args.n is None:
            raise BramseyError("star needs --m and --n")
        spec = ProblemSpec(args.m, args.n, args.a or 2, args.s or 6)
        wf = WitnessFile.from_coloring(star_witness(spec.m, spec.n), spec,
                                       note="star: x_1 red to every column")
    else:
        w = NAMED[args.name]()
        wf = WitnessFile.from_coloring(w.coloring, w.spec, note=w.name)
    _emit(wf.dumps(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    text = Path(args.path).read_text()
    if text.startswith(CERT_MAGIC):
        cert = loads_certificate(text)
        print(f"certificate: {cert.spec} {cert.status.value} via {cert.engine} ({cert.trust})")
        if cert.status is Status.NOT_ARROW:
            print(f"witness re-verifies: {'yes' if cert.reverified else 'NO'}")
            return EXIT_OK if cert.reverified else EXIT_BAD
        return _status_exit(cert.status)

    wf = load_witness(args.path)
    base = wf.spec
    spec = ProblemSpec(args.m or base.m, args.n or base.n, args.a or base.a, args.s or base.s)
    if spec.m != base.m:
        raise SpecMismatch(f"file has m={base.m}, override asks for m={spec.m}")
    coloring = wf.coloring(spec.n)
    report = verify(coloring, spec)
    print(report.summary())
    if args.out and report.good:
        cert = Certificate(spec, Status.NOT_ARROW, "verify",
                           witness=WitnessFile.from_coloring(coloring, spec, note=wf.note))
        save_certificate(cert, args.out)
    return EXIT_OK if report.good else EXIT_BAD


def cmd_search(args) -> int:
    spec = ProblemSpec(args.m, args.n, args.a, args.s)
    outcome = decide_arrow(spec, _budget(args), _rules(args.rules))
    cert = Certificate.from_outcome(outcome)
    print(f"{spec}: {outcome.status.value} ({outcome.stats.nodes} nodes, "
          f"{outcome.stats.elapsed:.2f}s)")
    if args.out:
        save_certificate(cert, args.out)
    elif outcome.witness is not None:
        sys.stdout.write(cert.witness.dumps())
    return _status_exit(outcome.status)


def cmd_scan(args) -> int:
    result = brm_scan(args.m, args.a, args.s, args.n_lo, args.n_hi, _budget(args),
                      _rules(args.rules))
    for n, outcome in result.outcomes:
        print(f"n={n:<4} {outcome.status.value:12} {outcome.stats.nodes} nodes")
    if result.value is not None:
        print(f"BR_{args.m}(K_{{{args.a},{args.a}}}, K_{{{args.s},{args.s}}}) = {result.value}")
    elif result.bracket is not None:
        lo, hi = result.bracket
        print(f"inconclusive: value lies in [{lo}, {hi if hi is not None else '?'}]")
        return EXIT_INCONCLUSIVE
    else:
        print(f"no arrowing up to n={args.n_hi}")
    if not result.monotone:
        print("warning: Arrow followed by NotArrow in the scan")
        return EXIT_BAD
    return EXIT_OK


def cmd_encode(args) -> int:
    spec = ProblemSpec(args.m, args.n, args.a, args.s)
    doc = encode_cnf(spec, args.mode, args.symmetry_breaking)
    _emit(doc.to_dimacs(), args.out)
    return EXIT_OK


def cmd_cegar(args) -> int:
    spec = ProblemSpec(args.m, args.n, args.a, args.s)
    harness = SolverHarness(args.solver, args.solver_timeout) if args.solver \
        else SolverHarness.from_env(args.solver_timeout)
    if harness is None:
        raise BramseyError("no solver: pass --solver or set BRAMSEY_SOLVER_CMD")
    outcome = cegar(spec, harness, _budget(args), batch=args.batch,
                    symmetry_breaking=args.symmetry_breaking)
    cert = Certificate.from_outcome(outcome)
    print(f"{spec}: {outcome.status.value} after {outcome.stats.nodes} solver calls "
          f"({cert.trust})")
    if args.out:
        save_certificate(cert, args.out)
    return _status_exit(outcome.status)


def cmd_oracle(args) -> int:
    spec = ProblemSpec(args.m, args.n, args.a, args.s)
    result = brute_force_arrow(spec)
    print(f"{spec}: {'Arrow' if result.arrows else 'NotArrow'}; "
          f"{result.good_count} good colorings")
    if result.example is not None:
        wf = WitnessFile.from_coloring(result.example, spec, note="least good coloring")
        _emit(wf.dumps(), args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    cells = tables.reproduce(args.family, _budget(args))
    for cell in cells:
        print(cell.line())
    verdict = tables.overall(cells)
    print(f"overall: {verdict}")
    return {"match": EXIT_OK, "mismatch": EXIT_BAD}.get(verdict, EXIT_INCONCLUSIVE)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bramsey", description="m-bipartite Ramsey arrowing toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a bundled witness file")
    p.add_argument("name", choices=["star", *NAMED])
    _add_spec(p, required=False)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a witness or certificate file")
    p.add_argument("path")
    _add_spec(p, required=False)
    p.add_argument("--out", help="write a certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="decide arrowing by pruned DFS (a = 2)")
    _add_spec(p)
    _add_budget(p)
    p.add_argument("--rules", help="comma list of prune rules, 'all' or 'none'")
    p.add_argument("--out", help="write a certificate")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("scan", help="compute BR_m over a range of n")
    _add_spec(p, n=False)
    p.add_argument("--n-lo", type=int, default=1)
    p.add_argument("--n-hi", type=int, required=True)
    _add_budget(p)
    p.add_argument("--rules")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("encode", help="write the DIMACS encoding")
    _add_spec(p)
    p.add_argument("--mode", choices=["full", "red_only"], default="full")
    p.add_argument("--symmetry-breaking", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("cegar", help="decide arrowing with an external SAT solver")
    _add_spec(p)
    _add_budget(p)
    p.add_argument("--solver", help="command template with {cnf_path}")
    p.add_argument("--solver-timeout", type=float)
    p.add_argument("--batch", action="store_true", help="block every blue copy per round")
    p.add_argument("--symmetry-breaking", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cegar)

    p = sub.add_parser("oracle", help="brute-force decision for m*n <= 24")
    _add_spec(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("table", help="reproduce published BR_m values")
    p.add_argument("family", choices=sorted(tables.FAMILIES))
    _add_budget(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (BramseyError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
