"""
Command line: ``homcalc {validate,cohomology,homology,verify,bv,coverage} ...``

Exit codes: 0 success (or a finding such as "no symmetric structure"),
1 a check failed, 2 usage or spec parse error.
"""

import argparse
import json
import sys
from pathlib import Path

from homcalc import homology, linalg, verify
from homcalc.algebra import (SymmetricStructure, find_symmetric_structure,
                             is_symmetric_structure, validate)
from homcalc.errors import (HomCalcError, HypothesisNotSatisfied, InternalConsistencyError,
                            RegularityError)
from homcalc.specfile import SpecError, fixture_names, fixtures_dir, load_spec

MAX_SEED = 2 ** 64


class UsageError(Exception):
    pass


# -- helpers -------------------------------------------------------------------


def _resolve(spec, fixtures):
    """A path, or the name of a fixture in the fixtures directory."""
    p = Path(spec)
    if p.suffix == ".json" or p.exists():
        return load_spec(p)
    d = Path(fixtures) if fixtures else Path(str(fixtures_dir()))
    candidate = d / (spec + ".json")
    if candidate.exists():
        return load_spec(candidate)
    raise SpecError("no such spec file or fixture: %s" % spec)


def _specs(args):
    names = list(args.specs or [])
    if getattr(args, "all_fixtures", False):
        names += [n for n in fixture_names(args.fixtures_dir) if not n.startswith("mutant_")]
    if not names:
        raise UsageError("give at least one spec path or fixture name")
    return [_resolve(n, args.fixtures_dir) for n in names]


def _emit(args, report, table):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    out = sys.stdout
    out.write(table.rstrip("\n") + "\n")
    if args.json and args.json != "-":
        Path(args.json).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def _caps(args):
    return verify.Caps(max_degree=args.max_degree, max_chain_degree=args.max_chain_degree,
                       trials=args.trials, perturbations=args.perturbations)


def _rule(rows, header):
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
    fmt = "  ".join("%%-%ds" % w for w in widths)
    lines = [fmt % tuple(header), fmt % tuple("-" * w for w in widths)]
    lines += [fmt % tuple(str(x) for x in r) for r in rows]
    lines = [ln.rstrip() for ln in lines]
    return "\n".join(lines)


# -- commands ------------------------------------------------------------------


def cmd_validate(args):
    runs, rows, ok = [], [], True
    for spec in _specs(args):
        rep = validate(spec.algebra)
        ok &= rep.passed
        runs.append({"algebra": spec.name, "validation": rep.to_json()})
        for c in rep.checks:
            state = "pass" if c.passed else ("no" if not c.required else "FAIL")
            rows.append((spec.name, c.name, state, json.dumps(c.witness) if c.witness else ""))
    _emit(args, {"command": "validate", "runs": runs, "passed": ok},
          _rule(rows, ("algebra", "check", "result", "witness")))
    return 0 if ok else 1


def _reps(space, alg, degree):
    shape = (alg.dim,) * (degree + 1)
    return [linalg.tensor_json(r.reshape(shape)) for r in space.representatives]


def cmd_cohomology(args):
    runs, rows = [], []
    dual = args.coefficients == "dual"
    for spec in _specs(args):
        alg = spec.algebra
        hh = homology.Hochschild(alg, args.max_degree, args.max_chain_degree)
        degrees, notes = {}, []
        for p in range(0, args.max_degree + 1):
            try:
                space = hh.cohomology(p, dual=dual)
            except RegularityError as exc:
                notes.append({"degree": p, "skipped": str(exc)})
                rows.append((spec.name, p, "skipped", str(exc)))
                continue
            degrees[str(p)] = {"dim": space.dim, "representatives": _reps(space, alg, p)}
            rows.append((spec.name, p, space.dim, ""))
        runs.append({"algebra": spec.name, "coefficients": "A*" if dual else "A",
                     "degrees": degrees, "notes": notes})
    _emit(args, {"command": "cohomology", "max_degree": args.max_degree, "runs": runs},
          _rule(rows, ("algebra", "p", "dim H^p", "note")))
    return 0


def cmd_homology(args):
    runs, rows = [], []
    for spec in _specs(args):
        alg = spec.algebra
        hh = homology.Hochschild(alg, args.max_degree, args.max_chain_degree)
        degrees = {}
        for n in range(0, args.max_chain_degree + 1):
            space = hh.homology(n, normalized=args.normalized)
            degrees[str(n)] = {"dim": space.dim, "representatives": _reps(space, alg, n)}
            rows.append((spec.name, n, space.dim))
        runs.append({"algebra": spec.name, "normalized": args.normalized, "degrees": degrees})
    _emit(args, {"command": "homology", "max_chain_degree": args.max_chain_degree,
                 "runs": runs},
          _rule(rows, ("algebra", "n", "dim H_n")))
    return 0


def cmd_verify(args):
    caps = _caps(args)
    suites = args.suite or list(verify.SUITES)
    for s in suites:
        if s not in verify.SUITE_FUNCTIONS:
            raise UsageError("unknown suite %r (choose from %s)" % (s, ", ".join(verify.SUITES)))
    runs, rows, ok = [], [], True
    for spec in _specs(args):
        rep = validate(spec.algebra)
        results = verify.run_suites(spec.algebra, suites, caps, args.seed, theta=spec.theta)
        ok &= rep.passed and all(r.passed for r in results)
        rows.append((spec.name, "validate", "pass" if rep.passed else "fail", "", ""))
        for r in results:
            for o in r.outcomes:
                rows.append((spec.name, r.suite, o.status, o.identity,
                             o.reason or ("trials=%d" % o.trials)))
        runs.append({"algebra": spec.name, "validation": rep.to_json(),
                     "suites": [r.to_json() for r in results]})
    report = {"command": "verify", "seed": args.seed, "suites": suites, "runs": runs,
              "status": "pass" if ok else "fail"}
    _emit(args, report, _rule(rows, ("algebra", "suite", "result", "identity", "detail")))
    return 0 if ok else 1


def _bv_run(spec, args):
    alg = spec.algebra
    alg.require_regular_unital("the BV construction")
    hh = homology.Hochschild(alg, args.max_degree, args.max_chain_degree)
    out = {"algebra": spec.name}
    if spec.theta is not None:
        ok = is_symmetric_structure(alg, spec.theta)
        out["theta"] = {"source": "spec", "matrix": linalg.tensor_json(spec.theta), "valid": ok}
        if not ok:
            out["status"] = "fail"
            out["reason"] = "supplied theta is not an invertible bimodule map A -> A*"
            return out
        sym = SymmetricStructure(spec.theta)
    else:
        sym = find_symmetric_structure(alg, seed=args.seed)
        if sym is None:
            out["theta"] = {"source": "search", "found": False}
            out["status"] = "not_symmetric"
            return out
        out["theta"] = {"source": "search", "found": True,
                        "matrix": linalg.tensor_json(sym.theta)}
    try:
        out["transported_isomorphism"] = homology.transported_isomorphism(hh, sym.theta)
    except InternalConsistencyError as exc:
        out["status"] = "fail"
        out["reason"] = str(exc)
        return out
    try:
        bv = homology.bv_generator_symmetric(hh, sym)
    except HypothesisNotSatisfied as exc:
        out["status"] = "hypothesis_failed"
        out["reason"] = str(exc)
        return out
    out["delta"] = bv.to_json()["delta"]
    out["delta_squared_zero"] = bv.squares_to_zero()
    table = verify.bv_identity_table(bv, hh, args.max_degree)
    for row in table:
        row.pop("_inputs")
    out["bv_identity"] = table
    good = out["delta_squared_zero"] and all(r["holds"] for r in table)
    out["status"] = "pass" if good else "fail"
    return out


def cmd_bv(args):
    runs, rows, code = [], [], 0
    for spec in _specs(args):
        try:
            run = _bv_run(spec, args)
        except RegularityError as exc:
            run = {"algebra": spec.name, "status": "error", "reason": "RegularityError: %s" % exc}
        runs.append(run)
        if run["status"] in ("fail", "error"):
            code = 1
        pairs = run.get("bv_identity", [])
        rows.append((spec.name, run["status"], "%d/%d" % (sum(r["holds"] for r in pairs),
                                                         len(pairs)),
                     run.get("reason", "")))
    _emit(args, {"command": "bv", "runs": runs},
          _rule(rows, ("algebra", "status", "BV identity", "note")))
    return code


def cmd_coverage(args):
    cov = verify.coverage()
    rows = [(k, v["suite"], v["statement"]) for k, v in cov.items()]
    _emit(args, {"command": "coverage", "coverage": cov},
          _rule(rows, ("identity", "suite", "statement")))
    return 0


# -- parser --------------------------------------------------------------------


def _seed(text):
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer") from None
    if not 0 <= v < MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned value")
    return v


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("specs", nargs="*", metavar="SPEC",
                        help="spec file, or the name of a bundled fixture")
    common.add_argument("--fixtures-dir", default=None,
                        help="directory searched for fixture names")
    common.add_argument("--max-degree", type=_positive, default=3,
                        help="largest cochain degree (default 3)")
    common.add_argument("--max-chain-degree", type=_positive, default=4,
                        help="largest chain degree (default 4)")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--json", metavar="PATH", default=None,
                        help="write the JSON report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="homcalc", description="Hochschild (co)homology calculus for hom-associative algebras.",
        epilog="exit codes: 0 success or finding, 1 check failed, 2 usage or parse error")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the algebra axioms")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", parents=[common], help="Hochschild cohomology")
    p.add_argument("--coefficients", choices=("A", "dual"), default="A")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("homology", parents=[common], help="Hochschild homology")
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    p.add_argument("--suite", action="append", metavar="NAME",
                   help="suite to run (repeatable): %s" % ", ".join(verify.SUITES))
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--perturbations", type=_positive, default=20)
    p.add_argument("--all-fixtures", action="store_true",
                   help="add every bundled fixture except the mutants")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bv", parents=[common], help="BV operator from a symmetric structure")
    p.set_defaults(func=cmd_bv)

    p = sub.add_parser("coverage", help="identity -> suite map")
    p.add_argument("--json", metavar="PATH", default=None)
    p.set_defaults(func=cmd_coverage)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (SpecError, UsageError) as exc:
        print("homcalc: error: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        # malformed structure tensors rejected by the algebra constructor
        print("homcalc: error: %s" % exc, file=sys.stderr)
        return 2
    except HomCalcError as exc:
        print("homcalc: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
