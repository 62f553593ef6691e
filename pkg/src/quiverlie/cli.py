"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import dsl
from .checks import run_invariant_suite
from .errors import InputError, MathCheckFailure
from .generate import random_quiver
from .lie import build_algebra, is_nice_basis, nilpotency_step
from .quiver import automorphism_generators, automorphism_group_order, automorphisms, enumerate_paths, quiver_length
from .ricci import DiagonalMetric, ricci_diagonal_nice, ricci_form
from .soliton import diagonal_soliton_feasibility, format_report, soliton_certificate

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2
AUT_LIST_LIMIT = 5040


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str):
    q = dsl.parse(_read(path))
    enumerate_paths(q)  # validates, raising CycleFound with a witness
    return q


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_check(args) -> int:
    q = _load(args.file)
    paths = enumerate_paths(q)
    print(f"vertices: {len(q.vertices)}")
    print(f"arrows: {len(q.arrows)}")
    print(f"paths: {len(paths)}")
    print(f"length: {quiver_length(q) if paths else 0}")
    return EXIT_OK


def cmd_info(args) -> int:
    q = _load(args.file)
    alg = build_algebra(q)
    is_nice_basis(alg)
    info = {
        "dimension": alg.dim,
        "step": nilpotency_step(alg),
        "grading": list(alg.grading_dims()),
        "paths": [alg.name(i) for i in range(alg.dim)],
        "nice_basis": True,
        "aut_order": automorphism_group_order(q),
    }
    if args.json:
        _emit_json(info)
    else:
        print(f"dimension: {info['dimension']}")
        print(f"step: {info['step']}")
        print("grading: (" + ", ".join(map(str, info["grading"])) + ")")
        print("paths: " + " ".join(info["paths"]))
        print("nice basis: yes")
        print(f"|Aut(Q)|: {info['aut_order']}")
    return EXIT_OK


def cmd_soliton(args) -> int:
    q = _load(args.file)
    cert = soliton_certificate(q)
    if args.metric_out:
        with open(args.metric_out, "w", encoding="utf-8") as fh:
            fh.write(dsl.format_metric(cert.algebra, cert.metric))
    if args.json:
        print(dsl.certificate_to_json(cert))
    elif args.report:
        print(format_report(cert))
    else:
        for name, g, d in zip(cert.paths, cert.metric.norms_squared, cert.derivation):
            print(f"|{name}|^2 = {g}    D = {d}")
        print(f"c = {cert.c}")
        print("certificate: " + ("ok" if cert.ok else "FAILED"))
    if not cert.ok:
        failed = [k for k, ok in cert.checks.items() if not ok]
        print(f"certificate checks failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


def cmd_ricci(args) -> int:
    q = _load(args.file)
    alg = build_algebra(q)
    g = dsl.parse_metric(_read(args.metric), q, alg) if args.metric else DiagonalMetric.ones(alg.dim)
    res = ricci_form(alg, g)
    nice = ricci_diagonal_nice(alg, g)
    if res.diagonal is None:
        print("Ricci operator has nonzero off-diagonal entries", file=sys.stderr)
        return EXIT_MATH
    if res.diagonal != nice:
        print("general and nice-basis Ricci formulas disagree", file=sys.stderr)
        return EXIT_MATH
    sol = diagonal_soliton_feasibility(alg, g)
    names = [alg.name(i) for i in range(alg.dim)]
    if args.json:
        out = {
            "paths": names,
            "norms_squared": [dsl.rational(x) for x in g.norms_squared],
            "ricci_eigenvalues": [dsl.rational(x) for x in res.diagonal],
            "feasible": sol is not None,
        }
        if sol is not None:
            out["c"] = dsl.rational(sol[0])
            out["derivation_diagonal"] = [dsl.rational(x) for x in sol[1]]
        _emit_json(out)
    else:
        for name, r in zip(names, res.diagonal):
            print(f"Ric({name}) = {r}")
        if sol is None:
            print("algebraic Ricci soliton with diagonal D: no")
        else:
            c, d = sol
            print(f"algebraic Ricci soliton with diagonal D: yes, c = {c}")
            print("D = (" + ", ".join(map(str, d)) + ")")
    return EXIT_OK


def cmd_random(args) -> int:
    if args.vertices < 1 or args.arrows < 1 or args.count < 1:
        print("--vertices, --arrows and --count must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    if args.vertices < 2 and not args.vary:
        print("an acyclic quiver with arrows needs at least 2 vertices", file=sys.stderr)
        return EXIT_INPUT
    rng = random.Random(args.seed)
    status = EXIT_OK
    for k in range(1, args.count + 1):
        if args.vary:
            n = rng.randint(2, max(2, args.vertices))
            m = rng.randint(1, args.arrows)
        else:
            n, m = args.vertices, args.arrows
        q = random_quiver(rng, n, m)
        text = dsl.serialize(q)
        print(f"# quiver {k}")
        sys.stdout.write(text)
        if args.verify:
            failed = [r for r in run_invariant_suite(q) if not r.ok]
            if failed:
                status = EXIT_MATH
                print("# verify: FAILED " + ", ".join(r.name for r in failed))
                print(f"quiver {k} failed:\n{text}", file=sys.stderr)
                for r in failed:
                    print(f"  {r.name}: {r.detail}", file=sys.stderr)
            else:
                print("# verify: ok")
    return status


def cmd_aut(args) -> int:
    q = _load(args.file)
    order = automorphism_group_order(q)
    if order <= AUT_LIST_LIMIT:
        for f in automorphisms(q):
            print(f)
    else:
        print(f"# |Aut(Q)| = {order}; listing generators")
        for f in automorphism_generators(q):
            print(f)
    return EXIT_OK


def cmd_dot(args) -> int:
    sys.stdout.write(dsl.export_dot(_load(args.file)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiverlie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="quiver file, or - for stdin")
        return sp

    with_file("check", help="parse and validate a quiver").set_defaults(func=cmd_check)

    sp = with_file("info", help="structure of the Lie algebra n_Q")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_info)

    sp = with_file("soliton", help="construct and certify the soliton metric")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--report", action="store_true", help="per-path table with N_j data")
    sp.add_argument("--metric-out", metavar="FILE", help="also write the metric in metric-file format")
    sp.set_defaults(func=cmd_soliton)

    sp = with_file("ricci", help="Ricci eigenvalues of a diagonal metric")
    sp.add_argument("--metric", metavar="FILE", help="lines '<path> = <p>/<q>'; missing paths get 1")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_ricci)

    sp = sub.add_parser("random", help="generate random acyclic quivers")
    sp.add_argument("--vertices", type=int, default=5)
    sp.add_argument("--arrows", type=int, default=6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--vary", action="store_true", help="treat --vertices/--arrows as upper bounds")
    sp.add_argument("--verify", action="store_true", help="run the invariant suite on each quiver")
    sp.set_defaults(func=cmd_random)

    with_file("aut", help="list arrow automorphisms as cycles").set_defaults(func=cmd_aut)
    with_file("dot", help="export Graphviz DOT").set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MathCheckFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
