"""Command line interface.

Subcommands: check, henneberg, orient, system, mv, certify, oracle,
embed, report. Graphs come from the line-oriented file format handled
by reporting.parse_graph_file. Exit codes: 0 success, 1 input error,
2 capability or retry exhaustion.
"""

import argparse
import sys
import time

from . import embeddings, mixedvol, polysys, reporting
from .errors import CapabilityError, InputError
from .graphs import (
    HENNEBERG_I,
    StepI,
    check_laman,
    classify,
    edge_key,
    henneberg_decompose,
    orient_two_in,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAPABILITY = 2


def _parser():
    p = argparse.ArgumentParser(
        prog="lamanmv",
        description="Exact mixed-volume bounds for planar framework embeddings",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, form=False):
        sp.add_argument("file", help="graph file")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--timeout", type=float, default=None, help="seconds")
        if form:
            sp.add_argument(
                "--form", choices=(polysys.FORM_SOE, polysys.FORM_SUBSOE),
                default=polysys.FORM_SUBSOE,
            )

    common(sub.add_parser("check", help="Laman property with witness"))
    common(sub.add_parser("henneberg", help="construction sequence and class"))
    orient = sub.add_parser("orient", help="two-incoming-edges orientation")
    common(orient)
    orient.add_argument("--base", default=None, help="base edge as i,j")
    common(sub.add_parser("system", help="print the polynomial system"), form=True)
    common(sub.add_parser("mv", help="mixed volume with cell certificates"), form=True)
    common(sub.add_parser("certify", help="closed-form distance-system bound"))
    common(sub.add_parser("oracle", help="inclusion-exclusion cross-check"), form=True)
    embed = sub.add_parser("embed", help="enumerate embeddings")
    common(embed)
    embed.add_argument("--tight", action="store_true", help="use the tight length recipe")
    report = sub.add_parser("report", help="full JSON report")
    common(report)
    report.add_argument("--tight", action="store_true")
    report.add_argument("--no-timings", action="store_true", help="byte-stable output")
    return p


def _load(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return reporting.parse_graph_file(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")


def _deadline(args):
    return None if args.timeout is None else time.monotonic() + args.timeout


def _emit(payload, fmt, text_renderer):
    if fmt == "json":
        print(reporting.to_json(payload))
    else:
        text_renderer(payload)


def _poly_text(poly, variables):
    parts = []
    for expo, coeff in sorted(poly.terms, key=lambda t: (-sum(t[0]), t[0])):
        mono = "*".join(
            f"{v}^{e}" if e > 1 else v for v, e in zip(variables, expo) if e > 0
        )
        c = str(coeff)
        if mono:
            piece = mono if coeff == 1 else (f"-{mono}" if coeff == -1 else f"{c}*{mono}")
        else:
            piece = c
        parts.append(piece)
    out = " + ".join(parts).replace("+ -", "- ")
    return out or "0"


def run(argv):
    """Entry point used by tests; returns the exit code."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return _dispatch(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY


def _dispatch(args):
    fw = _load(args.file)
    g = fw.graph

    if args.command == "check":
        lam = check_laman(g)
        payload = {"n": g.n, "laman": lam["laman"], "witness": lam["witness"]}

        def text(p):
            print("laman" if p["laman"] else f"not laman (witness {p['witness']})")

        _emit(payload, args.format, text)
        return EXIT_OK

    if args.command == "henneberg":
        if not check_laman(g)["laman"]:
            raise InputError("graph is not Laman")
        dec = henneberg_decompose(g)
        steps = []
        for i, s in enumerate(dec.sequence.steps):
            if isinstance(s, StepI):
                steps.append({"kind": "I", "vertex": i + 4, "anchors": [s.a, s.b]})
            else:
                steps.append(
                    {
                        "kind": "II",
                        "vertex": i + 4,
                        "anchors": [s.a, s.b, s.c],
                        "removed": list(s.removed),
                    }
                )
        payload = {
            "class": classify(g),
            "steps": steps,
            "relabeling": {str(k): v for k, v in sorted(dec.relabeling.items())},
        }

        def text(p):
            print(f"class: {p['class']}")
            for s in p["steps"]:
                print(f"  step {s['kind']} -> vertex {s['vertex']} anchors {s['anchors']}"
                      + (f" removed {s['removed']}" if s["kind"] == "II" else ""))

        _emit(payload, args.format, text)
        return EXIT_OK

    if args.command == "orient":
        if args.base:
            try:
                i, j = (int(x) for x in args.base.split(","))
            except ValueError:
                raise InputError("--base expects i,j")
            base = edge_key(i, j)
        else:
            base = edge_key(1, 2) if edge_key(1, 2) in g.edges else sorted(g.edges)[0]
        orientation = orient_two_in(g, base)
        payload = {
            "base": list(orientation.base),
            "directed": [
                {"edge": list(e), "head": h}
                for e, h in sorted(orientation.heads.items())
            ],
        }

        def text(p):
            print(f"base: {tuple(p['base'])}")
            for d in p["directed"]:
                e = d["edge"]
                tail = e[0] if e[1] == d["head"] else e[1]
                print(f"  {tail} -> {d['head']}")

        _emit(payload, args.format, text)
        return EXIT_OK

    if args.command == "system":
        fwb = mixedvol._base_framework(fw)
        system = (
            polysys.build_soe(fwb)
            if args.form == polysys.FORM_SOE
            else polysys.build_subsoe(fwb)
        )
        payload = {
            "form": system.form,
            "variables": list(system.variables),
            "polynomials": [
                {
                    "terms": [
                        {"exponents": list(e), "coefficient": str(c)}
                        for e, c in p.terms
                    ]
                }
                for p in system.polys
            ],
            "bezout": polysys.bezout(system),
        }

        def text(p):
            print(f"variables: {' '.join(p['variables'])}")
            for poly, raw in zip(system.polys, p["polynomials"]):
                print("  " + _poly_text(poly, system.variables) + " = 0")
            print(f"degree product: {p['bezout']}")

        _emit(payload, args.format, text)
        return EXIT_OK

    if args.command == "mv":
        res = mixedvol.mv_for_graph(
            fw, args.form, seed=args.seed, deadline=_deadline(args), threads=args.threads
        )
        payload = reporting.mv_result_dict(res)
        payload["cells"] = reporting.cells_dict(res)

        def text(p):
            print(f"mixed volume: {p['value']} ({p['method']}, seed {p['seed']})")

        _emit(payload, args.format, text)
        return EXIT_OK

    if args.command == "certify":
        if not check_laman(g)["laman"]:
            raise InputError("graph is not Laman")
        res = mixedvol.certify_general_bound(g, deadline=_deadline(args))
        payload = reporting.mv_result_dict(res)
        payload["cells"] = reporting.cells_dict(res)

        def text(p):
            print(f"mixed volume: {p['value']} (certificate)")

        _emit(payload, args.format, text)
        return EXIT_OK

    if args.command == "oracle":
        res = mixedvol.mv_for_graph(fw, args.form, seed=args.seed, oracle=True)
        payload = reporting.mv_result_dict(res)

        def text(p):
            print(f"mixed volume (inclusion-exclusion): {p['value']}")

        _emit(payload, args.format, text)
        return EXIT_OK

    if args.command == "embed":
        if not check_laman(g)["laman"]:
            raise InputError("graph is not Laman")
        if classify(g) != HENNEBERG_I:
            raise InputError("embedding enumeration needs a degree-2-constructible graph")
        dec = henneberg_decompose(g, only_step1=True)
        if args.tight:
            fw_embed = embeddings.tight_lengths(dec.sequence)
        else:
            relabel = {orig: rep for rep, orig in dec.relabeling.items()}
            fw_embed = fw.relabel(relabel)
        embs = embeddings.enumerate_h1(fw_embed, dec.sequence)
        payload = {
            "embedding_count": len(embs),
            "max_residual": max((e.residual for e in embs), default=0.0),
            "relabeling": {str(k): v for k, v in sorted(dec.relabeling.items())},
            "embeddings": [
                {
                    "choices": list(e.choices),
                    "tangent": e.tangent,
                    "points": {str(v): [x, y] for v, (x, y) in sorted(e.points.items())},
                }
                for e in embs
            ],
        }

        def text(p):
            print(f"embeddings: {p['embedding_count']} (max residual {p['max_residual']:.2e})")

        _emit(payload, args.format, text)
        return EXIT_OK

    if args.command == "report":
        rep = reporting.build_report(
            fw,
            seed=args.seed,
            tight=args.tight,
            deadline=_deadline(args),
            threads=args.threads,
        )
        payload = rep.to_dict(include_timings=not args.no_timings)

        def text(p):
            for key in (
                "laman", "class", "bezout_soe", "bezout_subsoe",
                "borcea_streinu_bound", "embedding_count", "witness_degenerate",
            ):
                print(f"{key}: {p[key]}")
            if p["mv_soe"]:
                print(f"mv_soe: {p['mv_soe']['value']} ({p['mv_soe']['method']})")
            if p["mv_subsoe"]:
                print(f"mv_subsoe: {p['mv_subsoe']['value']} ({p['mv_subsoe']['method']})")

        _emit(payload, args.format, text)
        return EXIT_OK

    raise InputError(f"unknown command {args.command!r}")


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
