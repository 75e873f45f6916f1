"""Command-line front end.

Exit codes: 0 success, 1 axiom violation (``verify-axioms``), 2 infeasible,
3 unsupported, 4 parse or argument error, 5 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import sys
from typing import Sequence

from . import io as mio
from .engine import find_feasible_partition
from .errors import (BudgetExceeded, InfeasibleInstance, InvalidArgument, MatpartError,
                     ParseError, Unsupported)
from .instance import Instance, Objective, Policy, Sense
from .matroid import verify_axioms
from .oracle import brute_optimum
from .reductions.generators import (FAMILIES, SETCOVER_VARIANTS, RandomParams,
                                    gen_densest_subgraph, gen_random, gen_sat, gen_setcover)
from .reductions.transforms import max_to_min_transform, to_base_partition_instance
from .solvers.dispatch import ALGORITHMS, solve

EXIT_OK, EXIT_AXIOM, EXIT_INFEASIBLE, EXIT_UNSUPPORTED, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3, 4, 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError("", message)


def _add_instance(p):
    p.add_argument("instance", help="instance JSON file, or - for stdin")
    p.add_argument("--verify-axioms", action="store_true",
                   help="exhaustively check every matroid before solving")


def _add_objective(p, required=True):
    p.add_argument("--objective", required=required, help="op1,op2 with ops in min, max, sum")
    p.add_argument("--sense", choices=["min", "max"], default="min")
    p.add_argument("--policy", choices=["forbid", "allow"], default="forbid")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="matpart", description="Optimal matroid partitioning.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve an instance")
    _add_instance(p)
    _add_objective(p)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--epsilon", help="approximation parameter as p/q")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("feasible", help="decide whether a feasible partition exists")
    _add_instance(p)
    p.add_argument("--policy", choices=["forbid", "allow"], default="forbid")

    p = sub.add_parser("brute", help="exhaustive reference optimum")
    _add_instance(p)
    _add_objective(p)

    p = sub.add_parser("verify-axioms", help="check the independence axioms of every matroid")
    p.add_argument("instance")

    gen = sub.add_parser("gen", help="generate an instance").add_subparsers(
        dest="generator", required=True, parser_class=_Parser)
    g = gen.add_parser("sat")
    g.add_argument("--formula", required=True, help='e.g. "(x|!y)&(y)"')
    g.add_argument("--objective", default="max,min")
    g = gen.add_parser("setcover")
    g.add_argument("--universe", required=True, help="comma separated, e.g. 1,2,3")
    g.add_argument("--sets", required=True, help="semicolon separated sets, e.g. '1,2;2,3;3'")
    g.add_argument("--variant", choices=SETCOVER_VARIANTS, default="identical_matroids")
    g = gen.add_parser("densest")
    g.add_argument("--vertices", type=int, required=True)
    g.add_argument("--edges", default="", help="e.g. 0-1,1-2")
    g.add_argument("--l", type=int, required=True)
    g = gen.add_parser("random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--families", default=",".join(FAMILIES))
    g.add_argument("--weights", default="0:9", help="low:high integer range")
    g.add_argument("--identical-matroids", action="store_true")
    g.add_argument("--identical-weights", action="store_true")

    tr = sub.add_parser("transform", help="transform an instance").add_subparsers(
        dest="transform", required=True, parser_class=_Parser)
    t = tr.add_parser("base-partition")
    t.add_argument("instance")
    t.add_argument("--op2", choices=["min", "max", "sum"], default="sum",
                   help="inner operator, decides the dummy weights")
    t = tr.add_parser("max-to-min")
    t.add_argument("instance")
    t.add_argument("--objective", required=True)
    t.add_argument("--sense", choices=["min", "max"], default="max")
    return parser


def _read(args, stdin) -> Instance:
    source = stdin if args.instance == "-" else args.instance
    try:
        return mio.parse_instance(source, getattr(args, "verify_axioms", False))
    except OSError as exc:
        raise ParseError("", f"cannot read {args.instance}: {exc.strerror}") from None


def _objective(args) -> Objective:
    return Objective.parse(args.objective, Sense(args.sense))


def _split(text: str, sep: str) -> list[str]:
    return [t.strip() for t in text.split(sep) if t.strip()]


def _generate(args):
    if args.generator == "sat":
        Objective.parse(args.objective)
        inst = gen_sat(args.formula).instance
        prov = dict(inst.provenance or {}, objective=args.objective)
        return dataclasses.replace(inst, provenance=prov)
    if args.generator == "setcover":
        family = [_split(s, ",") for s in args.sets.split(";")]
        return gen_setcover(_split(args.universe, ","), family, args.variant)
    if args.generator == "densest":
        edges = []
        for item in _split(args.edges, ","):
            u, _, v = item.partition("-")
            try:
                edges.append((int(u), int(v)))
            except ValueError:
                raise ParseError("", f"cannot read edge {item!r}") from None
        return gen_densest_subgraph(args.vertices, edges, args.l).instance
    lo, _, hi = args.weights.partition(":")
    try:
        weight_range = (int(lo), int(hi))
    except ValueError:
        raise ParseError("", f"cannot read weight range {args.weights!r}") from None
    params = RandomParams(args.n, args.k, tuple(_split(args.families, ",")), weight_range,
                          args.identical_matroids, args.identical_weights)
    return gen_random(params, args.seed)


def _run(args, stdin, out) -> int:
    cmd = args.command
    if cmd == "gen":
        out.write(mio.serialize_instance(_generate(args)))
        return EXIT_OK
    if cmd == "transform":
        inst = _read(args, stdin)
        if args.transform == "base-partition":
            padded = to_base_partition_instance(inst, args.op2)
            result = padded.instance
            prov = dict(result.provenance or {}, transform="base-partition",
                        original_n=padded.original_n, dummy_count=padded.dummy_count)
        else:
            result, flipped = max_to_min_transform(inst, _objective(args))
            prov = dict(result.provenance or {}, transform="max-to-min",
                        objective=str(flipped), sense=flipped.sense.value)
        result = dataclasses.replace(result, provenance=prov)
        out.write(mio.serialize_instance(result))
        return EXIT_OK
    if cmd == "verify-axioms":
        inst = _read(args, stdin)
        rows = []
        for i, m in enumerate(inst.matroids):
            rep = verify_axioms(m)
            rows.append({"index": i, "ok": rep.ok,
                         "violations": [{"axiom": a, "witness": [sorted(s) for s in sets]}
                                        for a, sets in rep.violations]})
        ok = all(r["ok"] for r in rows)
        out.write(mio.dumps({"ok": ok, "matroids": rows}))
        return EXIT_OK if ok else EXIT_AXIOM
    inst = _read(args, stdin)
    if cmd == "feasible":
        mins = [1 if args.policy == "forbid" else 0] * inst.k
        res = find_feasible_partition(inst.matroids, mins)
        doc = {"feasible": res.feasible, "policy": args.policy}
        if res:
            doc["parts"] = [sorted(p) for p in res.parts]
        else:
            doc["reason"] = res.reason
            if res.witness is not None:
                doc["witness"] = sorted(res.witness)
        out.write(mio.dumps(doc))
        return EXIT_OK if res else EXIT_INFEASIBLE
    objective = _objective(args)
    policy = Policy(args.policy)
    if cmd == "brute":
        report = brute_optimum(inst, objective, policy)
        report.extra["enumerated"] = report.candidates
    else:
        report = solve(inst, objective, policy, args.algorithm, args.epsilon, args.workers)
    out.write(mio.emit_report(report, inst))
    return EXIT_OK


def main(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        buf = io.StringIO()
        code = _run(args, stdin, buf)
        stdout.write(buf.getvalue())
        return code
    except ParseError as exc:
        print(f"matpart: parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except InvalidArgument as exc:
        print(f"matpart: invalid argument: {exc}", file=stderr)
        return EXIT_PARSE
    except InfeasibleInstance as exc:
        print(f"matpart: infeasible: {exc}", file=stderr)
        return EXIT_INFEASIBLE
    except Unsupported as exc:
        print(f"matpart: unsupported: {exc}", file=stderr)
        return EXIT_UNSUPPORTED
    except BudgetExceeded as exc:
        print(f"matpart: budget exceeded: {exc}", file=stderr)
        return EXIT_BUDGET
    except MatpartError as exc:
        print(f"matpart: error: {exc}", file=stderr)
        return EXIT_AXIOM


def run_command(argv: Sequence[str], stdin_text: str = "") -> tuple[int, str, str]:
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), io.StringIO(stdin_text), out, err)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
