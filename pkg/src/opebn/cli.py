"""Command-line front end: ``opebn learn | pgraph build | pgraph info | oracle``."""

import argparse
import sys
import time

from .core import CapacityError
from .ingest import DataFormatError, parse, parse_binarized
from .oracle import MAX_ORDERING_VARS, OracleCapacityError, best_score_bruteforce
from .pgraph import PGraphError, build, deserialize, format_score, reduction_ratio, serialize
from .reconstruct import format_network, to_dot
from .scoring import get_scorer
from .search import SOLVERS, solve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_CAPACITY = 5
EXIT_PGRAPH = 6


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _read(path, mode="r"):
    try:
        with open(path, mode) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from None


def _write(path, text):
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from None


def _load_data(args):
    text = _read(args.input, "rb")
    delimiter = None if args.format == "whitespace" else ","
    if args.binarize == "mean":
        return parse_binarized(text, delimiter, args.header)
    return parse(text, delimiter, args.header)


def _load_pgraph(path):
    return deserialize(_read(path))


def _build_pgraph(args, data):
    return build(data, get_scorer(args.score), args.max_parents, threads=args.threads)


def _add_data_flags(p, input_required=True):
    p.add_argument("--input", required=input_required, metavar="PATH", help="observation table")
    p.add_argument("--format", choices=["csv", "whitespace"], default="csv")
    p.add_argument("--header", action="store_true", help="first row holds variable names")
    p.add_argument("--binarize", choices=["mean", "none"], default="none")
    p.add_argument("--score", choices=["mdl"], default="mdl")
    p.add_argument("--max-parents", type=int, default=None, metavar="INT",
                   help="parent set size cap (default n-1)")
    p.add_argument("--threads", type=int, default=1, help="workers for parent graph build")


def cmd_learn(args):
    data = _load_data(args) if args.input else None
    if args.pgraph:
        pg = _load_pgraph(args.pgraph)
        if data is not None and data.n != pg.n:
            raise CliError(f"parent graph has {pg.n} variables, input has {data.n}", EXIT_PGRAPH)
        cap = "loaded"
    else:
        if data is None:
            raise CliError("either --input or --pgraph is required", EXIT_USAGE)
        pg = _build_pgraph(args, data)
        cap = str(pg.max_parents)
    names = list(data.names) if data is not None else [f"X{i}" for i in range(pg.n)]

    start = time.perf_counter()
    result = solve(pg, args.search)
    elapsed = time.perf_counter() - start
    net, stats = result.network, result.stats

    network_text = format_network(net, names)
    report = [
        ("solver", args.search),
        ("score", format_score(net.score)),
        ("ordering", ",".join(names[v] for v in net.ordering)),
        ("max_parents", cap),
        ("expanded", stats.expanded),
        ("generated", stats.generated),
        ("extended_vars", stats.extended_vars),
        ("peak_open", stats.peak_open),
        ("peak_closed", stats.peak_closed),
        ("pgraph_entries", pg.size()),
        ("reduction_ratio", format(reduction_ratio(pg), ".6g")),
    ]
    if args.timing:
        report.append(("wall_time", format(elapsed, ".6f")))
    report_text = "".join(f"{k}\t{v}\n" for k, v in report)

    if args.output:
        _write(args.output, network_text)
    else:
        sys.stdout.write(network_text)
    if args.dot:
        _write(args.dot, to_dot(net, names))
    if args.report:
        _write(args.report, report_text)
    sys.stdout.write(report_text)
    return EXIT_OK


def cmd_pgraph_build(args):
    data = _load_data(args)
    pg = _build_pgraph(args, data)
    text = serialize(pg)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_pgraph_info(args):
    pg = _load_pgraph(args.pgraph)
    out = [f"n\t{pg.n}"]
    out += [f"var{i}\t{c}" for i, c in enumerate(pg.counts())]
    out.append(f"entries\t{pg.size()}")
    out.append(f"reduction_ratio\t{reduction_ratio(pg):.2e}")
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_oracle(args):
    data = _load_data(args)
    if data.n > MAX_ORDERING_VARS:
        raise CliError(f"oracle refuses n={data.n}: ordering enumeration is limited to "
                       f"n <= {MAX_ORDERING_VARS}", EXIT_CAPACITY)
    scorer = get_scorer(args.score)
    score, ordering = best_score_bruteforce(scorer=scorer, data=data, max_parents=args.max_parents)
    lines = [f"oracle\t{format_score(score)}",
             f"ordering\t{','.join(data.names[v] for v in ordering)}"]
    code = EXIT_OK
    if args.check:
        pg = build(data, scorer, args.max_parents)
        agree = True
        for name in SOLVERS:
            got = solve(pg, name, check=True).network.score
            lines.append(f"{name}\t{format_score(got)}")
            agree &= abs(got - score) <= 1e-9 * max(1.0, abs(score))
        lines.append("AGREE" if agree else "DISAGREE")
        code = EXIT_OK if agree else 1
    sys.stdout.write("\n".join(lines) + "\n")
    return code


def make_parser():
    parser = argparse.ArgumentParser(prog="opebn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="learn an optimal network")
    _add_data_flags(learn, input_required=False)
    learn.add_argument("--search", choices=list(SOLVERS), default="astar-ope")
    learn.add_argument("--pgraph", metavar="PATH", help="load a parent graph instead of building one")
    learn.add_argument("--output", metavar="PATH", help="network file (default stdout)")
    learn.add_argument("--dot", metavar="PATH", help="also write Graphviz DOT")
    learn.add_argument("--report", metavar="PATH", help="also write the run report")
    learn.add_argument("--timing", action="store_true", help="add wall time to the report")
    learn.set_defaults(func=cmd_learn)

    pg = sub.add_parser("pgraph", help="build or inspect parent graph files")
    pgsub = pg.add_subparsers(dest="action", required=True)
    pgbuild = pgsub.add_parser("build")
    _add_data_flags(pgbuild)
    pgbuild.add_argument("--output", metavar="PATH")
    pgbuild.set_defaults(func=cmd_pgraph_build)
    pginfo = pgsub.add_parser("info")
    pginfo.add_argument("pgraph", metavar="PATH")
    pginfo.set_defaults(func=cmd_pgraph_info)

    oracle = sub.add_parser("oracle", help="brute-force optimum for n <= 8")
    _add_data_flags(oracle)
    oracle.add_argument("--check", action="store_true", help="also run all four solvers")
    oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_parents", None) is not None and args.max_parents < 0:
        parser.error("--max-parents must be non-negative")
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"opebn: {exc}", file=sys.stderr)
        return exc.code
    except (CapacityError, OracleCapacityError) as exc:
        print(f"opebn: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except PGraphError as exc:
        print(f"opebn: corrupted parent graph: {exc}", file=sys.stderr)
        return EXIT_PGRAPH
    except DataFormatError as exc:
        print(f"opebn: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
