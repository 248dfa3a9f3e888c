"""Command-line front end.  Every command reads text files ("-" is stdin)
and prints exact rationals.  Failures print one `status: <kind>: <message>`
line on stderr and exit nonzero."""
from __future__ import annotations

import argparse
import random
import sys

from .bvars import b_assignment, format_bvars
from .dyck import (DegenerateMatchingError, format_tiling, matching_to_tiling, parse_tiling,
                   standard_network, tiling_to_matching)
from .exactalg import Rat, fmt_rat, format_matrix, parse_matrix
from .groves import CapacityError, format_partition, grove_sums, uncrossing_sum
from .medial import format_matching, is_minimal, parse_matching, strand_matching
from .minors import (EvaluationError, TadRegion, contiguous_spec, evaluate_tad, format_minor_table,
                     is_well_connected, locate_region, small_central_minors, tad_laurent)
from .network import NetworkError, PreconditionError, format_network, parse_network
from .reconstruct import NotInCellError, find_matching, reconstruct_standard, tripod_variables

EXIT = {"precondition-error": 2, "not-in-cell": 3, "capacity-error": 4}


class CommandError(Exception):
    def __init__(self, status, message):
        super().__init__(message)
        self.status = status


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _matrix(path):
    return parse_matrix(_read(path))


def _network(path):
    return parse_network(_read(path))


def _matching(path):
    return parse_matching(_read(path))


def cmd_forward(a):
    return format_matrix(_network(a.network).response_matrix().m)


def cmd_reconstruct(a):
    l = _matrix(a.matrix)
    if a.matching:
        m = _matching(a.matching)
        g = reconstruct_standard(l, m)
    else:
        found = find_matching(l)
        if found is None:
            raise CommandError("not-in-cell", "no strand matching reproduces the matrix")
        m, g = found
    tv = tripod_variables(l, m)
    out = [format_matching(m), format_network(g)]
    for k in sorted(tv.values):
        out.append(f"tripod {k} {tv.plans[k].partition} {fmt_rat(tv.values[k])}\n")
    out.append(f"exterior {tv.plans['-'].partition} {fmt_rat(tv.exterior)}\n")
    out.append("round-trip: exact\n")
    return "".join(out)


def cmd_check(a):
    l = _matrix(a.matrix)
    ok, witness = is_well_connected(l)
    head = "well-connected: true" if ok else f"well-connected: false (CM[{witness[0]},{witness[1]}] <= 0)"
    return head + "\n" + format_minor_table(small_central_minors(l, symmetric=True)) + "\n"


def cmd_minimal(a):
    cert = is_minimal(_network(a.network))
    return "minimal: true\n" if cert else f"minimal: false ({cert.reason})\n"


def cmd_matching(a):
    if a.from_tiling:
        return format_matching(tiling_to_matching(parse_tiling(_read(a.file))))
    return format_matching(strand_matching(_network(a.file)))


def cmd_tiling(a):
    return format_tiling(matching_to_tiling(_matching(a.matching)))


def cmd_standard(a):
    m = _matching(a.matching)
    g, _ = standard_network(m)
    if a.random:
        rng = random.Random(a.seed)
        cond = {e.id: Rat(rng.randint(1, 20), rng.randint(1, 20)) for e in g.edges}
        g, _ = standard_network(m, cond)
    return format_network(g)


def cmd_bvars(a):
    return format_bvars(b_assignment(_network(a.network))) + "\n"


def cmd_minors(a):
    l = _matrix(a.matrix)
    if a.contiguous:
        p, q, y = a.contiguous
        n = l.shape[0]
        spec = contiguous_spec(n, p, q, y)
        lines = [f"CM[{p},{q},{y}]  {spec}  {fmt_rat(spec.value(l))}"]
        if spec.disjoint() and y:
            r = locate_region(n, p, q, y)
            lines.append(f"region {r.x0} {r.y0} {r.ell}")
            lines.append(f"laurent {tad_laurent(r)}")
            lines.append(f"evaluated {fmt_rat(evaluate_tad(l, r))}")
        return "\n".join(lines) + "\n"
    sym = None if a.general else True
    return format_minor_table(small_central_minors(l, symmetric=sym)) + "\n"


def cmd_tilings(a):
    r = TadRegion(a.x, a.y, a.ell, a.n)
    p = tad_laurent(r)
    if a.count:
        return f"{len(p)}\n"
    return f"{p}\n"


def cmd_groves(a):
    g = _network(a.network)
    sums = grove_sums(g)
    zu = uncrossing_sum(g)
    lines = []
    for tau in sorted(sums, key=lambda t: t.labels()):
        val = sums[tau] / zu if a.normalize else sums[tau]
        lines.append(f"{format_partition(tau)} {fmt_rat(val)}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpnet", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["text"], default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for random helpers")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("forward", help="response matrix of a network")
    s.add_argument("network")
    s.set_defaults(func=cmd_forward)

    s = sub.add_parser("reconstruct", help="standard network from a response matrix")
    s.add_argument("matrix")
    s.add_argument("matching", nargs="?", help="strand matching; searched for when omitted")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("check", help="well-connectedness test")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("minimal", help="minimality of a network")
    s.add_argument("network")
    s.set_defaults(func=cmd_minimal)

    s = sub.add_parser("matching", help="strand matching of a network (or of a tiling)")
    s.add_argument("file")
    s.add_argument("--from-tiling", action="store_true")
    s.set_defaults(func=cmd_matching)

    s = sub.add_parser("tiling", help="Dyck tiling of a matching")
    s.add_argument("matching")
    s.set_defaults(func=cmd_tiling)

    s = sub.add_parser("standard", help="standard network of a matching")
    s.add_argument("matching")
    s.add_argument("--random", action="store_true", help="random conductances from --seed")
    s.set_defaults(func=cmd_standard)

    s = sub.add_parser("bvars", help="B variables of a minimal network")
    s.add_argument("network")
    s.set_defaults(func=cmd_bvars)

    s = sub.add_parser("minors", help="small central minors, or one contiguous minor")
    s.add_argument("matrix")
    s.add_argument("--contiguous", nargs=3, type=int, metavar=("A", "B", "Y"))
    s.add_argument("--general", action="store_true", help="use x in 1..2n")
    s.set_defaults(func=cmd_minors)

    s = sub.add_parser("tilings", help="Laurent polynomial of a truncated Aztec diamond")
    for name in ("x", "y", "ell", "n"):
        s.add_argument(name, type=int)
    s.add_argument("--count", action="store_true")
    s.set_defaults(func=cmd_tilings)

    s = sub.add_parser("groves", help="grove sums by node partition")
    s.add_argument("network")
    s.add_argument("--normalize", action="store_true", help="divide by the uncrossing sum")
    s.set_defaults(func=cmd_groves)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except CommandError as exc:
        status, msg = exc.status, str(exc)
    except NotInCellError as exc:
        status, msg = "not-in-cell", str(exc)
    except CapacityError as exc:
        status, msg = "capacity-error", str(exc)
    except (PreconditionError, DegenerateMatchingError, NetworkError, EvaluationError,
            ValueError, OSError) as exc:
        status, msg = "precondition-error", str(exc)
    else:
        sys.stdout.write(out)
        return 0
    print(f"status: {status}: {msg}", file=sys.stderr)
    return EXIT[status]


if __name__ == "__main__":
    sys.exit(main())
