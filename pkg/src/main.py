#!/usr/bin/env python3
"""
Figurate Toolkit - Command Line Entry Point
"""
import argparse
import csv
import io
import json
import logging
import re
import sys
from pathlib import Path
from typing import IO, Any, Dict, List, Optional, Sequence, Tuple, Union

from . import __version__
from .config import Config
from .decompose import RCUBE, ROCTA, RSQUARE_ALL, LatticeRep, decompositions_payload, solve
from .exceptions import FigurateError, InvalidArgumentError, PosetParseError, TableShapeError
from .figurate import (
    count_two_triangular,
    euler_triangular_scale,
    is_triangular,
    parse_kind,
    square_shift_identity,
    triangular,
    two_triangular_pairs,
    value,
)
from .identities import cor6_sweep, matrix_window, verify_sweep
from .lattice_partitions import (
    PartitionType,
    enumerate_paths,
    enumerate_typed,
    format_partition,
    path_count,
    path_count_closed,
    typed_count,
    weight_table,
)
from .posets import (
    FinitePoset,
    RepresentationN,
    build_poset,
    derive_poset,
    hasse_edges,
    is_L_suitable,
    to_dot,
    validate_representation,
    weight,
)
from .utils import setup_logging

logger = logging.getLogger(__name__)

FAMILIES = ("polygonal3", "squares3", "octahedral3", "cubes4")
TYPE_NAMES = [t.value for t in PartitionType]


# Output


def emit_table(header: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str = "text") -> str:
    """Render rows as aligned text, CSV with header, or a JSON array of records"""
    width = len(header)
    for row in rows:
        if len(row) != width:
            raise TableShapeError(f"row {list(row)} has {len(row)} cells, header has {width}")
    if fmt == "json":
        return emit_json([dict(zip(header, row)) for row in rows])
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()
    cells = [[str(c) for c in header]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(line[col]) for line in cells) for col in range(width)]
    return "".join("  ".join(c.rjust(w) for c, w in zip(line, widths)).rstrip() + "\n" for line in cells)


def emit_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


# Poset files

_LABEL = re.compile(r"[^\s,<:\[\]#]+")
_REP_LINE = re.compile(r"^\s*([^\s,<:\[\]#]+)\s*:\s*(\d+)\s*,\s*\[([^\]]*)\]\s*$")


def _labels(text: str, line_no: int, offset: int, source: Optional[str]) -> List[str]:
    labels = []
    for part in text.split(","):
        token = part.strip()
        column = offset + text.find(part) + (len(part) - len(part.lstrip())) + 1
        if not _LABEL.fullmatch(token):
            raise PosetParseError(f"bad element label {token!r}", line_no, column, source)
        labels.append(token)
    return labels


def _ints(text: str, line_no: int, offset: int, source: Optional[str]) -> List[int]:
    values = []
    for part in text.split(","):
        token = part.strip()
        if not token:
            continue
        if not token.isdigit():
            column = offset + text.find(part) + (len(part) - len(part.lstrip())) + 1
            raise PosetParseError(f"expected a positive integer, got {token!r}", line_no, column, source)
        values.append(int(token))
    return values


def parse_poset_file(
    path_or_stream: Union[str, Path, IO[str]]
) -> Tuple[FinitePoset, Optional[RepresentationN]]:
    """Read 'elements:', 'x < y', 'ambient:' and 'x: n, [parts]' lines"""
    if isinstance(path_or_stream, (str, Path)):
        source: Optional[str] = str(path_or_stream)
        with open(path_or_stream, "r", encoding="utf-8") as f:
            text = f.read()
    else:
        source = getattr(path_or_stream, "name", None)
        text = path_or_stream.read()

    elements: List[str] = []
    relations: List[Tuple[str, str]] = []
    ambient: Optional[List[int]] = None
    assignment: Dict[str, Tuple[int, List[int]]] = {}

    def add(label: str):
        if label not in elements:
            elements.append(label)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        keyword = head.strip()
        if keyword == "elements" and sep:
            for label in _labels(rest, line_no, len(head) + 1, source):
                add(label)
        elif keyword == "ambient" and sep:
            ambient = _ints(rest, line_no, len(head) + 1, source)
        elif "<" in line:
            chain = _labels(line.replace("<", ","), line_no, 0, source)
            for label in chain:
                add(label)
            relations.extend(zip(chain, chain[1:]))
        elif (match := _REP_LINE.match(line)) is not None:
            label = match.group(1)
            parts = _ints(match.group(3), line_no, match.start(3), source)
            assignment[label] = (int(match.group(2)), parts)
        else:
            column = len(line) - len(line.lstrip()) + 1
            raise PosetParseError(f"cannot read line {raw.strip()!r}", line_no, column, source)

    P = build_poset(elements, relations)
    rep = None
    if assignment:
        if ambient is None:
            ambient = sorted({part for _, parts in assignment.values() for part in parts})
        rep = RepresentationN.of(ambient, assignment)
    logger.info(f"✅ Parsed poset with {len(P)} elements from {source or 'stream'}")
    return P, rep


# Commands


class Toolkit:
    """Dispatches parsed commands and renders their output"""

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()

    def _cap(self, name: str, value: int, flag: str):
        if value > self.config.limit(name):
            raise InvalidArgumentError(f"{flag}={value} exceeds the configured cap {self.config.limit(name)}")

    def dispatch(self, args: argparse.Namespace) -> Tuple[int, str]:
        fmt = "json" if args.json else "csv" if args.csv else self.config.OUTPUT_FORMAT
        handler = getattr(self, f"cmd_{args.verb}")
        return handler(args, fmt)

    def cmd_gen(self, args, fmt: str) -> Tuple[int, str]:
        if args.matrix:
            self._cap("sweep_cap", max(args.rows, args.cols), "--rows/--cols")
            window = matrix_window(args.matrix, args.rows, args.cols)
            header = ["j"] + [f"i={i}" for i in range(1, args.cols + 1)]
            return 0, emit_table(header, [[j] + row for j, row in enumerate(window, start=1)], fmt)
        if not args.kind:
            raise InvalidArgumentError("gen needs --kind or --matrix")
        kind = parse_kind(f"polygonal:{args.t}" if args.kind == "polygonal" else args.kind)
        if args.to < args.start:
            raise InvalidArgumentError("--to must not be below --from")
        self._cap("gen_cap", args.to - args.start + 1, "range")
        rows = [[rank, value(kind, rank)] for rank in range(args.start, args.to + 1)]
        return 0, emit_table(["rank", "value"], rows, fmt)

    def cmd_decompose(self, args, fmt: str) -> Tuple[int, str]:
        self._cap("decompose_cap", args.n, "--n")
        rep = {
            "polygonal3": lambda: LatticeRep.rt(args.t),
            "squares3": lambda: RSQUARE_ALL,
            "octahedral3": lambda: ROCTA,
            "cubes4": lambda: RCUBE,
        }[args.family]()
        found = solve(rep, args.n, positive_only=args.positive_only, all_witnesses=not args.first_witness)
        if fmt == "json":
            return 0, emit_json(decompositions_payload(rep, args.n, found))
        header = ["ranks", "terms", "i", "j", "k0", "alpha", "beta", "gamma"]
        rows = [
            [" ".join(map(str, d.ranks)), "+".join(map(str, d.terms)), w.i, w.j, w.k0, w.alpha, w.beta, w.gamma]
            for d in found
            for w in d.witnesses
        ]
        return 0, emit_table(header, rows, fmt)

    def cmd_count(self, args, fmt: str) -> Tuple[int, str]:
        if args.table:
            self._cap("sweep_cap", args.imax, "--imax")
            table = weight_table(args.imax, args.jmax)
            rows = [row for row in table.rows() if row[1] >= args.jmin]
            return 0, emit_table(["i", "j", "count"], rows, fmt)
        if args.i is None or args.j is None:
            raise InvalidArgumentError("count needs --i and --j (or --table)")
        self._cap("count_cap", args.i, "--i")
        count = typed_count(PartitionType(args.type), args.i, args.j, args.k)
        if fmt == "text":
            return 0, f"{count}\n"
        return 0, emit_table(["type", "i", "j", "k", "count"], [[args.type, args.i, args.j, args.k, count]], fmt)

    def cmd_enum(self, args, fmt: str) -> Tuple[int, str]:
        self._cap("enum_cap", args.i, "--i")
        partitions = enumerate_typed(PartitionType(args.type), args.i, args.j, args.k)
        if fmt == "text" and not args.structured:
            return 0, "".join(format_partition(p) + "\n" for p in partitions)
        if fmt == "json":
            return 0, emit_json(
                [
                    {
                        "text": format_partition(p),
                        "base": list(p.base),
                        "offset": p.offset,
                        "tail": list(p.tail),
                        "total": p.total,
                    }
                    for p in partitions
                ]
            )
        rows = [
            [format_partition(p), " ".join(map(str, p.base)), p.offset, " ".join(map(str, p.tail)), p.total]
            for p in partitions
        ]
        return 0, emit_table(["text", "base", "offset", "tail", "total"], rows, fmt)

    def cmd_verify(self, args, fmt: str) -> Tuple[int, str]:
        imax = args.imax if args.imax is not None else self.config.SWEEP_DEFAULT
        jmax = args.jmax if args.jmax is not None else self.config.SWEEP_DEFAULT
        self._cap("sweep_cap", max(imax, jmax), "--imax/--jmax")
        if args.thm in ("3", "4", "cor5"):
            failures = verify_sweep(args.thm, imax, jmax)
        elif args.thm == "cor6":
            failures = cor6_sweep(rank_cap=self.config.limit("four_cube_rank_cap"))
        elif args.thm == "paths":
            self._cap("enum_cap", imax, "--imax")
            failures = self._paths_sweep(imax)
        else:
            failures = self._criteria_sweep()
        failures = [list(f) for f in failures]
        if fmt == "json":
            output = emit_json({"thm": args.thm, "failures": failures, "count": len(failures)})
        elif fmt == "csv":
            output = emit_table(["failure"], [[" ".join(map(str, f))] for f in failures], fmt)
        else:
            output = f"{len(failures)} failures\n" + "".join(" ".join(map(str, f)) + "\n" for f in failures)
        return (1 if failures else 0), output

    def _paths_sweep(self, imax: int) -> List[Tuple]:
        failures = []
        for i in range(1, imax + 1):
            for j in range(1, i + 1):
                counts = (path_count(i, j), path_count_closed(i, j), len(enumerate_paths(i, j)))
                if len(set(counts)) != 1:
                    failures.append(("paths", i, j, *counts))
        return failures

    def _criteria_sweep(self) -> List[Tuple]:
        failures = []
        for n in range(2001):
            if count_two_triangular(n) != len(two_triangular_pairs(n)):
                failures.append(("two-triangular", n))
        for m in range(1, 100, 2):
            for r in range(101):
                if not is_triangular(euler_triangular_scale(m, triangular(r))):
                    failures.append(("euler", m, r))
        for t in (5, 6, 7):
            for k in range(1, 10_001):
                lhs, rhs = square_shift_identity(t, k)
                if lhs != rhs:
                    failures.append(("square-shift", t, k))
        return failures

    def cmd_poset(self, args, fmt: str) -> Tuple[int, str]:
        P, rep = parse_poset_file(args.file)
        payload: Dict[str, Any] = {}
        if rep is not None:
            payload["representation"] = {"valid": validate_representation(P, rep), "weight": weight(rep)}
        if args.derive:
            a, _, b = args.derive.partition(",")
            pair = is_L_suitable(P, a.strip(), b.strip())
            if pair is None:
                raise InvalidArgumentError(f"({a.strip()}, {b.strip()}) is not L-suitable")
            payload["pair"] = {"a": pair.a, "b": pair.b, "chain": list(pair.chain)}
            P = derive_poset(P, pair)
        position = {x: idx for idx, x in enumerate(P.elements)}
        edges = sorted(hasse_edges(P), key=lambda e: (position[e[0]], position[e[1]]))
        payload = {"elements": list(P.elements), "hasse": [list(e) for e in edges], **payload}
        if args.dot:
            payload["dot"] = to_dot(P)
        if fmt == "json":
            return 0, emit_json(payload)
        if fmt == "csv":
            return 0, emit_table(["lower", "upper"], edges, fmt)
        lines = ["elements: " + ", ".join(P.elements)]
        lines.extend(f"{x} < {y}" for x, y in edges)
        if "representation" in payload:
            info = payload["representation"]
            lines.append(f"representation: {'valid' if info['valid'] else 'invalid'}, weight {info['weight']}")
        output = "\n".join(lines) + "\n"
        if args.dot:
            output += payload["dot"]
        return 0, output


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit JSON")
    fmt.add_argument("--csv", action="store_true", help="emit CSV")
    common.add_argument("--log-level", default=None, help="logging level (default from FIGURATE_LOG_LEVEL)")

    parser = argparse.ArgumentParser(
        prog="figurate-toolkit", description="Figurate numbers, lattice partitions and posets"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate figurate values or identity matrices")
    gen.add_argument("--kind", choices=["polygonal", "octahedral", "tetrahedral", "cube"])
    gen.add_argument("--t", type=int, default=3)
    gen.add_argument("--from", dest="start", type=int, default=1)
    gen.add_argument("--to", type=int, default=10)
    gen.add_argument("--matrix", choices=["M", "N", "R", "S", "T"])
    gen.add_argument("--rows", type=int, default=4)
    gen.add_argument("--cols", type=int, default=3)

    dec = sub.add_parser("decompose", parents=[common], help="decompose n with witnesses")
    dec.add_argument("--family", choices=FAMILIES, required=True)
    dec.add_argument("--t", type=int, default=3)
    dec.add_argument("--n", type=int, required=True)
    dec.add_argument("--positive-only", action="store_true")
    dec.add_argument("--first-witness", action="store_true", help="keep only the k0 = 0 witness")

    count = sub.add_parser("count", parents=[common], help="count typed partitions / lattice paths")
    count.add_argument("--type", choices=TYPE_NAMES, default="O")
    count.add_argument("--i", type=int)
    count.add_argument("--j", type=int)
    count.add_argument("--k", type=int, default=1)
    count.add_argument("--table", action="store_true")
    count.add_argument("--imax", type=int, default=11)
    count.add_argument("--jmax", type=int, default=5)
    count.add_argument("--jmin", type=int, default=1)

    enum = sub.add_parser("enum", parents=[common], help="list typed partitions")
    enum.add_argument("--type", choices=TYPE_NAMES, default="O")
    enum.add_argument("--i", type=int, required=True)
    enum.add_argument("--j", type=int, required=True)
    enum.add_argument("--k", type=int, default=1)
    enum.add_argument("--structured", action="store_true")

    verify = sub.add_parser("verify", parents=[common], help="sweep an identity family")
    verify.add_argument("--thm", choices=["3", "4", "cor5", "cor6", "criteria", "paths"], required=True)
    verify.add_argument("--imax", type=int)
    verify.add_argument("--jmax", type=int)

    poset = sub.add_parser("poset", parents=[common], help="read, derive and draw a poset")
    poset.add_argument("--file", required=True)
    poset.add_argument("--derive", metavar="A,B")
    poset.add_argument("--dot", action="store_true")
    return parser


def run(argv: Sequence[str], config: Optional[Config] = None) -> Tuple[int, str]:
    """Parse and execute one command; returns (exit code, stdout text)"""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else 2), ""
    toolkit = Toolkit(config)
    if args.log_level:
        setup_logging(args.log_level.upper(), toolkit.config.LOG_FILE)
    try:
        return toolkit.dispatch(args)
    except FigurateError as e:
        logger.error(f"❌ {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2, ""
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2, ""


def main():
    """Main entry point"""
    config = Config()
    setup_logging(config.LOG_LEVEL, config.LOG_FILE)
    code, output = run(sys.argv[1:], config)
    sys.stdout.write(output)
    sys.exit(code)


if __name__ == "__main__":
    main()
