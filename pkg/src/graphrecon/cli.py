"""Command-line front end: ``gen``, ``check`` and ``merge``.

Data goes to stdout (graph6/digraph6 codes or collision report lines) and a
run manifest goes to stderr as ``key=value`` lines.  Exit status is 0 when
the run completed, 1 for usage errors and 2 when a check failed.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from .canon import graph_from_code
from .deckcheck import DECK_MODES, REDUCED, CollisionGroup, Searcher
from .formats import FormatError, encode
from .genx import EXACT, RECON, GenConfig, iter_batches
from .graphs import ClassSpec

OK, USAGE, CHECK_FAILED = 0, 1, 2

FAMILIES = {"graphs": "all", "digraphs": "digraphs", "oriented": "oriented", "tournament": "tournament"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


# report lines


@dataclass(frozen=True)
class ReportLine:
    deck_mode: str
    n: int
    spec: str
    members: tuple[str, ...]
    parents: tuple[str, ...] = ()

    def __str__(self):
        return f"{self.deck_mode} n={self.n} class={self.spec} members={','.join(self.members)} parents={','.join(self.parents)}"

    @property
    def run_key(self) -> tuple:
        return self.deck_mode, self.n, self.spec

    @classmethod
    def parse(cls, text: str) -> "ReportLine":
        parts = text.split()
        if len(parts) != 5 or parts[0] not in DECK_MODES:
            raise ValueError(f"not a report line: {text!r}")
        fields = {}
        for p in parts[1:]:
            key, sep, val = p.partition("=")
            if not sep:
                raise ValueError(f"not a report line: {text!r}")
            fields[key] = val
        try:
            members = tuple(sorted(fields["members"].split(",")))
            parents = tuple(sorted(x for x in fields["parents"].split(",") if x))
            return cls(parts[0], int(fields["n"]), fields["class"], members, parents)
        except KeyError as exc:
            raise ValueError(f"report line lacks {exc}: {text!r}") from None


def report_line(grp: CollisionGroup, spec: ClassSpec) -> ReportLine:
    members = tuple(sorted(encode(m) for m in grp.members))
    parents = tuple(sorted(encode(graph_from_code(p)) for p in grp.parents))
    return ReportLine(grp.deck_mode, grp.order, str(spec), members, parents)


def merge_lines(lines) -> list[ReportLine]:
    """Union of reports from shards of one run; duplicates merge their parents."""
    merged: dict[tuple, set[str]] = {}
    run = None
    for line in lines:
        if run is None:
            run = line.run_key
        elif line.run_key != run:
            raise UsageError(f"reports from different runs: {run} and {line.run_key}")
        merged.setdefault(line.members, set()).update(line.parents)
    if run is None:
        return []
    return sorted((ReportLine(*run, members, tuple(sorted(p))) for members, p in merged.items()), key=lambda r: r.members)


# manifest

_run_start = [time.perf_counter()]  # reset by main() so timings cover the whole command


@dataclass
class Manifest:
    command: str
    fields: dict = field(default_factory=dict)
    started: float = field(default_factory=lambda: _run_start[0])

    def write(self, stream=None):
        stream = stream or sys.stderr
        print(f"command={self.command}", file=stream)
        for k, v in self.fields.items():
            print(f"{k}={v}", file=stream)
        print(f"seconds={time.perf_counter() - self.started:.3f}", file=stream)


# argument handling


def _resolve_spec(args) -> ClassSpec:
    family = ClassSpec.parse(FAMILIES[args.family or "graphs"])
    if args.cls is None:
        return family
    try:
        spec = ClassSpec.parse(args.cls)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.family is not None and spec.extension_kind != family.extension_kind:
        raise UsageError(f"--class {args.cls} conflicts with --{args.family}")
    return spec


def _config(args, spec: ClassSpec, top_rule: str) -> GenConfig:
    if args.n is None:
        raise UsageError("-n is required")
    split = None
    if args.mod is not None or args.res is not None or args.depth is not None:
        if args.mod is None or args.res is None:
            raise UsageError("--res and --mod go together")
        depth = args.depth if args.depth is not None else args.n - 1
        split = (args.res, args.mod, depth)
    try:
        return GenConfig(args.n, spec, top_rule, split)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("-n", type=int, help="number of vertices")
    fam = p.add_mutually_exclusive_group()
    for name in FAMILIES:
        fam.add_argument(f"--{name}", dest="family", action="store_const", const=name)
    p.add_argument("--class", dest="cls", metavar="NAME[=PARAMS]", help="e.g. triangle-free, maxdeg=3, score-range=3,4")
    p.add_argument("--res", type=int, help="shard residue")
    p.add_argument("--mod", type=int, help="number of shards")
    p.add_argument("--depth", type=int, help="order at which the tree is split (default n-1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphrecon", description="Isomorph-free generation and reconstruction checks for small graphs and digraphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="one code per isomorphism class")
    _add_common(gen)

    chk = sub.add_parser("check", help="report sets of graphs sharing a deck")
    _add_common(chk)
    chk.add_argument("--deck", choices=DECK_MODES, default=REDUCED)
    chk.add_argument("--fixtures", action="store_true", help="verify the stored 7-vertex tournament pairs")
    chk.add_argument("--oracle", action="store_true", help="compare with brute force at order n")
    chk.add_argument("--posets", type=int, metavar="N", help="poset census on N points")

    mrg = sub.add_parser("merge", help="merge shard reports")
    mrg.add_argument("reports", nargs="*", help="report files ('-' or none for stdin)")
    return parser


# commands


def cmd_gen(args, out) -> int:
    spec = _resolve_spec(args)
    cfg = _config(args, spec, EXACT)
    man = Manifest("gen", {"class": spec, "n": cfg.target_n, "split": _split_text(cfg)})
    count = 0
    batches = 0
    if cfg.target_n == 1:
        from .genx import generate

        count = generate(cfg, lambda p, g: print(encode(g), file=out))
    else:
        for batch in iter_batches(cfg):
            batches += 1
            for g in batch.graphs():
                print(encode(g), file=out)
                count += 1
    man.fields.update(outputs=count, classes=count, batches=batches)
    man.write()
    return OK


def _split_text(cfg: GenConfig) -> str:
    return "none" if cfg.split is None else "{}/{}@{}".format(*cfg.split)


def cmd_check(args, out) -> int:
    if args.fixtures:
        return _check_fixtures(out)
    if args.posets is not None:
        return _check_posets(args.posets, out)
    spec = _resolve_spec(args)
    if args.oracle:
        return _check_oracle(args, spec, out)
    cfg = _config(args, spec, RECON)
    if cfg.target_n < 2:
        raise UsageError("decks need n >= 2")
    searcher = Searcher(cfg, args.deck)
    groups = searcher.run()
    lines = sorted((report_line(g, spec) for g in groups), key=lambda r: r.members)
    for line in lines:
        print(line, file=out)
    st = searcher.stats
    man = Manifest("check", {"class": spec, "n": cfg.target_n, "deck_mode": args.deck, "split": _split_text(cfg)})
    man.fields.update(outputs=st.outputs, batches=st.batches, screened=st.screened, groups=st.groups, nodes=st.nodes)
    man.write()
    return OK


def _check_fixtures(out) -> int:
    from .digraphs import load_fixtures, verify_fixture

    reports = [verify_fixture(f) for f in load_fixtures()]
    for rep in reports:
        for line in rep.lines():
            print(line, file=out)
    Manifest("check", {"fixtures": len(reports), "failed": sum(not r.ok for r in reports)}).write()
    return OK if all(r.ok for r in reports) else CHECK_FAILED


def _check_posets(n: int, out) -> int:
    from .oracle import OracleRefused, graph_of, poset_census

    try:
        census = poset_census(n)
    except OracleRefused as exc:
        raise UsageError(str(exc)) from None
    for grp in census.reduced_groups:
        codes = sorted(encode(graph_of(c, n, True)) for c in grp)
        print(f"reduced n={n} class=poset members={','.join(codes)} parents=", file=out)
    Manifest("check", {"class": "poset", "n": n, "classes": census.class_count, "groups": len(census.reduced_groups)}).write()
    return OK


def _check_oracle(args, spec: ClassSpec, out) -> int:
    from .oracle import OracleRefused, cross_check

    if args.n is None:
        raise UsageError("-n is required")
    try:
        rep = cross_check(args.n, spec)
    except OracleRefused as exc:
        raise UsageError(str(exc)) from None
    for line in rep.lines():
        print(line, file=out)
    Manifest("check", {"class": spec, "n": args.n, "oracle": "match" if rep.ok else "mismatch"}).write()
    return OK if rep.ok else CHECK_FAILED


def _read_reports(paths) -> list[ReportLine]:
    lines = []
    for path in paths or ["-"]:
        fh = sys.stdin if path == "-" else open(path, encoding="ascii")
        try:
            for k, raw in enumerate(fh, 1):
                raw = raw.strip()
                if not raw:
                    continue
                try:
                    lines.append(ReportLine.parse(raw))
                except ValueError as exc:
                    raise UsageError(f"{path}:{k}: {exc}") from None
        finally:
            if fh is not sys.stdin:
                fh.close()
    return lines


def cmd_merge(args, out) -> int:
    merged = merge_lines(_read_reports(args.reports))
    for line in merged:
        print(line, file=out)
    Manifest("merge", {"inputs": len(args.reports) or 1, "groups": len(merged)}).write()
    return OK


COMMANDS = {"gen": cmd_gen, "check": cmd_check, "merge": cmd_merge}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    _run_start[0] = time.perf_counter()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"graphrecon {args.command}: {exc}", file=sys.stderr)
        return USAGE
    except (FormatError, OSError) as exc:
        print(f"graphrecon {args.command}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
