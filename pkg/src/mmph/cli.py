"""Command line entry point: ``mmph <command> ...``.

Exit codes: 0 success, 1 a required property fails, 2 bad input,
3 budget or precision exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Iterable, TextIO

from . import canon, coords, corpus, hypergraph, master, states, strip
from .errors import AmbiguousInterval, BudgetExceeded, MmphError
from .hypergraph import Mmph, iter_corpus, serialize_mmph

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _open_in(path: str) -> TextIO:
    return sys.stdin if path == "-" else open(path)


def _read_mmphs(args) -> list[Mmph]:
    with _open_in(args.input) as f:
        return list(iter_corpus(f, dim=args.dim, groups=args.groups,
                                merge_repeats=args.merge_repeats))


def _emit(lines: Iterable[str], out: str | None = None) -> None:
    if out:
        with open(out, "w") as f:
            for line in lines:
                f.write(line + "\n")
    else:
        for line in lines:
            print(line)


def _range(text: str | None):
    if not text:
        return None
    lo, _, hi = text.partition(":")
    return (int(lo), int(hi))


# ---------------------------------------------------------------------------
# commands


def cmd_parse(args) -> int:
    ms = _read_mmphs(args)
    _emit(f"{serialize_mmph(m, groups=args.emit_groups)}\t{m.name}" for m in ms)
    return EXIT_OK


def cmd_validate(args) -> int:
    status = EXIT_OK
    for m in _read_mmphs(args):
        rep = hypergraph.validate(m, args.dim, pairwise=args.pairwise)
        if rep.ok:
            print(f"{m.name}\tok")
        else:
            status = EXIT_PROPERTY
            print(f"{m.name}\tinvalid\t" + "; ".join(f"{v.rule}: {v.message}" for v in rep.violations))
    return status


def cmd_check(args) -> int:
    status = EXIT_OK
    for m in _read_mmphs(args):
        v = states.verdict(m, args.dim, critical=not args.no_critical)
        print(v.line(m))
        need = set(args.require or ())
        if ("nonbinary" in need and v.binary) or ("binary" in need and not v.binary) \
                or ("ks" in need and not v.ks) or ("critical" in need and not v.critical):
            status = EXIT_PROPERTY
    return status


def cmd_master(args) -> int:
    if args.dim >= 9 and not args.huge:
        print(f"dimension {args.dim} masters are hours-scale; pass --huge", file=sys.stderr)
        return EXIT_BUDGET
    cs = master.ComponentSet.parse(args.components, args.dim)
    budget = args.budget if args.budget is not None else master.DEFAULT_BUDGET
    if args.huge and args.budget is None:
        budget = 10 ** 12
    mst = master.build_master(cs, budget=budget)
    for k, v in mst.metadata().items():
        print(f"{k}: {v}")
    if args.out:
        for p in master.write_master(mst, args.out):
            print(f"wrote: {p}")
    return EXIT_OK


def _strip_job(payload):
    text, dim, cfg_dict, drop, add, rounds, start = payload
    m = hypergraph.parse_mmph(text, dim=dim)
    cfg = strip.GenConfig.from_mapping(cfg_dict)
    if drop:
        m = strip.drop_m1(m)
    if add:
        gen = strip.grow_and_strip(m, replace(cfg, max_additions=add), rounds=rounds)
    else:
        gen = strip.strip_search(m, cfg, start_trial=start)
    return [(e.line(), e.trial) for e in gen]


def cmd_strip(args) -> int:
    ms = _read_mmphs(args)
    if len(ms) != 1:
        print("strip takes exactly one MMPH", file=sys.stderr)
        return EXIT_INPUT
    m = ms[0]
    cfg = strip.GenConfig(
        seed=args.seed, job_id=args.job_id or 0, k_range=_range(args.k_range),
        l_range=_range(args.l_range), require_ks=args.require_ks,
        require_critical=not args.no_critical, strategy=args.strategy,
        trials=args.trials, dim=args.dim,
    )
    cfg_dict = {k: getattr(cfg, k) for k in cfg.__dataclass_fields__}
    start = strip.read_journal(args.journal) if args.journal else 0
    text = serialize_mmph(m)
    if args.job_id is not None or args.jobs <= 1:
        jobs = [cfg.job_id]
    else:
        jobs = list(range(args.jobs))
    payloads = [(text, args.dim, {**cfg_dict, "job_id": j}, args.drop_m1, args.add,
                 args.rounds, start) for j in jobs]
    if len(payloads) > 1 and args.processes > 1:
        from multiprocessing import Pool
        with Pool(args.processes) as pool:
            results = pool.map(_strip_job, payloads)
    else:
        results = [_strip_job(p) for p in payloads]
    # merge in job order, first occurrence of each isomorphism class wins
    dd = canon.Deduper()
    lines = []
    for res in results:
        for line, _trial in res:
            sub = hypergraph.parse_mmph(line.split("\t", 1)[0], dim=args.dim)
            if dd.add(sub) is not None:
                lines.append(line)
    _emit(lines, args.out)
    if args.journal and len(jobs) == 1 and not args.add:
        strip.write_journal(args.journal, cfg, cfg.trials - 1)
    return EXIT_OK


def cmd_canon(args) -> int:
    _emit(str(canon.canonical_form(m)) for m in _read_mmphs(args))
    return EXIT_OK


def cmd_dedup(args) -> int:
    _emit(serialize_mmph(m) for m in canon.dedup(_read_mmphs(args)))
    return EXIT_OK


def cmd_verify(args) -> int:
    ms = _read_mmphs(args)
    if len(ms) != 1:
        print("verify takes exactly one MMPH", file=sys.stderr)
        return EXIT_INPUT
    m = ms[0]
    c = coords.read_sidecar(args.vectors, args.dim, precision=args.precision)
    if args.mode:
        c = c.in_mode(args.mode, args.precision)
    rep = coords.verify_coordinatization(m, c, args.dim)
    print(f"name: {m.name}")
    print(f"mode: {c.mode}")
    for line in rep.lines():
        print(line)
    return EXIT_OK if rep.certified else EXIT_PROPERTY


def cmd_fill(args) -> int:
    ms = _read_mmphs(args)
    if args.vectors:
        if len(ms) != 1:
            print("fill with vectors takes exactly one MMPH", file=sys.stderr)
            return EXIT_INPUT
        c = coords.read_sidecar(args.vectors, args.dim)
        fm, fc = coords.coordinated_fill(ms[0], c, args.dim)
        print(serialize_mmph(fm))
        if args.out_vectors:
            coords.write_sidecar(args.out_vectors, fm, fc)
        return EXIT_OK
    _emit(serialize_mmph(hypergraph.fill(m, args.dim)) for m in ms)
    return EXIT_OK


def cmd_stats(args) -> int:
    table = strip.aggregate_distribution(_read_mmphs(args))
    lines = ["l\tk\tcount"] if args.header else []
    lines += [f"{l}\t{k}\t{n}" for (l, k), n in table.items()]
    _emit(lines, args.out)
    return EXIT_OK


def cmd_corpus(args) -> int:
    entries = corpus.load_corpus()
    if not args.name:
        for name, e in entries.items():
            print(f"{name}\t{e.mmph.name}\tdim {e.dim}\t{'vectors' if e.has_vectors else '-'}")
        return EXIT_OK
    if args.name not in entries:
        print(f"unknown corpus entry {args.name!r}", file=sys.stderr)
        return EXIT_INPUT
    e = entries[args.name]
    if args.vectors:
        if not e.has_vectors:
            print(f"{args.name} has no vector table", file=sys.stderr)
            return EXIT_INPUT
        print(e.vector_text, end="")
    else:
        print(serialize_mmph(e.mmph))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of option defaults (flags win)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--job-id", type=int, default=None)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--precision", type=int, default=coords.MIN_CERTIFY_PRECISION)

    reader = argparse.ArgumentParser(add_help=False)
    reader.add_argument("input", help="file of MMPH strings, one per line ('-' for stdin)")
    reader.add_argument("--dim", type=int, default=None)
    reader.add_argument("--groups", action="store_true",
                        help="read parentheses as multiplicity-1 grouping marks")
    reader.add_argument("--merge-repeats", action="store_true")

    p = argparse.ArgumentParser(prog="mmph", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", parents=[common, reader], help="parse and re-serialize")
    s.add_argument("--emit-groups", action="store_true")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("validate", parents=[common, reader], help="check the MMPH conditions")
    s.add_argument("--pairwise", action="store_true",
                   help="read the intersection condition pairwise")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", parents=[common, reader], help="binary / KS / critical verdicts")
    s.add_argument("--no-critical", action="store_true")
    s.add_argument("--require", action="append",
                   choices=["binary", "nonbinary", "ks", "critical"])
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("master", parents=[common], help="build a master from vector components")
    s.add_argument("--components", required=True, help='e.g. "0,±1,±2,5" (+- also accepted)')
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--out", help="output stem for .mmph/.vec/.meta")
    s.add_argument("--huge", action="store_true", help="allow dimension 9 and above")
    s.set_defaults(func=cmd_master)

    s = sub.add_parser("strip", parents=[common, reader], help="strip down to non-binary subsets")
    s.add_argument("--strategy", choices=["random", "exhaustive"], default="random")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--no-critical", action="store_true")
    s.add_argument("--require-ks", action="store_true")
    s.add_argument("--k-range", help="lo:hi")
    s.add_argument("--l-range", help="lo:hi")
    s.add_argument("--drop-m1", action="store_true", help="drop multiplicity-1 vertices first")
    s.add_argument("--add", type=int, default=0, help="random hyperedges to add before stripping")
    s.add_argument("--rounds", type=int, default=1)
    s.add_argument("--processes", type=int, default=1)
    s.add_argument("--journal", help="checkpoint file; resumes after the last finished trial")
    s.add_argument("--out")
    s.set_defaults(func=cmd_strip)

    s = sub.add_parser("canon", parents=[common, reader], help="canonical forms")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("dedup", parents=[common, reader], help="drop isomorphic repeats")
    s.set_defaults(func=cmd_dedup)

    s = sub.add_parser("verify", parents=[common, reader], help="verify a coordinatization")
    s.add_argument("vectors", help="vector sidecar file")
    s.add_argument("--mode", choices=["exact", "interval"])
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("fill", parents=[common, reader], help="pad hyperedges to the dimension")
    s.add_argument("--vectors", help="complete with orthogonal vectors from this sidecar")
    s.add_argument("--out-vectors")
    s.set_defaults(func=cmd_fill)

    s = sub.add_parser("stats", parents=[common, reader], help="(l, k) distribution as TSV")
    s.add_argument("--header", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("corpus", parents=[common], help="list or print reference sets")
    s.add_argument("name", nargs="?")
    s.add_argument("--vectors", action="store_true")
    s.set_defaults(func=cmd_corpus)
    return p


def parse_args(argv=None) -> argparse.Namespace:
    p = build_parser()
    args = p.parse_args(argv)
    if getattr(args, "config", None):
        with open(args.config) as f:
            conf = json.load(f)
        defaults = {k.replace("-", "_"): v for k, v in conf.items()}
        # flags given on the command line win over the file
        sub = p._subparsers._group_actions[0].choices[args.command]
        sub.set_defaults(**defaults)
        args = p.parse_args(argv)
    return args


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (BudgetExceeded, AmbiguousInterval) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (MmphError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
