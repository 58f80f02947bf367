"""Command line interface.

Subcommands:
  info    <arr.json>                     arrangement invariants
  betti   <arr.json> --system <sys.json> twisted Betti numbers
  verify  [--all | files...]             run verification checks
  corpus  generate --seed N --out dir    write a corpus to disk

Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage,
parse or precondition error.  Identical inputs and seed produce
byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import geometry, harness, localsys, realfaces, salvetti
from .exactla import ChainComplexError
from .geometry import ArrangementError, GenericityError
from .harness import CorpusSpec, PreconditionError
from .localsys import LocalSystemError


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(obj, out_path):
    text = _dump(obj)
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ArrangementError(f"cannot read {path}: {exc}")


def _arrangement_summary(arr):
    poset = geometry.intersection_poset(arr)
    fc = realfaces.enumerate_faces(arr)
    sc = salvetti.build_salvetti(fc)
    regions, bounded = realfaces.region_counts(fc)
    return {
        "dim": arr.dim,
        "num_hyperplanes": arr.d,
        "central": arr.is_central,
        "essential": arr.is_essential,
        "flat_counts": poset.flat_counts(),
        "char_poly": geometry.characteristic_polynomial(poset),
        "betti": geometry.betti_numbers(poset),
        "regions": regions,
        "bounded": bounded,
        "cells": sc.cell_counts,
    }


def cmd_info(args) -> int:
    arr = geometry.validate_arrangement(_load_json(args.arrangement))
    _emit(_arrangement_summary(arr), args.out)
    return 0


def cmd_betti(args) -> int:
    arr = geometry.validate_arrangement(_load_json(args.arrangement))
    system = localsys.local_system_from_json(_load_json(args.system))
    if system.d != arr.d:
        raise LocalSystemError(
            f"system has {system.d} matrices, arrangement has {arr.d} hyperplanes")
    sc = salvetti.build_salvetti(realfaces.enumerate_faces(arr))
    poset = geometry.intersection_poset(arr)
    _emit({
        "betti": geometry.betti_numbers(poset),
        "twisted_betti": salvetti.twisted_betti(sc, system),
        "rank": system.rank,
        "field": system.field.to_json(),
    }, args.out)
    return 0


def _classify_files(paths):
    arrangements, systems = [], []
    for path in paths:
        obj = _load_json(path)
        stem = Path(path).stem
        if isinstance(obj, dict) and "hyperplanes" in obj:
            arrangements.append((stem, geometry.validate_arrangement(obj)))
        elif isinstance(obj, dict) and "monodromy" in obj:
            systems.append((stem, localsys.local_system_from_json(obj)))
        else:
            raise ArrangementError(f"{path}: neither an arrangement nor a local system")
    return arrangements, systems


def _file_corpus(paths):
    arrangements, systems = _classify_files(paths)
    if not arrangements:
        raise ArrangementError("no arrangement files given")
    items = []
    used = set()
    for arr_id, arr in arrangements:
        matching = [(sid, s) for sid, s in systems if s.d == arr.d]
        used.update(sid for sid, _ in matching)
        items.append(harness.CorpusItem(arr_id, arr, tuple(matching)))
    orphans = [sid for sid, _ in systems if sid not in used]
    if orphans:
        raise LocalSystemError(
            f"system(s) {orphans} match no given arrangement (hyperplane "
            "counts differ)")
    return items


def cmd_verify(args) -> int:
    primes = tuple(args.prime) if args.prime else harness.DEFAULT_PRIMES
    checks = args.checks or None
    if args.all:
        spec = CorpusSpec(seed=args.seed, primes=primes)
        corpus = harness.generate_corpus(spec)
    else:
        if not args.files:
            raise ArrangementError("give input files or use --all")
        corpus = _file_corpus(args.files)
        if checks:
            # explicit files plus an explicit check: enforce preconditions
            for item in corpus:
                for sys_id, system in item.systems:
                    if "main_theorem" in checks and localsys.is_trivial(system):
                        raise PreconditionError(
                            f"{sys_id}: the strict-inequality check needs a "
                            "nontrivial system")
    reports, summary = harness.run_verification(
        corpus, seed=args.seed, checks=checks, primes=primes)
    _emit(harness.reports_to_json(reports, summary, args.seed), args.out)
    if not args.out:
        sys.stdout.flush()
    sys.stderr.write(f"checks: {summary['total']}, passed: {summary['passed']}, "
                     f"failed: {summary['failed']}\n")
    return 0 if summary["failed"] == 0 else 1


def cmd_corpus(args) -> int:
    if args.action != "generate":
        raise ArrangementError(f"unknown corpus action {args.action!r}")
    spec = CorpusSpec(seed=args.seed)
    corpus = harness.generate_corpus(spec)
    root = Path(args.out)
    root.mkdir(parents=True, exist_ok=True)
    manifest = {"seed": args.seed, "arrangements": []}
    for item in corpus:
        arr_dir = root / item.arrangement_id
        arr_dir.mkdir(exist_ok=True)
        (arr_dir / "arrangement.json").write_text(_dump(item.arrangement.to_json()))
        sys_index = []
        for sys_id, system in item.systems:
            (arr_dir / f"{sys_id}.json").write_text(_dump(system.to_json()))
            sys_index.append(sys_id)
        manifest["arrangements"].append({
            "id": item.arrangement_id,
            "dim": item.arrangement.dim,
            "num_hyperplanes": item.arrangement.d,
            "systems": sys_index,
        })
    (root / "manifest.json").write_text(_dump(manifest))
    sys.stderr.write(f"wrote {len(corpus)} arrangements under {root}\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="arrtop",
        description="Exact twisted Betti numbers of complexified-real "
                    "hyperplane arrangement complements")
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="arrangement invariants")
    p_info.add_argument("arrangement")
    p_info.add_argument("--out")
    p_info.set_defaults(func=cmd_info)

    p_betti = sub.add_parser("betti", help="twisted Betti numbers")
    p_betti.add_argument("arrangement")
    p_betti.add_argument("--system", required=True)
    p_betti.add_argument("--out")
    p_betti.set_defaults(func=cmd_betti)

    p_verify = sub.add_parser("verify", help="run verification checks")
    p_verify.add_argument("files", nargs="*")
    p_verify.add_argument("--all", action="store_true",
                          help="run every check on the generated default corpus")
    p_verify.add_argument("--checks", action="append", choices=harness.ALL_CHECKS,
                          metavar="NAME", help="repeatable check filter")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--prime", type=int, action="append")
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=cmd_verify)

    p_corpus = sub.add_parser("corpus", help="corpus files on disk")
    p_corpus.add_argument("action", choices=["generate"])
    p_corpus.add_argument("--seed", type=int, default=0)
    p_corpus.add_argument("--out", required=True)
    p_corpus.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ArrangementError, LocalSystemError, PreconditionError, GenericityError,
            ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ChainComplexError as exc:
        sys.stderr.write(f"internal consistency failure: {exc}\n")
        return 2


def run():
    raise SystemExit(main())


if __name__ == "__main__":
    run()
