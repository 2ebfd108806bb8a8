"""Command-line front end.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success, 2 input
error, 3 resource cap exceeded, 4 contract violation (e.g. a non-closed
extent handed to ``reduce-attrs``).
"""

from __future__ import annotations

import argparse
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import bench, formats, kernels
from .attr_reduction import ColumnStore, greedy_attr_reduce, rotation_reducts
from .concept_reduction import (
    BOUND_KINDS,
    ConceptClass,
    class_counts,
    classify,
    gen_bound_context,
    greedy_reduction,
)
from .errors import FCAError, InvalidArgumentError
from .lattice import DEFAULT_CAP, enumerate_concepts


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


@contextmanager
def _timer(args, label: str):
    t0 = time.perf_counter()
    yield
    if getattr(args, "time", False):
        _log(f"{label}: {time.perf_counter() - t0:.3f} s")


def _load(args):
    path = Path(args.input)
    if not path.is_file():
        raise InvalidArgumentError(f"no such file: {path}")
    fmt = args.input_format or formats.format_for_path(path)
    text = path.read_text()
    kwargs = {"word_bits": args.word_bits}
    if fmt == "csv":
        kwargs.update(header=not args.csv_no_header, row_names=not args.csv_no_names)
    return formats.parse(fmt, text, **kwargs)


def _write(text: str) -> None:
    sys.stdout.write(text)


def cmd_concepts(args) -> int:
    ctx = _load(args)
    with _timer(args, "enumerate"):
        lattice = enumerate_concepts(ctx, cap=args.cap, backend=args.backend)
    if args.format == "text":
        _write("".join(formats.concept_to_text(ctx, c) + "\n" for c in lattice))
    else:
        _write(formats.concepts_to_jsonl(lattice))
    _log(f"concepts={len(lattice)}")
    return 0


def cmd_classify(args) -> int:
    ctx = _load(args)
    with _timer(args, "classify"):
        lattice = enumerate_concepts(ctx, cap=args.cap, backend=args.backend)
        result = classify(ctx, lattice)
    if args.format == "tsv":
        _write(formats.classification_to_tsv(ctx, result))
    elif args.format == "text":
        for c in lattice:
            _write(f"{result[c].value}\t{formats.concept_to_text(ctx, c)}\n")
    else:
        _write(formats.dumps(formats.classification_to_json(result)) + "\n")
    counts = class_counts(result)
    nonempty = class_counts(result, nonempty_only=True)
    _log(
        f"core={counts[ConceptClass.CORE]} relnec={counts[ConceptClass.RELATIVELY_NECESSARY]} "
        f"unnec={counts[ConceptClass.UNNECESSARY]}"
    )
    _log(
        f"nonempty rectangles: core={nonempty[ConceptClass.CORE]} "
        f"relnec={nonempty[ConceptClass.RELATIVELY_NECESSARY]} unnec={nonempty[ConceptClass.UNNECESSARY]}"
    )
    return 0


def cmd_reduce_concepts(args) -> int:
    ctx = _load(args)
    with _timer(args, "reduce-concepts"):
        lattice = enumerate_concepts(ctx, cap=args.cap, backend=args.backend)
        order = None
        if args.seed is not None:
            order = np.random.default_rng(args.seed).permutation(len(lattice)).tolist()
        kept = greedy_reduction(ctx, lattice, order)
    if args.format == "text":
        _write("".join(formats.concept_to_text(ctx, c) + "\n" for c in kept))
    else:
        _write(formats.concepts_to_jsonl(kept))
    _log(f"kept={len(kept)} of {len(lattice)}")
    return 0


def _extents_for(args, ctx):
    if args.extents is not None and args.first_k is not None:
        raise InvalidArgumentError("use either --extents or --first-k, not both")
    if args.extents is not None:
        path = Path(args.extents)
        if not path.is_file():
            raise InvalidArgumentError(f"no such file: {path}")
        return formats.read_extents(ctx, path.read_text())
    if args.first_k is not None:
        # first K in this tool's canonical extent order, not any other enumerator's
        lattice = enumerate_concepts(ctx, cap=args.cap, backend=args.backend)
        return lattice.extents()[: args.first_k]
    raise InvalidArgumentError("reduce-attrs needs --extents FILE or --first-k K")


def cmd_reduce_attrs(args) -> int:
    ctx = _load(args)
    extents = _extents_for(args, ctx)
    names = ctx.attribute_names
    store = ColumnStore(ctx)
    with _timer(args, "reduce-attrs"):
        if args.all_starts:
            reports = rotation_reducts(store, extents, backend=args.backend) if ctx.n else []
        else:
            reports = [greedy_attr_reduce(store, extents, args.start, backend=args.backend)]
    if args.all_starts:
        payload = {"extents": len(extents), "reducts": [r.to_dict(names) for r in reports]}
    else:
        payload = reports[0].to_dict(names)
        payload["extents"] = len(extents)
    if args.format == "text":
        for r in reports:
            _write(f"start={names[r.start] if ctx.n else '-'} removed={r.n_removed} "
                   f"kept={{{','.join(names[q] for q in r.kept)}}}\n")
    else:
        _write(formats.dumps(payload) + "\n")
    if args.reduced is not None:
        reduced = ctx.restrict_attributes(reports[0].kept) if reports else ctx
        Path(args.reduced).write_text(formats.serialize_cxt(reduced))
    for r in reports:
        _log(f"start={r.start} removed={r.n_removed} kept={r.kept.count()}")
    return 0


def cmd_gen(args) -> int:
    ctx = gen_bound_context(args.n, args.kind, word_bits=args.word_bits)
    text = formats.serialize_cxt(ctx)
    if args.output:
        Path(args.output).write_text(text)
    else:
        _write(text)
    _log(f"{ctx.m}x{ctx.n} context")
    return 0


def cmd_bench(args) -> int:
    backends = None if args.backend is None else (args.backend,)
    rows = bench.run(m=args.objects, k=args.n_extents, seed=args.seed or 0, backends=backends,
                     word_bits=args.word_bits)
    if args.format == "json":
        _write(formats.dumps(rows) + "\n")
    else:
        for r in rows:
            _write(
                f"{r['backend']:>6}  reduce {r['shape']} x {r['extents']} extents: {r['reduce_seconds']:.3f} s "
                f"(removed {r['removed']})  enumerate {r['enum_shape']}: {r['enum_seconds']:.3f} s "
                f"({r['concepts']} concepts)\n"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of concepts to enumerate")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--time", action="store_true", help="print timings to stderr")
    common.add_argument("--word-bits", type=int, choices=(32, 64), default=None)
    common.add_argument("--backend", choices=kernels.BACKENDS, default=None)

    ctx_args = argparse.ArgumentParser(add_help=False)
    ctx_args.add_argument("input", help="context file (.cxt or .csv)")
    ctx_args.add_argument("--input-format", choices=formats.FORMATS, default=None)
    ctx_args.add_argument("--csv-no-header", action="store_true", help="CSV has no attribute-name row")
    ctx_args.add_argument("--csv-no-names", action="store_true", help="CSV has no object-name column")

    p = argparse.ArgumentParser(prog="rectfca", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("concepts", parents=[common, ctx_args], help="enumerate all concepts")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_concepts)

    s = sub.add_parser("classify", parents=[common, ctx_args], help="core / relatively necessary / unnecessary")
    s.add_argument("--format", choices=("json", "tsv", "text"), default="json")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("reduce-concepts", parents=[common, ctx_args],
                       help="greedy concept reduction set (random order with --seed)")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_reduce_concepts)

    s = sub.add_parser("reduce-attrs", parents=[common, ctx_args], help="extent-preserving column reduction")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.add_argument("--extents", default=None, help="JSON lines of object-index arrays")
    s.add_argument("--first-k", type=int, default=None, help="preserve the first K enumerated concepts")
    s.add_argument("--start", type=int, default=0, help="column the cyclic pass starts from")
    s.add_argument("--all-starts", action="store_true", help="run the pass from every start column")
    s.add_argument("--reduced", default=None, help="write the reduced context (.cxt) here")
    s.set_defaults(func=cmd_reduce_attrs)

    s = sub.add_parser("gen", parents=[common], help="extremal contexts for the class-count bounds")
    s.add_argument("n", type=int)
    s.add_argument("kind", choices=BOUND_KINDS)
    s.add_argument("-o", "--output", default=None)
    s.add_argument("--format", choices=("cxt",), default="cxt")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", parents=[common], help="compare numba and numpy kernels")
    s.add_argument("--objects", type=int, default=8124)
    s.add_argument("--n-extents", type=int, default=512)
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FCAError as exc:
        _log(f"error: {exc}")
        return exc.exit_code
    except OSError as exc:
        _log(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
