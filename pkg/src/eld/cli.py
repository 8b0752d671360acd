"""Command line front end.

    eld gen DIR_OR_FILE... > signatures.csv
    eld cmp signatures.csv --threshold 0.5
    eld search sources.csv destinations.csv
    eld exact a.txt b.txt
    eld calibrate --kind word_list --corpus book.txt
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import islice
from typing import IO, Iterable, Iterator, Sequence

from . import __version__
from .calibration import Kind, CalibrationError, expected_overlap, load_model
from .compressor import DEFAULT_ALPHABET, Params, ParamsError, preprocess, validate_params
from .core_ld import levenshtein
from .estimator import (
    DEFAULT_MAX_RATIO,
    DEFAULT_R,
    INCOMPATIBLE,
    Comparison,
    compare,
)
from .signature import (
    HEADER,
    PathNotSerializable,
    Signature,
    SignatureParseError,
    build,
    load,
    serialize,
)

log = logging.getLogger("eld")

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_FATAL = 2

REPORT_HEADER = "#path_a,path_b,eld,delta,dig_ld,effective_c,low_confidence"

_CHUNK = 512


class FatalError(Exception):
    pass


# ---------------------------------------------------------------- helpers


def _read_alphabet(path: str | None) -> bytes:
    if path is None:
        return DEFAULT_ALPHABET
    with open(path, "rb") as fh:
        return fh.read().rstrip(b"\r\n")


def _params(args: argparse.Namespace) -> Params:
    try:
        p = Params(args.c, args.n, _read_alphabet(args.alphabet_file))
        validate_params(p)
    except OSError as exc:
        raise FatalError(f"alphabet file: {exc}") from exc
    except ParamsError as exc:
        raise FatalError(str(exc)) from exc
    return p


def _iter_files(inputs: Iterable[str]) -> list[str]:
    found: list[str] = []
    for item in inputs:
        if os.path.isdir(item):
            for root, dirs, files in os.walk(item):
                dirs.sort()
                found.extend(os.path.join(root, name) for name in files)
        else:
            found.append(item)
    return sorted(set(found))


def _read_input(path: str, lowercase: bool, collapse_ws: bool) -> bytes:
    with open(path, "rb") as fh:
        data = fh.read()
    return preprocess(data, lowercase, collapse_ws)


@contextlib.contextmanager
def _output(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _chunks(items: Iterable, size: int) -> Iterator[list]:
    it = iter(items)
    while chunk := list(islice(it, size)):
        yield chunk


def _fmt_float(x: float | None, digits: int) -> str:
    return "NA" if x is None else f"{x:.{digits}f}"


def format_row(cmp: Comparison) -> str:
    if cmp.status == INCOMPATIBLE:
        eld = "INCOMPATIBLE"
    else:
        eld = "NA" if cmp.eld is None else str(cmp.eld)
    return ",".join(
        [
            cmp.path_a,
            cmp.path_b,
            eld,
            _fmt_float(cmp.delta, 4),
            "NA" if cmp.dig_ld is None else str(cmp.dig_ld),
            _fmt_float(cmp.effective_c, 2),
            "1" if cmp.low_confidence else "0",
        ]
    )


# ---------------------------------------------------------------- gen


def _gen_one(job: tuple[str, Params, bool, bool]) -> tuple[str, Signature | None, str | None]:
    path, params, lowercase, collapse_ws = job
    try:
        data = _read_input(path, lowercase, collapse_ws)
    except OSError as exc:
        return path, None, f"cannot read: {exc.strerror or exc}"
    if not data:
        return path, None, "empty file skipped"
    try:
        return path, build(path, data, params), None
    except PathNotSerializable as exc:
        return path, None, str(exc)


def run_gen(args: argparse.Namespace) -> int:
    params = _params(args)
    files = _iter_files(args.inputs)
    jobs = [(f, params, args.lowercase, args.collapse_ws) for f in files]
    skipped = written = 0
    with _output(args.out) as out, _executor(args.workers) as pool:
        results = pool.map(_gen_one, jobs) if pool else map(_gen_one, jobs)
        if not args.no_header:
            out.write(HEADER + "\n")
        for path, sig, problem in results:
            if sig is None:
                log.warning("%s: %s", path, problem)
                skipped += 1
                continue
            if sig.low_confidence:
                log.warning(
                    "%s: low confidence digest (%d chars for %d bytes)",
                    path, sig.digest_length, sig.file_length,
                )
            out.write(serialize(sig))
            written += 1
    if not written:
        log.error("no readable input files")
        return EXIT_FATAL
    return EXIT_PARTIAL if skipped else EXIT_OK


# ---------------------------------------------------------------- cmp / search


class ExactFromFiles:
    """Exact distance of the original files, when both are still on disk."""

    def __init__(self, lowercase: bool = False, collapse_ws: bool = False) -> None:
        self.lowercase = lowercase
        self.collapse_ws = collapse_ws

    def __call__(self, a: Signature, b: Signature) -> int | None:
        try:
            da = _read_input(a.path, self.lowercase, self.collapse_ws)
            db = _read_input(b.path, self.lowercase, self.collapse_ws)
        except OSError:
            return None
        if len(da) != a.file_length or len(db) != b.file_length:
            return None
        return levenshtein(da, db)


_POOL_STATE: dict = {}


def _pool_init(left, right, r, max_ratio, fallback) -> None:
    _POOL_STATE.update(left=left, right=right, r=r, max_ratio=max_ratio, fallback=fallback)


def _score_chunk(pairs: list[tuple[int, int]]) -> list[Comparison]:
    s = _POOL_STATE
    left, right = s["left"], s["right"]
    return [
        compare(left[i], right[j], s["r"], s["max_ratio"], s["fallback"])
        for i, j in pairs
    ]


def _executor(workers: int, **kwargs):
    if workers and workers > 1:
        return ProcessPoolExecutor(max_workers=workers, **kwargs)
    return contextlib.nullcontext()


def score_pairs(
    left: Sequence[Signature],
    right: Sequence[Signature],
    pairs: Iterable[tuple[int, int]],
    r: float = DEFAULT_R,
    max_ratio: float | None = DEFAULT_MAX_RATIO,
    fallback=None,
    workers: int = 1,
) -> Iterator[Comparison]:
    """Score ``pairs`` of indices into ``left`` x ``right``, in input order."""
    state = (list(left), list(right), r, max_ratio, fallback)
    chunks = _chunks(pairs, _CHUNK)
    with _executor(workers, initializer=_pool_init, initargs=state) as pool:
        if pool is None:
            _pool_init(*state)
            scored = map(_score_chunk, chunks)
        else:
            scored = pool.map(_score_chunk, chunks)
        for batch in scored:
            yield from batch


def _load_sigs(path: str) -> list[Signature]:
    try:
        return load(path)
    except SignatureParseError as exc:
        raise FatalError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise FatalError(f"{path}: {exc.strerror or exc}") from exc


def all_pairs(count: int, include_self: bool = False) -> Iterator[tuple[int, int]]:
    for i in range(count):
        for j in range(i if include_self else i + 1, count):
            yield i, j


def _max_ratio(args: argparse.Namespace) -> float | None:
    return None if args.max_ratio <= 0 else args.max_ratio


def run_compare(args: argparse.Namespace) -> int:
    sigs = _load_sigs(args.signatures)
    fallback = ExactFromFiles(args.lowercase, args.collapse_ws)
    results = score_pairs(
        sigs, sigs, all_pairs(len(sigs), args.include_self),
        args.r, _max_ratio(args), fallback, args.workers,
    )
    with _output(args.out) as out:
        out.write(REPORT_HEADER + "\n")
        for cmp in results:
            if args.all or cmp.passes(args.threshold):
                out.write(format_row(cmp) + "\n")
    return EXIT_OK


def _rank_key(cmp: Comparison) -> tuple:
    delta = -1.0 if cmp.delta is None else cmp.delta
    eld = float("inf") if cmp.eld is None else cmp.eld
    return (-delta, eld)


def run_search(args: argparse.Namespace) -> int:
    sources = _load_sigs(args.source)
    dests = _load_sigs(args.dest)
    fallback = ExactFromFiles(args.lowercase, args.collapse_ws)
    pairs = ((i, j) for i in range(len(sources)) for j in range(len(dests)))
    results = score_pairs(
        sources, dests, pairs, args.r, _max_ratio(args), fallback, args.workers
    )
    with _output(args.out) as out:
        out.write(REPORT_HEADER + ",best\n")
        row: list[Comparison] = []
        for cmp in results:
            row.append(cmp)
            if len(row) == len(dests):
                _emit_search_row(out, row, args)
                row = []
    return EXIT_OK


def _emit_search_row(out: IO[str], row: list[Comparison], args: argparse.Namespace) -> None:
    candidates = [k for k, c in enumerate(row) if c.status != INCOMPATIBLE]
    best = min(candidates, key=lambda k: (_rank_key(row[k]), k), default=None)
    for k, cmp in enumerate(row):
        if k == best or args.all or cmp.passes(args.threshold):
            out.write(format_row(cmp) + ("," + ("1" if k == best else "0")) + "\n")


# ---------------------------------------------------------------- exact / calibrate


def run_exact(args: argparse.Namespace) -> int:
    try:
        a = _read_input(args.file_a, args.lowercase, args.collapse_ws)
        b = _read_input(args.file_b, args.lowercase, args.collapse_ws)
    except OSError as exc:
        raise FatalError(f"{exc.filename}: {exc.strerror or exc}") from exc
    with _output(args.out) as out:
        out.write(f"{levenshtein(a, b)}\n")
    return EXIT_OK


def run_calibrate(args: argparse.Namespace) -> int:
    try:
        model = load_model(args.kind, args.corpus)
        r = expected_overlap(model, args.length, args.runs, args.seed)
    except CalibrationError as exc:
        raise FatalError(str(exc)) from exc
    with _output(args.out) as out:
        out.write(f"{Kind(args.kind).value},{args.length},{args.runs},{args.seed},{r:.4f}\n")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _threshold(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("threshold must be within [0, 1]")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eld",
        description="Estimate Levenshtein distances of large documents from compact signatures.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--lowercase", action="store_true", help="lowercase input bytes first")
    common.add_argument("--collapse-ws", action="store_true", help="collapse whitespace runs to one space")

    gen = sub.add_parser("gen", parents=[common], help="generate signatures for files/directories")
    gen.add_argument("inputs", nargs="+", help="files or directories (walked recursively)")
    gen.add_argument("--c", type=int, default=101, help="nominal compression rate (default 101)")
    gen.add_argument("--n", type=int, default=11, help="neighborhood size (default 11)")
    gen.add_argument("--alphabet-file", help="file holding the digest alphabet bytes")
    gen.add_argument("--no-header", action="store_true", help="omit the '#' header line")
    gen.set_defaults(func=run_gen)

    scoring = argparse.ArgumentParser(add_help=False)
    scoring.add_argument("--r", type=float, default=DEFAULT_R, help=f"expected overlap ratio (default {DEFAULT_R})")
    scoring.add_argument("--threshold", type=_threshold, default=0.0, help="report pairs with delta >= T (default 0.0)")
    scoring.add_argument("--max-ratio", type=float, default=DEFAULT_MAX_RATIO,
                         help="digest size ratio beyond which delta is not applicable; <= 0 disables (default 10)")
    scoring.add_argument("--all", action="store_true", help="report every pair regardless of threshold")

    cmp = sub.add_parser("cmp", parents=[common, scoring], help="all-vs-all within one signature file")
    cmp.add_argument("signatures")
    cmp.add_argument("--include-self", action="store_true", help="also compare each signature with itself")
    cmp.set_defaults(func=run_compare)

    search = sub.add_parser("search", parents=[common, scoring], help="every source vs every destination")
    search.add_argument("source")
    search.add_argument("dest")
    search.set_defaults(func=run_search)

    exact = sub.add_parser("exact", parents=[common], help="exact Levenshtein distance of two files")
    exact.add_argument("file_a")
    exact.add_argument("file_b")
    exact.set_defaults(func=run_exact)

    cal = sub.add_parser("calibrate", help="estimate the expected overlap ratio R")
    cal.add_argument("--kind", choices=[k.value for k in Kind], default=Kind.RANDOM_CHARS.value)
    cal.add_argument("--corpus", help="text corpus for char_frequency / word_list")
    cal.add_argument("--length", type=int, default=30_000)
    cal.add_argument("--runs", type=int, default=10)
    cal.add_argument("--seed", type=int, default=0)
    cal.add_argument("--out", help="output file (default: stdout)")
    cal.set_defaults(func=run_calibrate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("eld: %(levelname)s: %(message)s"))
    root = logging.getLogger("eld")
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if args.verbose else logging.INFO)
    try:
        return args.func(args)
    except FatalError as exc:
        log.error("%s", exc)
        return EXIT_FATAL
    finally:
        root.removeHandler(handler)


if __name__ == "__main__":
    sys.exit(main())
