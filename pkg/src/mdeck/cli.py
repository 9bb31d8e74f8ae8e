"""Command-line front end.

Exit codes: 0 success, 1 negative finding (a pair that should collide does
not, an expectation that failed, an ambiguous or impossible inversion),
2 usage or domain error, 3 resource or corrupted-data error.
"""
from __future__ import annotations

import argparse
import itertools
import sys
import time

from . import __version__, kernels
from .bounds import bound_report
from .channel import SampleBatch, discriminate, sample
from .collision import (
    PARTITIONS,
    SearchConfig,
    check_R,
    compute_N,
    default_workers,
    load_corpus,
    verify_pair,
)
from .core import DeckError, DomainError, IntegrityError, ParseError, ResourceError, parse_rle
from .deck import Deck, compute_deck
from .reconstruct import BRUTEFORCE_MAX_N, invert_deck_bruteforce, reconstruct_runs

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _kv(pairs) -> str:
    return " ".join(f"{k}={v}" for k, v in pairs)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _config(args) -> SearchConfig:
    return SearchConfig(
        workers=args.threads,
        partition=args.partition,
        passes=args.passes,
        memory_budget=args.memory_budget,
        hash_seed=args.hash_seed,
    )


def cmd_deck(args) -> int:
    x = parse_rle(args.input)
    d = compute_deck(x, args.m)
    _write(args.output, d.to_text())
    total = sum(d.counts)
    status = "OK" if total == d.total else "MISMATCH"
    print(f"sum={total} binom={d.total} {status}")
    return EXIT_OK


def cmd_verify(args) -> int:
    x1, x2 = parse_rle(args.x1), parse_rle(args.x2)
    result = verify_pair(x1, x2, args.m)
    if result.collide:
        print(f"m={args.m} n={len(x1)} result=collide")
        return EXIT_OK
    print(
        f"m={args.m} n={len(x1)} result=distinct y={result.y} "
        f"count1={result.count1} count2={result.count2}"
    )
    return EXIT_NEGATIVE


def cmd_verify_paper(args) -> int:
    try:
        pairs = load_corpus(args.corpus)
    except (OSError, ParseError) as exc:
        print(f"error: corrupted corpus: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if args.only_m is not None:
        pairs = [p for p in pairs if p.m == args.only_m]
        if not pairs:
            print(f"error: no corpus pair with m={args.only_m}", file=sys.stderr)
            return EXIT_USAGE
    code = EXIT_OK
    for pair in pairs:
        start = time.perf_counter()
        result = verify_pair(pair.first, pair.second, pair.m)
        elapsed = time.perf_counter() - start
        fields = [("m", pair.m), ("n", pair.n)]
        if result.collide:
            fields.append(("result", "collide"))
        else:
            code = EXIT_NEGATIVE
            fields += [
                ("result", "distinct"),
                ("y", result.y),
                ("count1", result.count1),
                ("count2", result.count2),
            ]
        fields.append(("time", f"{elapsed:.4f}s"))
        print(_kv(fields))
    print(f"verified={len(pairs)} all_collide={'yes' if code == EXIT_OK else 'no'}")
    return code


def cmd_search(args) -> int:
    report = check_R(args.m, args.n, _config(args))
    print(_kv(report.key_values(timing=not args.no_timing)))
    if args.expect and args.expect != report.outcome:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_nm(args) -> int:
    result = compute_N(args.m, args.max_n, _config(args))
    for report in result.reports:
        print(_kv(report.key_values(timing=not args.no_timing)))
    if result.capped:
        print(f"N_{args.m} >= {result.value} (capped at {args.max_n})")
    else:
        print(f"N_{args.m} = {result.value}")
    return EXIT_OK


def _load_deck(args) -> Deck:
    d = Deck.from_text(_read(args.deck))
    if args.m is not None and args.m != d.m:
        raise DomainError(f"deck has m={d.m}, expected {args.m}")
    return d


def cmd_reconstruct(args) -> int:
    d = _load_deck(args)
    if d.m >= 3 and d.n == 2 * d.m - 1:
        print(reconstruct_runs(d))
        return EXIT_OK
    if d.n > BRUTEFORCE_MAX_N:
        raise ResourceError(
            f"n={d.n} is outside the constructive case and above the brute-force limit"
        )
    found = invert_deck_bruteforce(d)
    for x in found:
        print(x)
    return EXIT_OK if len(found) == 1 else EXIT_NEGATIVE


def cmd_invert(args) -> int:
    found = invert_deck_bruteforce(_load_deck(args))
    for x in found:
        print(x)
    print(f"preimages={len(found)}")
    return EXIT_OK if found else EXIT_NEGATIVE


def cmd_sample(args) -> int:
    x = parse_rle(args.input)
    batch = sample(x, args.m, args.count, seed=args.seed, workers=args.threads)
    _write(args.output, batch.to_text())
    return EXIT_OK


def cmd_discriminate(args) -> int:
    batch = SampleBatch.from_text(_read(args.samples))
    if args.all:
        candidates = ["".join(p) for p in itertools.product("01", repeat=batch.n)]
    else:
        candidates = [parse_rle(c) for c in args.candidate or []]
    result = discriminate(batch, candidates, batch.m)
    for x in candidates:
        print(f"candidate={x} loglik={result.loglik[x]!r}")
    print(f"argmax={','.join(result.argmax) or '-'} ties={len(result.argmax)}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    report = bound_report(args.m)
    kv = dict(report.key_values())
    print(_kv((k, kv[k]) for k in ("lower", "known", "pigeonhole_upper")))
    print(_kv((k, kv[k]) for k in ("paper_cap", "consistent")))
    return EXIT_OK


def _search_options(p):
    p.add_argument("--threads", type=int, default=default_workers(),
                   help="worker processes (default: $MDECK_THREADS or 1)")
    p.add_argument("--partition", choices=PARTITIONS, default="by-weight")
    p.add_argument("--passes", type=int, default=1, help="fingerprint passes per partition")
    p.add_argument("--memory-budget", type=int, default=2 << 30, metavar="BYTES")
    p.add_argument("--hash-seed", type=int, default=0)
    p.add_argument("--no-timing", action="store_true", help="omit wall time for diffable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdeck", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deck", help="compute the level-m deck of a string")
    p.add_argument("--input", required=True, help="binary string or run-length notation")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("verify", help="check whether two strings share a level-m deck")
    p.add_argument("x1")
    p.add_argument("x2")
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-paper", help="verify the bundled collision corpus")
    p.add_argument("--corpus", help="alternative corpus file")
    p.add_argument("--only-m", type=int)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("search", help="exhaustive collision search at (m, n)")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--expect", choices=("holds", "fails"))
    _search_options(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("nm", help="largest n separable by level-m decks")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    _search_options(p)
    p.set_defaults(func=cmd_nm)

    for name, func, text in (
        ("reconstruct", cmd_reconstruct, "recover a string from its deck"),
        ("invert", cmd_invert, "list every string with the given deck (n <= 24)"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--deck", required=True, help="deck file, or - for stdin")
        p.add_argument("-m", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("sample", help="draw outputs of the deletion channel")
    p.add_argument("--input", required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, default=default_workers())
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("discriminate", help="rank candidate sources by likelihood")
    p.add_argument("--samples", required=True, help="batch file, or - for stdin")
    p.add_argument("--candidate", action="append")
    p.add_argument("--all", action="store_true", help="all strings of the batch length")
    p.set_defaults(func=cmd_discriminate)

    p = sub.add_parser("bounds", help="bounds on the separable length for level m")
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except IntegrityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, DeckError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
