"""Command-line entry point: ``syzlab run <file>``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cache import ResolutionCache
from .dsl import CommandError, Config, DSLError, execute_session, parse_session, render
from .groebner import DegreeCapError
from .homological import InvariantViolation
from .poly import UsageError, is_prime

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_INVARIANT = 3

DEFAULT_CACHE = Path.home() / ".cache" / "syzlab"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="syzlab", description="Graded syzygy and homological computations over F_p.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="execute a session file")
    run.add_argument("file", help="session file (use - for stdin)")
    run.add_argument("--prime", type=int, help="override the field characteristic of the ring")
    run.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
    run.add_argument("--res-bound", type=int, default=10, help="default resolution length")
    run.add_argument("--hom-bound", type=int, default=10, help="default top index for tor/ext")
    run.add_argument("--degree-bound", type=int, default=40, help="polynomial degree cap for Groebner runs")
    run.add_argument("--eta-bound", type=int, default=100)
    run.add_argument("--seed", type=int, default=0, help="extra seed mixed into regular-sequence searches")
    run.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
    run.add_argument("--cache-dir", metavar="PATH", help=f"resolution cache directory (default {DEFAULT_CACHE})")
    run.add_argument("--no-cache", action="store_true")
    run.add_argument("--format", choices=["text", "json", "csv"], default="text")
    run.add_argument("--timings", action="store_true", help="include wall times and cache hits")
    return ap


def _fail(code: int, msg: str) -> int:
    print(f"syzlab: {msg}", file=sys.stderr)
    return code


def _exit_code(err: Exception) -> int:
    cause = getattr(err, "cause", err)
    if isinstance(cause, DegreeCapError):
        return EXIT_CAP
    if isinstance(cause, InvariantViolation):
        return EXIT_INVARIANT
    return EXIT_USAGE


def run(args) -> int:
    if args.prime is not None and not is_prime(args.prime):
        return _fail(EXIT_USAGE, f"{args.prime} is not prime")
    for name in ("res_bound", "hom_bound", "eta_bound"):
        if getattr(args, name) < 0:
            return _fail(EXIT_USAGE, f"--{name.replace('_', '-')} must be non-negative")
    if not 1 <= args.degree_bound <= 255:
        return _fail(EXIT_USAGE, "--degree-bound must be between 1 and 255")
    try:
        text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text(encoding="utf-8")
    except OSError as e:
        return _fail(EXIT_USAGE, f"cannot read {args.file}: {e.strerror}")
    cache = None
    if not args.no_cache:
        cache = ResolutionCache(args.cache_dir or DEFAULT_CACHE)
    cfg = Config(
        prime=args.prime,
        order=args.order,
        res_bound=args.res_bound,
        hom_bound=args.hom_bound,
        degree_bound=args.degree_bound,
        eta_bound=args.eta_bound,
        seed=args.seed,
        cache=cache,
        timings=args.timings,
    )
    try:
        reports = execute_session(parse_session(text), cfg)
    except DSLError as e:
        return _fail(_exit_code(e), f"{args.file}:{e.render()}")
    except DegreeCapError as e:
        return _fail(EXIT_CAP, str(e))
    except InvariantViolation as e:
        return _fail(EXIT_INVARIANT, f"internal invariant violated: {e}")
    except UsageError as e:
        return _fail(EXIT_USAGE, str(e))
    sys.stdout.buffer.write(render(reports, args.format))
    sys.stdout.flush()
    if args.json:
        Path(args.json).write_bytes(render(reports, "json"))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "run":
        return run(args)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
