"""Command-line front end.

Machine-readable output (documents, reports, summaries, profile records)
goes to stdout as JSON or profile text; human diagnostics go to stderr.
Exit codes: 0 verified success, 1 well-formed negative result (failed
verification, exhausted search, incomplete batch), 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .embedding import (
    DocumentParseError,
    embed_three_alternatives,
    embed_two_voters,
    read_embedding,
    render_svg,
    verify,
    write_embedding,
)
from .heuristic import (
    HeuristicConfig,
    Status,
    batch_run,
    exhausted_profiles_text,
    greedy_embed,
    summary_json,
)
from .profiles import (
    ProfileParseError,
    count_canonical,
    enumerate_canonical,
    parse_profile,
    serialize_profile,
)


def _read_text(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise ValueError(f"range must be LO..HI, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise ValueError(f"need 0 <= LO <= HI, got {text!r}")
    return lo, hi


def _report_json(report) -> str:
    return json.dumps(
        {
            "ok": report.ok,
            "min_slack": report.min_slack if report.min_slack != float("inf") else None,
            "violations": [list(v) for v in report.violations],
        },
        indent=2,
    )


def _cmd_verify(args) -> int:
    profile = parse_profile(_read_text(args.profile), strict=False)
    emb, _ = read_embedding(_read_text(args.embedding))
    report = verify(profile, emb, args.margin)
    print(_report_json(report))
    return 0 if report.ok else 1


def _cmd_embed(args) -> int:
    profile = parse_profile(_read_text(args.profile))
    strategy = args.strategy
    if strategy == "auto":
        if profile.n <= 2:
            strategy = "two-voter"
        elif profile.m <= 3:
            strategy = "three-alt"
        else:
            print(
                f"no construction covers n={profile.n}, m={profile.m}; "
                "use `search` for the randomized heuristic",
                file=sys.stderr,
            )
            return 2
    if strategy == "two-voter":
        if profile.n > 2:
            print(f"two-voter construction needs n <= 2, got n={profile.n}", file=sys.stderr)
            return 2
        emb = embed_two_voters(profile)
    else:
        if profile.m > 3:
            print(f"three-alt construction needs m <= 3, got m={profile.m}", file=sys.stderr)
            return 2
        emb = embed_three_alternatives(profile)
    report = verify(profile, emb, 0.0)
    sys.stdout.write(write_embedding(profile, emb, report))
    return 0 if report.ok else 1


def _config_from_args(args) -> HeuristicConfig:
    return HeuristicConfig(
        seed=args.seed,
        max_restarts=args.max_restarts,
        samples_per_placement=args.samples,
        voter_box=args.voter_box,
        placement_margin=args.placement_margin,
        verify_margin=args.verify_margin,
    )


def _cmd_search(args) -> int:
    profile = parse_profile(_read_text(args.profile))
    cfg = _config_from_args(args)
    outcome = greedy_embed(profile, cfg)
    if outcome.status is Status.SUCCESS:
        sys.stdout.write(
            write_embedding(
                profile,
                outcome.embedding,
                outcome.report,
                metadata={"seed": cfg.seed, "config": asdict(cfg)},
            )
        )
        return 0
    print(
        json.dumps(
            {
                "status": "exhausted",
                "restarts_used": outcome.restarts_used,
                "placements_attempted": outcome.placements_attempted,
            }
        ),
        file=sys.stderr,
    )
    return 1


def _cmd_enumerate(args) -> int:
    if args.count_only:
        print(count_canonical(args.m))
        return 0
    lo, hi = _parse_range(args.range) if args.range else (0, None)
    index = lo
    for p in enumerate_canonical(args.m, lo, hi):
        sys.stdout.write(f"# {index}\n{serialize_profile(p)}")
        index += 1
    return 0


def _cmd_count(args) -> int:
    print(count_canonical(args.m))
    return 0


def _cmd_batch(args) -> int:
    lo, hi = _parse_range(args.range) if args.range else (0, None)
    cfg = _config_from_args(args)
    summary = batch_run(
        enumerate_canonical(args.m, lo, hi),
        cfg,
        workers=args.workers,
        out_dir=args.out,
        start_index=lo,
    )
    print(json.dumps(summary_json(summary), indent=2))
    print(f"elapsed: {summary.elapsed:.2f}s", file=sys.stderr)
    if summary.exhausted:
        sys.stderr.write(exhausted_profiles_text(summary))
    return 0 if summary.exhausted == 0 else 1


def _cmd_render(args) -> int:
    profile = parse_profile(_read_text(args.profile), strict=False)
    emb, _ = read_embedding(_read_text(args.embedding))
    svg = render_svg(profile, emb)
    with open(args.out, "w") as fh:
        fh.write(svg)
    return 0


_DEFAULT_CFG = HeuristicConfig()


def _add_heuristic_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=_DEFAULT_CFG.seed)
    sub.add_argument("--max-restarts", type=int, default=_DEFAULT_CFG.max_restarts)
    sub.add_argument(
        "--samples",
        type=int,
        default=_DEFAULT_CFG.samples_per_placement,
        help="samples per placement",
    )
    sub.add_argument("--voter-box", type=float, default=_DEFAULT_CFG.voter_box)
    sub.add_argument(
        "--placement-margin", type=float, default=_DEFAULT_CFG.placement_margin
    )
    sub.add_argument(
        "--verify-margin", type=float, default=_DEFAULT_CFG.verify_margin
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pref2d",
        description="Construct, search for, verify and enumerate planar preference embeddings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check an embedding document against a profile")
    p.add_argument("profile")
    p.add_argument("embedding")
    p.add_argument("--margin", type=float, default=0.0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("embed", help="closed-form construction (n <= 2 or m <= 3)")
    p.add_argument("profile")
    p.add_argument("--strategy", choices=["auto", "two-voter", "three-alt"], default="auto")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("search", help="randomized greedy search with restarts")
    p.add_argument("profile")
    _add_heuristic_flags(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("enumerate", help="stream canonical 3-voter profiles")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--range", help="half-open stream index range LO..HI")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("count", help="number of canonical 3-voter profiles")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("batch", help="run the search over the canonical stream")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--range", help="half-open stream index range LO..HI")
    p.add_argument("--out", help="directory for success documents")
    p.add_argument("--workers", type=int, default=1)
    _add_heuristic_flags(p)
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("render", help="draw a profile embedding as SVG")
    p.add_argument("profile")
    p.add_argument("embedding")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ProfileParseError, DocumentParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
