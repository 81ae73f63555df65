#!/usr/bin/env python3
"""Desk-scale reproduction of the 3-voter / 7-alternative experiment.

Draws a seeded uniform sample of canonical profiles, runs the greedy search
on each with its stream-index-derived seed (so results match what a full
ranged run would produce for the same profiles), and reports the outcome
with a restart histogram.

The full 12.7M-profile run is the same thing without sampling; partition it
with the CLI, e.g.:

    pref2d batch --m 7 --range 0..1000000 --workers 8 > part0.json
    pref2d batch --m 7 --range 1000000..2000000 --workers 8 > part1.json
    ...
"""

import argparse
import json
import random
import sys
import time
from dataclasses import replace

from pref2d import (
    HeuristicConfig,
    Status,
    canonical_profile_at,
    count_canonical,
    derive_profile_seed,
    greedy_embed,
    serialize_profile,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=7)
    ap.add_argument("--sample-size", type=int, default=5000)
    ap.add_argument("--sample-seed", type=int, default=20240,
                    help="seed for drawing the profile sample")
    ap.add_argument("--config-seed", type=int, default=0,
                    help="base seed for per-profile search seeds")
    ap.add_argument("--max-restarts", type=int, default=HeuristicConfig().max_restarts)
    ap.add_argument("--samples", type=int, default=HeuristicConfig().samples_per_placement)
    args = ap.parse_args()

    total = count_canonical(args.m)
    size = min(args.sample_size, total)
    indices = sorted(random.Random(args.sample_seed).sample(range(total), size))
    cfg = HeuristicConfig(
        seed=args.config_seed,
        max_restarts=args.max_restarts,
        samples_per_placement=args.samples,
    )

    t0 = time.time()
    histogram: dict[int, int] = {}
    failures: list[int] = []
    for done, idx in enumerate(indices, start=1):
        p = canonical_profile_at(args.m, idx)
        out = greedy_embed(p, replace(cfg, seed=derive_profile_seed(cfg.seed, idx)))
        histogram[out.restarts_used] = histogram.get(out.restarts_used, 0) + 1
        if out.status is not Status.SUCCESS:
            failures.append(idx)
            print(f"EXHAUSTED at stream index {idx}:", file=sys.stderr)
            sys.stderr.write(serialize_profile(p))
        if done % 500 == 0:
            rate = done / (time.time() - t0)
            print(
                f"  {done}/{size} profiles, {len(failures)} failures, "
                f"{rate:.0f} profiles/s",
                file=sys.stderr,
            )

    elapsed = time.time() - t0
    print(
        json.dumps(
            {
                "m": args.m,
                "sampled": size,
                "successes": size - len(failures),
                "exhausted": len(failures),
                "failed_indices": failures,
                "restart_histogram": {
                    str(k): histogram[k] for k in sorted(histogram)
                },
            },
            indent=2,
        )
    )
    print(f"elapsed: {elapsed:.1f}s", file=sys.stderr)
    return 0 if not failures else 1


if __name__ == "__main__":
    sys.exit(main())
