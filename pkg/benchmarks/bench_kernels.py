#!/usr/bin/env python3
"""Time the hot kernels on the pure and compiled backends.

Micro benchmarks call the two implementations directly on identical
seeded inputs; the optional end-to-end mode times a full resolution chain
in a subprocess per backend so the import-time selection is honest.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from unstable_ext import _pure

try:
    from unstable_ext import _kernels
except ImportError:
    _kernels = None


def best_of(repeats, fn):
    best = None
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def bench_straighten(mod, words, reducer, repeats):
    def run():
        mod.clear_caches()
        reduce_word = getattr(mod, reducer)
        for word in words:
            reduce_word(word)

    return best_of(repeats, run)


def bench_rref(mod, mats, repeats):
    def run():
        for rows, ncols in mats:
            mod.rref_bits(list(rows), ncols)

    return best_of(repeats, run)


def end_to_end(backend: str, t: int, s_max: int) -> float:
    env = dict(os.environ)
    env["UNSTABLE_EXT_BACKEND"] = backend
    script = (
        "import time; "
        "from unstable_ext import resolution as res; "
        "start = time.perf_counter(); "
        f"res.minimal_resolution({t}, {s_max}); "
        "print(time.perf_counter() - start)"
    )
    out = subprocess.run(
        [sys.executable, "-c", script],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return float(out.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=20260819)
    parser.add_argument(
        "--resolution",
        action="store_true",
        help="also time a full resolution chain per backend",
    )
    parser.add_argument("--max-t", type=int, default=14)
    parser.add_argument("--max-s", type=int, default=8)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    adem_words = [
        tuple(rng.randint(1, 40) for _ in range(rng.randint(2, 4)))
        for _ in range(300)
    ]
    lambda_words = [
        tuple(rng.randint(0, 25) for _ in range(rng.randint(2, 6)))
        for _ in range(300)
    ]
    mats = []
    for _ in range(40):
        ncols = rng.randint(60, 160)
        mats.append(
            ([rng.getrandbits(ncols) for _ in range(80)], ncols)
        )

    jobs = [
        (
            "adem straightening",
            lambda mod: bench_straighten(
                mod, adem_words, "adem_reduce_word", args.repeats
            ),
        ),
        (
            "word straightening",
            lambda mod: bench_straighten(
                mod, lambda_words, "lambda_reduce_word", args.repeats
            ),
        ),
        ("rref", lambda mod: bench_rref(mod, mats, args.repeats)),
    ]

    print(f"{'kernel':<22} {'pure':>10} {'native':>10} {'speedup':>8}")
    for name, runner in jobs:
        pure_s = runner(_pure)
        if _kernels is None:
            print(f"{name:<22} {pure_s:>9.4f}s {'n/a':>10} {'n/a':>8}")
            continue
        native_s = runner(_kernels)
        print(
            f"{name:<22} {pure_s:>9.4f}s {native_s:>9.4f}s "
            f"{pure_s / native_s:>7.1f}x"
        )

    if args.resolution:
        pure_s = end_to_end("pure", args.max_t, args.max_s)
        line = f"{'resolution chain':<22} {pure_s:>9.4f}s"
        if _kernels is not None:
            native_s = end_to_end("native", args.max_t, args.max_s)
            line += f" {native_s:>9.4f}s {pure_s / native_s:>7.1f}x"
        else:
            line += f" {'n/a':>10} {'n/a':>8}"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
