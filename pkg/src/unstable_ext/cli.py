"""Command line front end.

Subcommands:

* ``resolve``: compute one minimal resolution and emit it as a JSON
  document (the same format the cache uses, hash included).
* ``ext``: chart of a sphere read off resolution summand counts.
* ``ehp``: assemble and verify the long exact sequences for a sphere.
* ``lambda``: the same chart computed from the admissible-word complex,
  which shares no code with the resolution engine.
* ``compare``: run both chart routes over a window and require agreement.
* ``check``: internal consistency sweep (differentials square to zero,
  realized complexes are exact, split charts add up).

Exit codes: 0 success, 1 verification failure, 2 usage or I/O problems,
3 internal inconsistency (including unusable cache files).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from unstable_ext import ext_ehp as ee
from unstable_ext import lambda_oracle as lo
from unstable_ext import resolution as res
from unstable_ext.errors import InternalError, StaleCacheError


def _cache_path(cache_dir: str, t: int, s_max: int) -> str:
    return os.path.join(cache_dir, f"bg_t{t}_s{s_max}.json")


def _cached_resolution(t: int, s_max: int, cache_dir: str | None):
    if cache_dir is None:
        return res.minimal_resolution(t, s_max)
    path = _cache_path(cache_dir, t, s_max)
    if os.path.exists(path):
        return res.load_complex(path)
    cx = res.minimal_resolution(t, s_max)
    os.makedirs(cache_dir, exist_ok=True)
    tmp = f"{path}.tmp{os.getpid()}"
    res.save_complex(cx, tmp)
    os.replace(tmp, path)
    return cx


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _chart_entries(chart: dict[tuple[int, int], int]) -> list[dict]:
    return [
        {"s": s, "t": t, "dim": dim}
        for (s, t), dim in sorted(
            chart.items(), key=lambda kv: (kv[0][1], kv[0][0])
        )
        if dim
    ]


def _render_chart(n: int, chart: dict, fmt: str, extra: dict | None = None) -> str:
    if fmt == "tsv":
        return ee.render_chart_tsv(n, chart)
    if fmt == "ascii":
        return ee.render_chart_ascii(n, chart)
    doc = {"sphere": n, "entries": _chart_entries(chart)}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _cmd_resolve(args: argparse.Namespace) -> int:
    s_max = args.max_s if args.max_s is not None else args.suspension
    cx = _cached_resolution(args.suspension, s_max, args.cache_dir)
    if args.format == "tsv":
        lines = ["s\tindex\tcount"]
        for (s, index), count in sorted(res.summand_counts(cx).items()):
            lines.append(f"{s}\t{index}\t{count}")
        _emit("\n".join(lines) + "\n", args.output)
        return 0
    payload = res.to_payload(cx)
    payload["hash"] = res.content_hash(res.to_payload(cx))
    _emit(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", args.output
    )
    return 0


def _cmd_ext(args: argparse.Namespace) -> int:
    if args.sphere < 1:
        raise ValueError(f"sphere index must be >= 1, got {args.sphere}")
    chart: dict[tuple[int, int], int] = {}
    for t in range(1, args.max_t + 1):
        cx = _cached_resolution(t, args.max_s, args.cache_dir)
        for (index, s), tags in ee.chart_of(cx).items():
            if index == args.sphere:
                chart[(s, t)] = len(tags)
    _emit(_render_chart(args.sphere, chart, args.format), args.output)
    return 0


def _cmd_ehp(args: argparse.Namespace) -> int:
    payloads = []
    for t in range(1, args.max_t + 1):
        seq = ee.ehp_assemble(args.sphere, t, args.max_s)
        payloads.append(ee.ehp_to_payload(seq, ee.verify_ehp(seq)))
    if args.format == "tsv":
        lines = ["t\ts\te_dim\tmiddle_dim\th_dim\tp_rank"]
        for doc in payloads:
            for col in doc["columns"]:
                lines.append(
                    f"{doc['t']}\t{col['s']}\t{col['e_source_dim']}\t"
                    f"{col['middle_dim']}\t{col['h_target_dim']}\t"
                    f"{col['p_rank']}"
                )
        _emit("\n".join(lines) + "\n", args.output)
        return 0
    _emit(
        json.dumps({"sequences": payloads}, indent=2, sort_keys=True)
        + "\n",
        args.output,
    )
    return 0


def _cmd_lambda(args: argparse.Namespace) -> int:
    n = args.sphere
    chart = {
        key: dim
        for key, dim in lo.homology(n, args.max_s, args.max_t - n).items()
        if key[1] <= args.max_t
    }
    extra = None
    if args.representatives:
        cycles = []
        for (s, t), dim in sorted(chart.items(), key=lambda kv: kv[0][::-1]):
            reps = lo.cycle_representatives(n, s, t - n)
            cycles.append(
                {
                    "s": s,
                    "t": t,
                    "dim": dim,
                    "cycles": [[list(word) for word in rep] for rep in reps],
                }
            )
        extra = {"representatives": cycles}
    _emit(_render_chart(n, chart, args.format, extra), args.output)
    return 0


def _word_chart(task: tuple[int, int, int]):
    n, t_max, s_max = task
    hom = lo.homology(n, s_max, t_max - n)
    return n, sorted(
        (s, t, dim) for (s, t), dim in hom.items() if t <= t_max
    )


def _cmd_compare(args: argparse.Namespace) -> int:
    if args.max_n < 1 or args.jobs < 1:
        raise ValueError("need max-n >= 1 and jobs >= 1")
    tasks = [(n, args.max_t, args.max_s) for n in range(1, args.max_n + 1)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            word_side = dict(pool.map(_word_chart, tasks))
    else:
        word_side = dict(map(_word_chart, tasks))
    failed = False
    lines = []
    for n in range(1, args.max_n + 1):
        chart = ee.sphere_chart(n, args.max_t, args.max_s)
        from_counts = sorted((s, t, dim) for (s, t), dim in chart.items())
        if from_counts == word_side[n]:
            lines.append(
                f"n={n}: {len(from_counts)} chart entries agree"
            )
        else:
            failed = True
            only_res = set(from_counts) - set(word_side[n])
            only_word = set(word_side[n]) - set(from_counts)
            lines.append(
                f"n={n}: MISMATCH resolution-only={sorted(only_res)} "
                f"word-only={sorted(only_word)}"
            )
    lines.append(
        "charts disagree" if failed else "both routes agree on every chart"
    )
    _emit("\n".join(lines) + "\n", args.output)
    return 1 if failed else 0


def _cmd_check(args: argparse.Namespace) -> int:
    lines = []
    for t in range(1, args.max_t + 1):
        cx = res.minimal_resolution(t, args.max_s)
        res.check_d2(cx)
        d_max = args.max_d if args.max_d is not None else 2 * t + 2
        res.verify_exactness(cx, d_max)
        lines.append(
            f"t={t}: differential squares to zero, realized complex "
            f"exact through degree {d_max}"
        )
    k = 1
    while 2**k + 1 <= args.max_t:
        ee.james_splitting_check(k, args.max_t - 1, min(args.max_s, 8))
        lines.append(f"split charts add up for middle sphere {2 ** k}")
        k += 1
    lines.append("all checks passed")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unstable-ext",
        description="Minimal injective resolutions, sphere charts, and "
        "the long exact sequences connecting them, over GF(2).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", help="compute one minimal resolution")
    p.add_argument("-t", "--suspension", type=int, required=True)
    p.add_argument("--max-s", type=int, default=None)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("-o", "--output")
    p.add_argument("--cache-dir")
    p.set_defaults(func=_cmd_resolve)

    p = sub.add_parser("ext", help="sphere chart from summand counts")
    p.add_argument("-n", "--sphere", type=int, required=True)
    p.add_argument("--max-t", type=int, default=12)
    p.add_argument("--max-s", type=int, default=8)
    p.add_argument(
        "--format", choices=("json", "tsv", "ascii"), default="json"
    )
    p.add_argument("-o", "--output")
    p.add_argument("--cache-dir")
    p.set_defaults(func=_cmd_ext)

    p = sub.add_parser(
        "ehp", help="assemble and verify the long exact sequences"
    )
    p.add_argument("-n", "--sphere", type=int, required=True)
    p.add_argument("--max-t", type=int, default=8)
    p.add_argument("--max-s", type=int, default=6)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_ehp)

    p = sub.add_parser(
        "lambda", help="sphere chart from the admissible-word complex"
    )
    p.add_argument("-n", "--sphere", type=int, required=True)
    p.add_argument("--max-t", type=int, default=12)
    p.add_argument("--max-s", type=int, default=8)
    p.add_argument(
        "--format", choices=("json", "tsv", "ascii"), default="json"
    )
    p.add_argument(
        "--representatives",
        action="store_true",
        help="include cocycle representatives (json only)",
    )
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_lambda)

    p = sub.add_parser("compare", help="require both chart routes to agree")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-t", type=int, default=10)
    p.add_argument("--max-s", type=int, default=7)
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("check", help="internal consistency sweep")
    p.add_argument("--max-t", type=int, default=8)
    p.add_argument("--max-s", type=int, default=10)
    p.add_argument("--max-d", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StaleCacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(
            "delete the cache file and rerun to regenerate it",
            file=sys.stderr,
        )
        return 3
    except InternalError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
