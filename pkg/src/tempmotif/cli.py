"""Command-line front end.

    tempmotif estimate --input net.txt --template triangle --ell 3 --delta 3600 --samples 10000
    tempmotif exact    --input net.txt --template triangle --ell 3 --delta 3600 --breakdown
    tempmotif eval     --input net.txt --exact exact.csv --template triangle --ell 3 --delta 3600 --samples 1000
    tempmotif null     --input net.txt --template triangle --ell 3 --delta 3600 --shuffles 100
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .enumeration import DISTRIBUTIONS
from .evaluation import evaluate
from .motifs import MotifEncoding, enumerate_motif_class, get_template
from .netio import load_temporal_network, project_static
from .oracle import DEFAULT_BUDGET, exact_count, null_ensemble, z_scores
from .sampler import RunConfig, run

log = logging.getLogger("tempmotif")


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="edge list, one 'src dst t' per line")
    p.add_argument("--template", required=True,
                   help="edge | triangle | square | path2 | file:PATH")
    p.add_argument("--ell", type=int, required=True, help="edges per motif")
    p.add_argument("--delta", type=int, required=True, help="duration bound, timestamp units")
    p.add_argument("--dedup", action="store_true", help="drop repeated (src, dst, t) triples")
    p.add_argument("--time-scale", type=float, default=None,
                   help="parse real timestamps, storing round(t * scale)")
    p.add_argument("--out", default=None, help="CSV destination (default stdout)")
    p.add_argument("--meta", default=None,
                   help="metadata sidecar path (default OUT.meta.json when --out is given)")


def _estimator(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_argument_group("estimator")
    g.add_argument("--samples", type=int, default=None)
    g.add_argument("--epsilon", type=float, default=None)
    g.add_argument("--eta", type=float, default=None)
    g.add_argument("--distribution", choices=DISTRIBUTIONS, default="temporal-weight")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--workers", type=int, default=1)
    g.add_argument("--cache-edges", action="store_true",
                   help="reuse per-edge counts when an edge is drawn again")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tempmotif", description="Count temporal motifs: sampling estimates, exact counts, MAPE, null-model Z-scores.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--config", default=None,
                        help="JSON file of flag defaults, e.g. {\"delta\": 3600}; command-line flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="sampling estimates of all motif counts")
    _common(p)
    _estimator(p)
    p.add_argument("--report-zeros", action="store_true",
                   help="also list class members with no sampled instance")

    p = sub.add_parser("exact", help="exact counts by exhaustive enumeration")
    _common(p)
    p.add_argument("--breakdown", action="store_true", help="add per-static-edge counts")
    p.add_argument("--verify", action="store_true",
                   help="check that per-edge counts sum to the template edge count times each count")
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("eval", help="MAPE of repeated estimates against exact counts")
    _common(p)
    _estimator(p)
    p.add_argument("--exact", required=True, help="CSV written by the exact subcommand")
    p.add_argument("--runs", type=int, default=10)

    p = sub.add_parser("null", help="timeline-shuffle null model and Z-scores")
    _common(p)
    _estimator(p)
    p.add_argument("--shuffles", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "estimate"), default="exact")
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    return parser


def _check_estimator(args) -> None:
    if args.samples is not None and (args.epsilon is not None or args.eta is not None):
        raise UsageError("--samples cannot be combined with --epsilon/--eta")
    if args.samples is None and (args.epsilon is None or args.eta is None):
        raise UsageError("give --samples, or both --epsilon and --eta")
    if args.samples is not None and args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if args.epsilon is not None and args.epsilon <= 0:
        raise UsageError("--epsilon must be positive")
    if args.eta is not None and not 0 < args.eta < 1:
        raise UsageError("--eta must lie in (0, 1)")
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")


def _load(args):
    data = Path(args.input).read_bytes()
    T = load_temporal_network(io.StringIO(data.decode()), dedup=args.dedup, time_scale=args.time_scale)
    return T, project_static(T), hashlib.sha256(data).hexdigest()


def _config(args, H, seed=None) -> RunConfig:
    return RunConfig(
        template=H, ell=args.ell, delta=args.delta,
        samples=args.samples, epsilon=args.epsilon, eta=args.eta,
        distribution=args.distribution, seed=args.seed if seed is None else seed,
        workers=args.workers, cache_edges=args.cache_edges,
    )


def _emit(args, header, rows, meta) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    meta_path = args.meta or (args.out + ".meta.json" if args.out else None)
    if meta_path:
        flags = {k: v for k, v in vars(args).items() if k not in ("func",)}
        meta = {"version": __version__, "flags": flags, **meta}
        Path(meta_path).write_text(json.dumps(meta, indent=2, sort_keys=True, default=str) + "\n")


def _net_meta(T, P, digest) -> dict:
    return {"input_sha256": digest, "n": T.n, "m": T.m, "static_edges": P.num_edges,
            "alpha": P.alpha, "self_loops_dropped": T.self_loops_dropped,
            "duplicates_dropped": T.duplicates_dropped}


def _fmt(x: float) -> str:
    return repr(float(x))


def cmd_estimate(args) -> int:
    _check_estimator(args)
    H = get_template(args.template)
    T, P, digest = _load(args)
    res = run(T, P, _config(args, H))
    est = dict(res.estimates)
    if args.report_zeros:
        for enc in enumerate_motif_class(H, args.ell).members:
            est.setdefault(enc, 0.0)
    rows = [(enc.display, enc.edge_seq, _fmt(v)) for enc, v in sorted(est.items())]
    meta = {"samples": res.samples, "seed": args.seed, "distribution": args.distribution,
            "elapsed": res.wall_time, **_net_meta(T, P, digest)}
    _emit(args, ("motif", "edge_seq", "estimate"), rows, meta)
    return 0


def cmd_exact(args) -> int:
    H = get_template(args.template)
    T, P, digest = _load(args)
    t0 = time.perf_counter()
    need_bd = args.breakdown or args.verify
    ex = exact_count(T, H, args.ell, args.delta, with_breakdown=need_bd,
                     budget=int(args.budget), workers=args.workers, proj=P)
    elapsed = time.perf_counter() - t0
    status = 0
    if args.verify:
        bad = ex.identity_violations(H.num_edges)
        if bad:
            print(f"per-edge identity fails for {len(bad)} motif(s): "
                  + ", ".join(b.display for b in bad), file=sys.stderr)
            status = 1
        else:
            print(f"per-edge identity holds for all {len(ex.counts)} motif(s)", file=sys.stderr)
    labels = T.labels
    if args.breakdown:
        header = ("motif", "edge_seq", "count", "edge_u", "edge_v", "count_e")
        rows = []
        for enc, c in ex.sorted_items():
            for e, ce in sorted(ex.breakdown[enc].items()):
                u, v = P.endpoints(e)
                rows.append((enc.display, enc.edge_seq, c, int(labels[u]), int(labels[v]), ce))
    else:
        header = ("motif", "edge_seq", "count")
        rows = [(enc.display, enc.edge_seq, c) for enc, c in ex.sorted_items()]
    _emit(args, header, rows, {"elapsed": elapsed, **_net_meta(T, P, digest)})
    return status


def read_exact_csv(path) -> dict[MotifEncoding, int]:
    out = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out[MotifEncoding.from_display(row["motif"])] = int(row["count"])
    return out


def cmd_eval(args) -> int:
    _check_estimator(args)
    if args.runs < 1:
        raise UsageError("--runs must be >= 1")
    H = get_template(args.template)
    exact = read_exact_csv(args.exact)
    T, P, digest = _load(args)
    runs, times = [], []
    for r in range(args.runs):
        res = run(T, P, _config(args, H, seed=args.seed + r))
        runs.append(res.estimates)
        times.append(res.wall_time)
    rep = evaluate(runs, exact, times)
    rows = [(enc.display, _fmt(e.mape), _fmt(e.min_rel_err), _fmt(e.max_rel_err))
            for enc, e in sorted(rep.errors.items())]
    for enc in rep.missing_exact:
        print(f"warning: motif {enc.display} estimated but missing from {args.exact}", file=sys.stderr)
        rows.append((enc.display, "NA", "NA", "NA"))
    meta = {"runs": args.runs, "run_times": times, "mean_runtime": rep.mean_runtime,
            "missing_exact": [e.display for e in rep.missing_exact], **_net_meta(T, P, digest)}
    _emit(args, ("motif", "mape", "min_rel_err", "max_rel_err"), rows, meta)
    return 0


def cmd_null(args) -> int:
    if args.shuffles < 2:
        raise UsageError("--shuffles must be >= 2")
    if args.mode == "estimate":
        _check_estimator(args)
    H = get_template(args.template)
    T, P, digest = _load(args)
    t0 = time.perf_counter()
    if args.mode == "exact":
        def counter(net):
            return exact_count(net, H, args.ell, args.delta, budget=int(args.budget)).counts
    else:
        def counter(net):
            return run(net, None, _config(args, H)).estimates
    original = counter(T)
    ens = null_ensemble(T, counter, args.shuffles, seed=args.seed)
    z = z_scores(original, ens)
    rows = [(enc.display, _fmt(original.get(enc, 0)), _fmt(ens.mean(enc)), _fmt(ens.std(enc)), _fmt(zv))
            for enc, zv in sorted(z.items())]
    meta = {"source": args.mode, "shuffles": args.shuffles, "seed": args.seed,
            "elapsed": time.perf_counter() - t0, **_net_meta(T, P, digest)}
    _emit(args, ("motif", "count", "null_mean", "null_std", "z"), rows, meta)
    return 0


COMMANDS = {"estimate": cmd_estimate, "exact": cmd_exact, "eval": cmd_eval, "null": cmd_null}


def config_argv(path: str) -> list[str]:
    """Turn a JSON object of flag values into argv tokens."""
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise UsageError(f"{path}: expected a JSON object")
    out = []
    for key, val in cfg.items():
        flag = "--" + key.replace("_", "-")
        if val is True:
            out.append(flag)
        elif val is False or val is None:
            continue
        else:
            out += [flag, str(val)]
    return out


def _splice_config(parser, argv: list[str]) -> list[str]:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return argv
    try:
        extra = config_argv(known.config)
    except (OSError, ValueError, UsageError) as exc:
        parser.error(f"--config: {exc}")
    # config values go right after the subcommand so later flags override them
    for i, tok in enumerate(argv):
        if tok in COMMANDS:
            return argv[: i + 1] + extra + argv[i + 1:]
    return argv


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_splice_config(parser, argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
