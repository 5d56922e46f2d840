"""Wall time of one estimator run per worker count; also checks that every
worker count returns the same estimates."""

import argparse
import os
import time

from tempmotif.motifs import get_template
from tempmotif.netio import project_static
from tempmotif.sampler import RunConfig, run
from tempmotif.synthetic import benchmark_network


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 2, 4, 8])
    ap.add_argument("--delta", type=int, default=1500)
    ap.add_argument("--template", default="triangle")
    ap.add_argument("--ell", type=int, default=3)
    args = ap.parse_args()

    T = benchmark_network()
    P = project_static(T)
    H = get_template(args.template)
    print(f"cpus={os.cpu_count()} samples={args.samples}")
    base = ref = None
    for w in args.workers:
        t0 = time.perf_counter()
        res = run(T, P, RunConfig(H, args.ell, args.delta, samples=args.samples, seed=1, workers=w))
        dt = time.perf_counter() - t0
        base = base or dt
        ref = ref or res.estimates
        print(f"workers={w:2d} time={dt:7.2f}s speedup={base / dt:5.2f}x identical={res.estimates == ref}")


if __name__ == "__main__":
    main()
