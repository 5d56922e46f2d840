"""MAPE of the estimator against exact counts as the sample budget grows,
for each edge-sampling distribution."""

import argparse

from tempmotif.enumeration import DISTRIBUTIONS
from tempmotif.evaluation import evaluate
from tempmotif.motifs import get_template
from tempmotif.netio import project_static
from tempmotif.oracle import exact_count
from tempmotif.sampler import RunConfig, run
from tempmotif.synthetic import benchmark_network


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--template", default="triangle")
    ap.add_argument("--ell", type=int, default=3)
    ap.add_argument("--delta", type=int, default=1500)
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--samples", type=int, nargs="+", default=[100, 300, 1000, 3000])
    args = ap.parse_args()

    T = benchmark_network()
    P = project_static(T)
    H = get_template(args.template)
    exact = exact_count(T, H, args.ell, args.delta).counts
    print(f"{'distribution':>16} " + " ".join(f"s={s:>6}" for s in args.samples) + "   (max MAPE %)")
    for kind in DISTRIBUTIONS:
        row = []
        for s in args.samples:
            runs = [run(T, P, RunConfig(H, args.ell, args.delta, samples=s, distribution=kind,
                                        seed=r, cache_edges=True)).estimates for r in range(args.runs)]
            row.append(evaluate(runs, exact).max_mape)
        print(f"{kind:>16} " + " ".join(f"{m:8.2f}" for m in row))


if __name__ == "__main__":
    main()
