"""Country-survey experiment: entropy-distance matrix, k-means on its rows.

Writes matrix.csv, clusters.json, cluster_scatter.csv and profiles.csv to
--out, then prints the clusters and a co-membership tally over seeds.
"""
import argparse
import itertools
from collections import Counter

from fuzzydist.cli import main as cli
from fuzzydist.cluster import build_distance_matrix, cluster_report, kmeans
from fuzzydist.dataset import load_table1, to_fuzzy_sets
from fuzzydist.metrics import entropy_distance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="runs/table1")
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--seeds", type=int, default=100, help="seeds for the co-membership tally")
    args = ap.parse_args()

    for cmd in (["matrix"], ["cluster", "--k", str(args.k), "--seed", str(args.seed)], ["profiles"]):
        cli([cmd[0], "fixture:table1", *cmd[1:], "--out", args.out])

    dm = build_distance_matrix(to_fuzzy_sets(load_table1()), entropy_distance)
    report = cluster_report(kmeans(dm, k=args.k, seed=args.seed), dm.labels)
    for c in report["clusters"]:
        members = ", ".join(f"{m['entity']} ({m['distance']:.3f})" for m in c["members"])
        print(f"cluster {c['cluster']}  n={c['size']}  mean={c['mean_distance']:.3f}: {members}")

    pairs = Counter()
    for seed in range(args.seeds):
        a = kmeans(dm, k=args.k, seed=seed).assignments
        for i, j in itertools.combinations(range(len(a)), 2):
            if a[i] == a[j]:
                pairs[dm.labels[i], dm.labels[j]] += 1
    print(f"\nmost stable pairs over {args.seeds} seeds:")
    for (x, y), n in pairs.most_common(12):
        print(f"  {n:3d}  {x} / {y}")
    for x, y in [("Hungary", "Russian Fed"), ("Ukraine", "Turkey"), ("Israel", "Hungary"), ("Spain", "Norway")]:
        print(f"  {pairs[x, y] + pairs[y, x]:3d}  {x} / {y}")


if __name__ == "__main__":
    main()
