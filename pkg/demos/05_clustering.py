"""4-means clustering of nonminimal words by their length-reducing move.

Each nonminimal rank-2 word is shortened by at least one of the four Nielsen
moves.  Clustering f2 feature vectors with centers estimated from words that
a single move reduces recovers that structure: each cluster aligns almost
perfectly with one move, and the final centers predict a reducing move for
unseen words.
"""

from whitmin.automorphisms import reducing_moves
from whitmin.clustering import (clustering_experiment, predict_reducer,
                                report_centers_by_move)
from whitmin.datasets import DatasetSpec, generate_dataset
from whitmin.features import builtin_map


def main():
    ds = generate_dataset(DatasetSpec("D", max_length=300, per_length=6, seed=21))
    nonmin = ds.subset(ds.labels() == 2)
    fmap = builtin_map("f2", 2)
    print(f"{len(nonmin)} nonminimal words, clustering on {fmap.dim}-dim f2")

    for init in ("estimated", "random"):
        report = clustering_experiment(nonmin, fmap, init=init, seed=5)
        print(f"\ninit={init}: avg R_max {report.avg_r_max:.4f}")
        for i, move in enumerate(report.assignment):
            print(f"  cluster {i} ({report.cluster_sizes[i]:4d} words)"
                  f" -> {move.name:10s} R {report.r_max[i]:.4f}")

    report = clustering_experiment(nonmin, fmap, init="estimated", seed=5)
    centers = report_centers_by_move(report)
    hits = total = 0
    for w in nonmin.words()[:300]:
        moves = reducing_moves(w)
        if not moves:
            continue
        total += 1
        hits += predict_reducer(w, centers, fmap) in moves
    print(f"\nnearest-center reducer prediction: {hits}/{total} correct")


if __name__ == "__main__":
    main()
