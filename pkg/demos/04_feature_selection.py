"""Greedy forward feature selection over the subword-pattern pool.

Starting from nothing, repeatedly adds the pattern x1 v x2 that most improves
validation accuracy of the regression classifier.  On rank-2 data the first
picks tend to be the fstar-style patterns (Ab / Ba and friends).
"""

from whitmin.datasets import DatasetSpec, generate_dataset
from whitmin.features import pattern_pool
from whitmin.pipeline import greedy_feature_selection


def main():
    train = generate_dataset(DatasetSpec("D", max_length=120, per_length=5, seed=31))
    val = generate_dataset(DatasetSpec("Se", max_length=120, per_length=5, seed=32))

    pool = pattern_pool(2, 1, 1)   # middles of length 1: 36 patterns
    print(f"pool of {len(pool)} patterns, {len(train)} train / {len(val)} val words")

    chosen = greedy_feature_selection(pool, train, val, max_features=6)
    print("selected, in acceptance order:")
    for rank, idx in enumerate(chosen, start=1):
        print(f"  {rank}. pattern {idx:3d}  {pool[idx].text()}")


if __name__ == "__main__":
    main()
