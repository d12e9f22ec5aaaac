import itertools

import numpy as np
import pytest

from whitmin.features import (EMPTY, FeatureMap, Pattern, Wildcard,
                              builtin_map, count_pattern, feature_matrix,
                              feature_vector, pattern_pool, resolve_map,
                              whitehead_graph)
from whitmin.words import CyclicWord, parse_codes, parse_cyclic_word, random_word


def cw(text):
    return parse_cyclic_word(text, 2)


def naive_cyclic_count(w, p):
    """Independent oracle: literal scan of the doubled word over all wildcard
    length assignments."""
    n = len(w)
    doubled = w.letters + w.letters
    total = 0
    for lens in itertools.product(*(g.lengths() for g in p.gaps)):
        span = sum(lens) + sum(len(v) for v in p.fixed)
        if span == 0 or span > n:
            continue
        for start in range(n):
            pos = start + lens[0]
            ok = True
            for k, seg in enumerate(p.fixed):
                if doubled[pos:pos + len(seg)] != seg:
                    ok = False
                    break
                pos += len(seg) + lens[k + 1]
            if ok:
                total += 1
    return total


class TestCountPattern:
    def test_fixed_word_examples(self):
        assert count_pattern(cw("abab"), Pattern.from_word(parse_codes("ab"))) == 2
        p_mid = Pattern.pair(0, Wildcard("exact", 1), 0)  # a . U1 . a
        assert count_pattern(cw("abab"), p_mid) == 2

    def test_single_letters_sum_to_length(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            w = random_word(int(rng.integers(1, 20)), 2, cyclic=True, rng=rng)
            total = sum(count_pattern(w, Pattern.from_word((c,))) for c in range(4))
            assert total == len(w)

    def test_span_exceeding_length_is_zero(self):
        assert count_pattern(cw("ab"), Pattern.from_word(parse_codes("ababab"))) == 0

    def test_rotation_invariance(self):
        rng = np.random.default_rng(1)
        p = Pattern.pair(0, Wildcard("exact", 2), 3)
        for _ in range(30):
            w = random_word(int(rng.integers(4, 15)), 2, cyclic=True, rng=rng)
            base = count_pattern(w, p)
            for rot in w.rotations():
                assert count_pattern(CyclicWord(rot, 2), p) == base

    def test_linear_vs_cyclic_bounds(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            w = random_word(int(rng.integers(3, 15)), 2, cyclic=True, rng=rng)
            for p in (Pattern.from_word(parse_codes("ab")),
                      Pattern.pair(2, Wildcard("exact", 1), 0),
                      Pattern.pair(0, Wildcard("exact", 3), 2)):
                lin = count_pattern(w.to_word(), p, mode="linear")
                cyc = count_pattern(w, p, mode="cyclic")
                span = sum(len(v) for v in p.fixed) + \
                    sum(g.lengths()[-1] for g in p.gaps)
                assert lin <= cyc <= lin + (span - 1)

    def test_matches_naive_oracle(self):
        rng = np.random.default_rng(3)
        pats = [
            Pattern.from_word(parse_codes("ab")),
            Pattern.pair(1, Wildcard("exact", 2), 2),
            Pattern.pair(0, Wildcard("at_most", 3), 0),
            Pattern((parse_codes("a"), parse_codes("b"), parse_codes("a")),
                    (EMPTY, Wildcard("exact", 1), Wildcard("at_most", 1), EMPTY)),
        ]
        for _ in range(40):
            w = random_word(int(rng.integers(2, 14)), 2, cyclic=True, rng=rng)
            for p in pats:
                assert count_pattern(w, p) == naive_cyclic_count(w, p)


class TestFeatureVector:
    def test_f0_example(self):
        v = feature_vector(cw("abab"), builtin_map("f0", 2))
        assert np.allclose(v, [0.5, 0.0, 0.5, 0.0])

    def test_fstar_example(self):
        v = feature_vector(cw("AbAb"), builtin_map("fstar", 2))
        assert np.allclose(v, [0.5, 0.0])

    def test_f0_sums_to_one(self):
        rng = np.random.default_rng(4)
        f0 = builtin_map("f0", 2)
        for _ in range(30):
            w = random_word(int(rng.integers(1, 30)), 2, cyclic=True, rng=rng)
            assert abs(feature_vector(w, f0).sum() - 1.0) < 1e-12

    def test_empty_word_rejected(self):
        with pytest.raises(ValueError):
            feature_vector(CyclicWord((), 2), builtin_map("f0", 2))

    def test_dimension_always_matches(self):
        rng = np.random.default_rng(5)
        for name in ["f0", "f1", "f2", "f3", "f4", "f5", "f6", "fstar"]:
            fmap = builtin_map(name, 2)
            w = random_word(int(rng.integers(1, 20)), 2, cyclic=True, rng=rng)
            assert feature_vector(w, fmap).shape == (fmap.dim,)

    def test_fast_paths_match_generic_counts(self):
        rng = np.random.default_rng(6)
        fmap = builtin_map("f6", 2)
        for _ in range(20):
            w = random_word(int(rng.integers(1, 25)), 2, cyclic=True, rng=rng)
            fast = feature_vector(w, fmap)
            slow = np.array([count_pattern(w, p) for p in fmap.patterns]) / len(w)
            assert np.allclose(fast, slow)

    def test_partition_identity(self):
        # summing x1 . U_k . x2 over all ordered pairs covers every position
        rng = np.random.default_rng(7)
        for k in (1, 2, 3):
            fmap = builtin_map(f"f{k + 1}", 2)
            for _ in range(10):
                w = random_word(int(rng.integers(k + 2, 25)), 2, cyclic=True, rng=rng)
                counts = feature_vector(w, fmap) * len(w)
                assert abs(counts.sum() - len(w)) < 1e-9


class TestBuiltinMaps:
    def test_dimensions(self):
        assert builtin_map("f0", 2).dim == 4
        assert builtin_map("f1", 2).dim == 12
        assert builtin_map("f2", 2).dim == 16
        assert builtin_map("f5", 2).dim == 28
        assert builtin_map("f6", 2).dim == 60

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            builtin_map("f9", 2)

    def test_fstar_requires_rank_2(self):
        with pytest.raises(ValueError):
            builtin_map("fstar", 3)

    def test_resolve_pool_name(self):
        fmap = resolve_map("pool:1-2", 2)
        assert fmap.dim == 36 + 108


class TestPatternPool:
    def test_sizes(self):
        assert len(pattern_pool(2, 1, 3)) == 468
        assert len(pattern_pool(2, 1, 1)) == 36

    def test_all_composites_reduced(self):
        from whitmin.words import Word
        for p in pattern_pool(2, 1, 2):
            Word(p.fixed[0], 2)  # raises if not freely reduced

    def test_bad_range(self):
        with pytest.raises(ValueError):
            pattern_pool(2, 0, 3)


class TestWhiteheadGraph:
    def test_adjacent_pairs(self):
        g = whitehead_graph(cw("abab"), max_label_len=0)
        assert g.weight(0, (), 2) == 2  # a -> b
        assert g.weight(2, (), 0) == 2  # b -> a
        assert sum(v for (x, lab, y), v in g.edges.items() if lab == ()) == 4

    def test_labelled_edge(self):
        g = whitehead_graph(cw("abAB"), max_label_len=1)
        assert g.weight(0, (2,), 1) == 1  # a b a^-1 occurs once

    def test_needs_length_two(self):
        with pytest.raises(ValueError):
            whitehead_graph(cw("a"), max_label_len=1)

    def test_weights_match_counts(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            w = random_word(int(rng.integers(3, 12)), 2, cyclic=True, rng=rng)
            g = whitehead_graph(w, max_label_len=2)
            for (x, lab, y), wt in g.edges.items():
                p = Pattern.from_word((x,) + lab + (y,))
                assert wt == count_pattern(w, p)
