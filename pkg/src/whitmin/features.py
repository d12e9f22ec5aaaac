"""Subword-counting features: patterns, the built-in maps f0..f6 and fstar,
the weighted labelled digraph of a word, and the feature-selection pattern pool.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .words import CyclicWord, Word, format_codes, inverse_code


@dataclass(frozen=True)
class Wildcard:
    """A wildcard slot in a pattern: matches any subword of an allowed length.

    kind 'exact'   -> exactly ``size`` letters
    kind 'at_most' -> 0..size letters (includes the empty word)
    kind 'empty'   -> the empty word only
    """

    kind: str
    size: int = 0

    def __post_init__(self):
        if self.kind not in ("exact", "at_most", "empty"):
            raise ValueError(f"unknown wildcard kind {self.kind!r}")
        if self.size < 0:
            raise ValueError("wildcard size must be >= 0")

    def lengths(self) -> range:
        if self.kind == "exact":
            return range(self.size, self.size + 1)
        if self.kind == "at_most":
            return range(0, self.size + 1)
        return range(0, 1)

    def text(self) -> str:
        if self.kind == "exact":
            return f"U{self.size}"
        if self.kind == "at_most":
            return f"W{self.size}"
        return ""


EMPTY = Wildcard("empty")


@dataclass(frozen=True)
class Pattern:
    """Alternating pattern U_1 v_1 U_2 ... v_K U_{K+1}.

    ``fixed`` holds the letter-code tuples v_1..v_K and ``gaps`` the K+1
    wildcard slots around them.  Matches are counted per (start position,
    wildcard length assignment); any subword of a reduced word is reduced,
    so matched instantiations are automatically freely reduced.
    """

    fixed: Tuple[Tuple[int, ...], ...]
    gaps: Tuple[Wildcard, ...]

    def __post_init__(self):
        if len(self.gaps) != len(self.fixed) + 1:
            raise ValueError("need exactly K+1 wildcards for K fixed segments")
        if not self.fixed and all(g.kind == "empty" for g in self.gaps):
            raise ValueError("pattern matches only the empty word")

    @staticmethod
    def from_word(codes: Sequence[int]) -> "Pattern":
        return Pattern((tuple(codes),), (EMPTY, EMPTY))

    @staticmethod
    def pair(x1: int, mid: Wildcard, x2: int) -> "Pattern":
        return Pattern(((x1,), (x2,)), (EMPTY, mid, EMPTY))

    @property
    def min_span(self) -> int:
        return sum(len(v) for v in self.fixed) + sum(g.lengths()[0] for g in self.gaps)

    def text(self) -> str:
        parts: List[str] = []
        for gap, seg in itertools.zip_longest(self.gaps, self.fixed):
            t = gap.text()
            if t:
                parts.append(t)
            if seg is not None:
                parts.append(format_codes(seg))
        return ".".join(parts) if len(parts) > 1 else (parts[0] if parts else "")


def _letters_of(w: Union[Word, CyclicWord]) -> Tuple[int, ...]:
    return w.letters


def count_pattern(w: Union[Word, CyclicWord], p: Pattern, mode: str = "cyclic") -> int:
    """Number of occurrences of the pattern in w.

    Cyclic mode scans all |w| start positions of the doubled word with total
    span at most |w|; linear mode scans the linear representative.
    """
    if mode not in ("cyclic", "linear"):
        raise ValueError(f"unknown mode {mode!r}")
    letters = _letters_of(w)
    n = len(letters)
    if n == 0:
        return 0
    doubled = letters + letters if mode == "cyclic" else letters
    starts = n if mode == "cyclic" else n
    fixed_len = sum(len(v) for v in p.fixed)

    total = 0
    for assignment in itertools.product(*(g.lengths() for g in p.gaps)):
        span = fixed_len + sum(assignment)
        if span > n or span == 0:
            continue
        # offsets of each fixed segment inside a match with these gap lengths
        offsets = []
        pos = assignment[0]
        for k, seg in enumerate(p.fixed):
            offsets.append(pos)
            pos += len(seg) + assignment[k + 1]
        for start in range(starts):
            if mode == "linear" and start + span > n:
                break
            ok = True
            for off, seg in zip(offsets, p.fixed):
                base = start + off
                if doubled[base:base + len(seg)] != seg:
                    ok = False
                    break
            if ok:
                total += 1
    return total


@dataclass(frozen=True)
class FeatureMap:
    """A named, ordered list of patterns over a fixed rank."""

    name: str
    patterns: Tuple[Pattern, ...]
    rank: int

    @property
    def dim(self) -> int:
        return len(self.patterns)

    def column_names(self) -> List[str]:
        return [p.text() for p in self.patterns]


def _pair_exact_gap(p: Pattern) -> Optional[Tuple[int, int, int]]:
    """If p is x1 . U_k . x2 (exact gap) or a fixed 2-letter word, return
    (x1, k, x2); otherwise None."""
    if len(p.fixed) == 1 and len(p.fixed[0]) == 2 and p.gaps[0].kind == "empty" \
            and p.gaps[1].kind == "empty":
        return p.fixed[0][0], 0, p.fixed[0][1]
    if len(p.fixed) == 2 and len(p.fixed[0]) == 1 and len(p.fixed[1]) == 1 \
            and p.gaps[0].kind == "empty" and p.gaps[2].kind == "empty" \
            and p.gaps[1].kind == "exact":
        return p.fixed[0][0], p.gaps[1].size, p.fixed[1][0]
    return None


def _fixed_word(p: Pattern) -> Optional[Tuple[int, ...]]:
    if len(p.fixed) == 1 and all(g.kind == "empty" for g in p.gaps):
        return p.fixed[0]
    return None


def _pair_count_table(arr: np.ndarray, gap: int, rank: int) -> np.ndarray:
    """(2r x 2r) table of cyclic counts of x1 . U_gap . x2 subwords."""
    m = 2 * rank
    n = arr.shape[0]
    if gap + 2 > n:
        return np.zeros((m, m), dtype=np.int64)
    pairs = arr * m + np.roll(arr, -(gap + 1))
    return np.bincount(pairs, minlength=m * m).reshape(m, m)


def _fixed_word_count(arr: np.ndarray, seg: Tuple[int, ...]) -> int:
    n = arr.shape[0]
    if len(seg) > n:
        return 0
    mask = arr == seg[0]
    for j in range(1, len(seg)):
        mask = mask & (np.roll(arr, -j) == seg[j])
    return int(mask.sum())


def feature_vector(w: CyclicWord, fmap: FeatureMap) -> np.ndarray:
    """Per-pattern cyclic counts divided by |w|."""
    n = len(w)
    if n == 0:
        raise ValueError("feature vector undefined for the empty word")
    arr = np.asarray(w.letters, dtype=np.int64)
    tables: Dict[int, np.ndarray] = {}
    out = np.empty(fmap.dim, dtype=np.float64)
    for i, p in enumerate(fmap.patterns):
        pair = _pair_exact_gap(p)
        if pair is not None:
            x1, gap, x2 = pair
            if gap not in tables:
                tables[gap] = _pair_count_table(arr, gap, fmap.rank)
            out[i] = tables[gap][x1, x2]
            continue
        seg = _fixed_word(p)
        if seg is not None:
            if len(seg) == 1:
                out[i] = int((arr == seg[0]).sum())
            else:
                out[i] = _fixed_word_count(arr, seg)
            continue
        out[i] = count_pattern(w, p, mode="cyclic")
    return out / n


def feature_matrix(words: Sequence[CyclicWord], fmap: FeatureMap) -> np.ndarray:
    return np.vstack([feature_vector(w, fmap) for w in words])


# ---------------------------------------------------------------------------
# built-in maps
# ---------------------------------------------------------------------------

def _reduced_words_of_length(rank: int, length: int) -> List[Tuple[int, ...]]:
    """All freely reduced code tuples of the given length, lexicographic."""
    m = 2 * rank
    result: List[Tuple[int, ...]] = []

    def rec(prefix: List[int]):
        if len(prefix) == length:
            result.append(tuple(prefix))
            return
        for c in range(m):
            if prefix and c == prefix[-1] ^ 1:
                continue
            prefix.append(c)
            rec(prefix)
            prefix.pop()

    rec([])
    return result


def _pair_patterns(rank: int, gap: int) -> List[Pattern]:
    """x1 . U_gap . x2 over all ordered letter pairs; gap 0 keeps only the
    freely reduced two-letter composites (x2 != x1^-1)."""
    m = 2 * rank
    pats = []
    for x1 in range(m):
        for x2 in range(m):
            if gap == 0:
                if x2 == x1 ^ 1:
                    continue
                pats.append(Pattern.from_word((x1, x2)))
            else:
                pats.append(Pattern.pair(x1, Wildcard("exact", gap), x2))
    return pats


def builtin_map(name: str, rank: int) -> FeatureMap:
    """The built-in feature maps.

    f0: single letters; f1: reduced length-2 words; f2/f3/f4: letter pairs
    with a middle of exactly 1/2/3 letters; f5 = f1 + f2; f6 = f1 + f2 + f3
    + f4 (60 components at rank 2); fstar: the two counts (a^-1 b, b^-1 a),
    rank 2 only.
    """
    if name == "fstar":
        if rank != 2:
            raise ValueError("fstar is defined for rank 2 only")
        pats = (Pattern.from_word((1, 2)), Pattern.from_word((3, 0)))
        return FeatureMap("fstar", pats, rank)
    if rank < 2:
        raise ValueError("rank must be >= 2")
    if name == "f0":
        pats = tuple(Pattern.from_word((c,)) for c in range(2 * rank))
    elif name == "f1":
        pats = tuple(_pair_patterns(rank, 0))
    elif name in ("f2", "f3", "f4"):
        pats = tuple(_pair_patterns(rank, int(name[1]) - 1))
    elif name == "f5":
        pats = tuple(_pair_patterns(rank, 0) + _pair_patterns(rank, 1))
    elif name == "f6":
        pats = tuple(itertools.chain.from_iterable(
            _pair_patterns(rank, g) for g in range(4)))
    else:
        raise ValueError(f"unknown feature map {name!r}")
    return FeatureMap(name, pats, rank)


def pattern_pool(rank: int, min_mid: int, max_mid: int) -> List[Pattern]:
    """All x1 v x2 patterns with a fixed middle of length min_mid..max_mid
    whose composite word is freely reduced, ordered by length then
    lexicographically."""
    if not 1 <= min_mid <= max_mid:
        raise ValueError("need 1 <= min_mid <= max_mid")
    pool = []
    for mid in range(min_mid, max_mid + 1):
        for codes in _reduced_words_of_length(rank, mid + 2):
            pool.append(Pattern.from_word(codes))
    return pool


def resolve_map(name: str, rank: int) -> FeatureMap:
    """Feature map from a CLI-style name: f0..f6, fstar, or pool:<min>-<max>."""
    if name.startswith("pool:"):
        lo, _, hi = name[5:].partition("-")
        pats = tuple(pattern_pool(rank, int(lo), int(hi)))
        return FeatureMap(name, pats, rank)
    return builtin_map(name, rank)


# ---------------------------------------------------------------------------
# Whitehead graph
# ---------------------------------------------------------------------------

@dataclass
class WhiteheadGraph:
    """Weighted labelled digraph on the letters: edge (x, v, y) has weight
    C(w, x v y).  Only positive-weight edges are stored."""

    rank: int
    edges: Dict[Tuple[int, Tuple[int, ...], int], int] = field(default_factory=dict)

    @property
    def vertices(self) -> List[int]:
        return list(range(2 * self.rank))

    def weight(self, x: int, label: Tuple[int, ...], y: int) -> int:
        return self.edges.get((x, tuple(label), y), 0)


def whitehead_graph(w: CyclicWord, max_label_len: int) -> WhiteheadGraph:
    if len(w) < 2:
        raise ValueError("need |w| >= 2")
    n = len(w)
    doubled = w.letters + w.letters
    graph = WhiteheadGraph(w.rank)
    for span in range(2, min(max_label_len + 2, n) + 1):
        for start in range(n):
            sub = doubled[start:start + span]
            key = (sub[0], sub[1:-1], sub[-1])
            graph.edges[key] = graph.edges.get(key, 0) + 1
    return graph
