import itertools

import numpy as np
import pytest

from whitmin.automorphisms import apply_automorphism, enumerate_type2
from whitmin.words import CyclicWord


def all_reduced_words(rank, length):
    """Every freely reduced code tuple of the given length."""
    if length == 0:
        yield ()
        return
    m = 2 * rank

    def rec(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for c in range(m):
            if prefix and c == prefix[-1] ^ 1:
                continue
            yield from rec(prefix + [c])

    yield from rec([])


def all_cyclic_words(rank, length):
    """Every distinct cyclically reduced word (canonical form) of the length."""
    seen = set()
    for codes in all_reduced_words(rank, length):
        if length >= 2 and codes[0] == codes[-1] ^ 1:
            continue
        w = CyclicWord(codes, rank)
        if w.letters not in seen:
            seen.add(w.letters)
            yield w


def bfs_orbit_min(w: CyclicWord) -> int:
    """Independent minimization oracle: breadth-first closure of the orbit
    under all proper type-II automorphisms, never exceeding the start length,
    returning the smallest cyclic length seen."""
    autos = enumerate_type2(w.rank)
    best = len(w)
    seen = {w.letters}
    frontier = [w]
    while frontier:
        nxt = []
        for u in frontier:
            for t in autos:
                v = apply_automorphism(t, u)
                if len(v) <= len(u) and v.letters not in seen:
                    seen.add(v.letters)
                    best = min(best, len(v))
                    nxt.append(v)
        frontier = nxt
    return best


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
