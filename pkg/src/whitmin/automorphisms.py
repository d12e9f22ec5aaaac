"""Whitehead automorphisms, the rank-2 Nielsen moves, and greedy minimization."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .words import CyclicWord, Word, cyclic_reduce, inverse_code, reduce_codes


@dataclass(frozen=True)
class TypeI:
    """Permutation automorphism: a signed permutation of the letters.

    ``perm[c]`` is the image code of letter code c; the map must commute with
    inversion, i.e. perm[c ^ 1] == perm[c] ^ 1.
    """

    rank: int
    perm: Tuple[int, ...]

    def __post_init__(self):
        m = 2 * self.rank
        if len(self.perm) != m or sorted(self.perm) != list(range(m)):
            raise ValueError("perm must be a permutation of the letter codes")
        for c in range(m):
            if self.perm[c ^ 1] != self.perm[c] ^ 1:
                raise ValueError("permutation does not commute with inversion")

    def letter_image(self, code: int) -> Tuple[int, ...]:
        return (self.perm[code],)


@dataclass(frozen=True)
class TypeII:
    """Multiplier automorphism (A, a): multiplier letter a with a in A and
    a^-1 not in A.  For x outside {a, a^-1}:

        x -> x a        if x in A and x^-1 not in A
        x -> a^-1 x     if x not in A and x^-1 in A
        x -> a^-1 x a   if both x and x^-1 in A
        x -> x          otherwise
    """

    rank: int
    multiplier: int
    subset: frozenset

    def __post_init__(self):
        a = self.multiplier
        if not 0 <= a < 2 * self.rank:
            raise ValueError("multiplier out of range")
        if a not in self.subset or (a ^ 1) in self.subset:
            raise ValueError("need multiplier in A and its inverse outside A")
        for c in self.subset:
            if not 0 <= c < 2 * self.rank:
                raise ValueError(f"subset letter {c} out of range")

    def letter_image(self, code: int) -> Tuple[int, ...]:
        a = self.multiplier
        if code == a or code == a ^ 1:
            return (code,)
        in_x = code in self.subset
        in_xi = (code ^ 1) in self.subset
        if in_x and not in_xi:
            return (code, a)
        if in_xi and not in_x:
            return (a ^ 1, code)
        if in_x and in_xi:
            return (a ^ 1, code, a)
        return (code,)


WhiteheadAutomorphism = Union[TypeI, TypeII]
AutomorphismChain = List[WhiteheadAutomorphism]


def _image_table(t: WhiteheadAutomorphism) -> List[Tuple[int, ...]]:
    return [t.letter_image(c) for c in range(2 * t.rank)]


def apply_to_word(t: WhiteheadAutomorphism, w: Word) -> Word:
    if t.rank != w.rank:
        raise ValueError(f"rank mismatch: automorphism {t.rank}, word {w.rank}")
    table = _image_table(t)
    out: list = []
    for c in w.letters:
        out.extend(table[c])
    return Word(reduce_codes(out), w.rank)


def apply_automorphism(t: WhiteheadAutomorphism, w: CyclicWord) -> CyclicWord:
    """Apply letter images, freely reduce, cyclically reduce, canonicalize."""
    if t.rank != w.rank:
        raise ValueError(f"rank mismatch: automorphism {t.rank}, word {w.rank}")
    table = _image_table(t)
    out: list = []
    for c in w.letters:
        out.extend(table[c])
    core, _ = cyclic_reduce(Word(reduce_codes(out), w.rank))
    return core


def enumerate_type2(rank: int) -> List[TypeII]:
    """All proper type-II automorphisms, multiplier ascending then A-bitmask
    ascending.  Excludes A = {a} (identity) and A = everything but a^-1
    (an inner automorphism)."""
    if rank < 2:
        raise ValueError("rank must be >= 2")
    result = []
    m = 2 * rank
    for a in range(m):
        others = [c for c in range(m) if c != a and c != a ^ 1]
        full = (1 << len(others)) - 1
        for mask in range(1, full):
            subset = frozenset([a] + [others[i] for i in range(len(others))
                                      if mask >> i & 1])
            result.append(TypeII(rank, a, subset))
    return result


# ---------------------------------------------------------------------------
# rank-2 Nielsen moves
# ---------------------------------------------------------------------------

class NielsenMove(Enum):
    """The four rank-2 length-changing moves (codes: a=0, a^-1=1, b=2, b^-1=3)."""

    A_AB = "a->ab"
    A_BINV_A = "a->Ba"
    B_BA = "b->ba"
    B_AINV_B = "b->Ab"

    @property
    def automorphism(self) -> TypeII:
        return _NIELSEN_AUTOS[self]


_NIELSEN_AUTOS: Dict[NielsenMove, TypeII] = {
    NielsenMove.A_AB: TypeII(2, 2, frozenset({0, 2})),       # a -> ab
    NielsenMove.A_BINV_A: TypeII(2, 2, frozenset({1, 2})),   # a -> b^-1 a
    NielsenMove.B_BA: TypeII(2, 0, frozenset({0, 2})),       # b -> ba
    NielsenMove.B_AINV_B: TypeII(2, 0, frozenset({0, 3})),   # b -> a^-1 b
}

# a->ab is undone by a->ab^-1, etc.; each inverse is again a (A, a) move
# with the inverse multiplier.
_NIELSEN_INVERSE_AUTOS: Dict[NielsenMove, TypeII] = {
    NielsenMove.A_AB: TypeII(2, 3, frozenset({0, 3})),       # a -> ab^-1
    NielsenMove.A_BINV_A: TypeII(2, 3, frozenset({1, 3})),   # a -> ba
    NielsenMove.B_BA: TypeII(2, 1, frozenset({1, 2})),       # b -> ba^-1
    NielsenMove.B_AINV_B: TypeII(2, 1, frozenset({1, 3})),   # b -> ab
}

NIELSEN_MOVES: Tuple[NielsenMove, ...] = (
    NielsenMove.A_AB,
    NielsenMove.A_BINV_A,
    NielsenMove.B_BA,
    NielsenMove.B_AINV_B,
)


def nielsen_inverse_automorphism(move: NielsenMove) -> TypeII:
    """The type-II automorphism undoing the given Nielsen move."""
    return _NIELSEN_INVERSE_AUTOS[move]


# ---------------------------------------------------------------------------
# minimality and minimization
# ---------------------------------------------------------------------------

def _candidate_moves(rank: int) -> List[WhiteheadAutomorphism]:
    if rank == 2:
        return [m.automorphism for m in NIELSEN_MOVES]
    return list(enumerate_type2(rank))


def reducing_moves(w: CyclicWord):
    """Moves that strictly shorten w.  Rank 2 returns NielsenMove members
    (conjugations act trivially on cyclic words); higher rank returns the
    type-II automorphisms themselves."""
    if len(w) <= 1:
        return []
    if w.rank == 2:
        return [m for m in NIELSEN_MOVES
                if len(apply_automorphism(m.automorphism, w)) < len(w)]
    return [t for t in enumerate_type2(w.rank)
            if len(apply_automorphism(t, w)) < len(w)]


def is_minimal(w: CyclicWord) -> bool:
    if len(w) <= 1:
        return True
    return not reducing_moves(w)


def minimize(w: CyclicWord) -> Tuple[CyclicWord, AutomorphismChain]:
    """Greedy steepest descent: repeatedly apply the move with the greatest
    length drop (ties by enumeration order) until no move shortens the word."""
    chain: AutomorphismChain = []
    current = w
    candidates = _candidate_moves(w.rank)
    while len(current) > 1:
        best = None
        best_len = len(current)
        for t in candidates:
            img = apply_automorphism(t, current)
            if len(img) < best_len:
                best = (t, img)
                best_len = len(img)
        if best is None:
            break
        chain.append(best[0])
        current = best[1]
    return current, chain


# ---------------------------------------------------------------------------
# random automorphisms and primitives
# ---------------------------------------------------------------------------

def random_type2(rank: int, rng: np.random.Generator) -> TypeII:
    """Uniform proper type-II automorphism without full enumeration."""
    m = 2 * rank
    a = int(rng.integers(0, m))
    others = [c for c in range(m) if c != a and c != a ^ 1]
    full = (1 << len(others)) - 1
    mask = int(rng.integers(1, full))
    subset = frozenset([a] + [others[i] for i in range(len(others)) if mask >> i & 1])
    return TypeII(rank, a, subset)


def random_type1(rank: int, rng: np.random.Generator) -> TypeI:
    """Uniform non-identity signed permutation of the generators."""
    m = 2 * rank
    while True:
        gens = rng.permutation(rank)
        flips = rng.integers(0, 2, size=rank)
        perm = [0] * m
        for g in range(rank):
            img = 2 * int(gens[g]) + int(flips[g])
            perm[2 * g] = img
            perm[2 * g + 1] = img ^ 1
        if perm != list(range(m)):
            return TypeI(rank, tuple(perm))


def random_automorphism(rank: int, rng: np.random.Generator) -> WhiteheadAutomorphism:
    """Uniform over proper type-I and type-II automorphisms combined."""
    n_type1 = (1 << rank) * math.factorial(rank) - 1
    n_type2 = 2 * rank * ((1 << (2 * rank - 2)) - 2)
    if rng.random() < n_type1 / (n_type1 + n_type2):
        return random_type1(rank, rng)
    return random_type2(rank, rng)


def random_primitive(rank: int, num_autos: int, rng: np.random.Generator) -> CyclicWord:
    """Image of a random generator letter under num_autos random proper
    Whitehead automorphisms (both types), cyclically reduced at each step."""
    if num_autos < 0:
        raise ValueError("num_autos must be >= 0")
    w = CyclicWord((int(rng.integers(0, 2 * rank)),), rank)
    for _ in range(num_autos):
        w = apply_automorphism(random_automorphism(rank, rng), w)
    return w
