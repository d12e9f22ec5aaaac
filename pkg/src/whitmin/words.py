"""Free-group words: letters, free/cyclic reduction, text encoding, random generation.

Letters are stored as small integer codes: generator g with sign +1 has code
2*g, its inverse has code 2*g + 1.  The natural integer order of the codes
(a < a^-1 < b < b^-1 < ...) is the order used for canonical cyclic rotations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

log = logging.getLogger(__name__)

MIN_RANK = 2


class InvalidLetterError(ValueError):
    """A letter code is out of range for the ambient rank."""


@dataclass(frozen=True)
class Letter:
    """A signed generator; convenience wrapper around the integer code."""

    generator: int
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidLetterError(f"sign must be +1 or -1, got {self.sign}")
        if self.generator < 0:
            raise InvalidLetterError(f"negative generator index {self.generator}")

    @property
    def code(self) -> int:
        return 2 * self.generator + (0 if self.sign > 0 else 1)

    @staticmethod
    def from_code(code: int) -> "Letter":
        return Letter(code >> 1, 1 if code % 2 == 0 else -1)


def inverse_code(code: int) -> int:
    """Code of the inverse letter."""
    return code ^ 1


def check_codes(codes: Iterable[int], rank: int) -> None:
    for c in codes:
        if not 0 <= c < 2 * rank:
            raise InvalidLetterError(f"letter code {c} invalid for rank {rank}")


def _check_rank(rank: int) -> None:
    if rank < MIN_RANK:
        raise ValueError(f"rank must be >= {MIN_RANK}, got {rank}")


def reduce_codes(codes: Sequence[int]) -> Tuple[int, ...]:
    """Freely reduce a letter-code sequence (stack-based, single pass)."""
    out: list = []
    push = out.append
    pop = out.pop
    for c in codes:
        if out and out[-1] == c ^ 1:
            pop()
        else:
            push(c)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; ``letters`` holds integer letter codes."""

    letters: Tuple[int, ...]
    rank: int

    def __post_init__(self):
        _check_rank(self.rank)
        check_codes(self.letters, self.rank)
        for i in range(len(self.letters) - 1):
            if self.letters[i] == self.letters[i + 1] ^ 1:
                raise ValueError(f"word not freely reduced at position {i}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_codes(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple(c ^ 1 for c in reversed(self.letters)), self.rank)


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced word, stored as its least rotation.

    The constructor accepts any rotation of a cyclically reduced sequence and
    canonicalizes it; it rejects sequences that are not cyclically reduced.
    """

    letters: Tuple[int, ...]
    rank: int

    def __post_init__(self):
        _check_rank(self.rank)
        check_codes(self.letters, self.rank)
        ls = self.letters
        n = len(ls)
        for i in range(n - 1):
            if ls[i] == ls[i + 1] ^ 1:
                raise ValueError(f"word not freely reduced at position {i}")
        if n >= 2 and ls[0] == ls[-1] ^ 1:
            raise ValueError("word not cyclically reduced")
        canon = least_rotation(ls)
        if canon != ls:
            object.__setattr__(self, "letters", canon)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_codes(self.letters)

    def to_word(self) -> Word:
        return Word(self.letters, self.rank)

    def rotations(self) -> Iterable[Tuple[int, ...]]:
        ls = self.letters
        for i in range(max(1, len(ls))):
            yield ls[i:] + ls[:i]


def least_rotation(seq: Sequence[int]) -> Tuple[int, ...]:
    """Lexicographically least rotation (Booth's algorithm, O(n))."""
    n = len(seq)
    if n <= 1:
        return tuple(seq)
    s = tuple(seq) + tuple(seq)
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return s[k:k + n]


def free_reduce(raw: Sequence[int], rank: int) -> Word:
    """Freely reduce a raw letter-code sequence into a Word."""
    check_codes(raw, rank)
    return Word(reduce_codes(raw), rank)


def cyclic_reduce(w: Word) -> Tuple[CyclicWord, Word]:
    """Split w = g c g^-1 with c cyclically reduced and in canonical rotation;
    returns (c, g).  The conjugator absorbs the rotation to canonical form, so
    the identity w = g c g^-1 holds exactly in the free group."""
    ls = list(w.letters)
    prefix: list = []
    while len(ls) >= 2 and ls[0] == ls[-1] ^ 1:
        prefix.append(ls[0])
        ls = ls[1:-1]
    stripped = tuple(ls)
    core = CyclicWord(stripped, w.rank)
    canon = core.letters
    n = len(canon)
    # stripped is canon rotated by some k: stripped = c1^-1 canon c1 with
    # c1 = canon[:k], hence w = (g c1^-1) canon (g c1^-1)^-1
    for k in range(max(1, n)):
        if canon[k:] + canon[:k] == stripped:
            c1_inv = tuple(c ^ 1 for c in reversed(canon[:k]))
            conj = reduce_codes(tuple(prefix) + c1_inv)
            return core, Word(conj, w.rank)
    raise AssertionError("canonical form is not a rotation of its source")


# ---------------------------------------------------------------------------
# text encoding: a..z generators, A..Z inverses, one word per line
# ---------------------------------------------------------------------------

def format_codes(codes: Sequence[int]) -> str:
    out = []
    for c in codes:
        g = c >> 1
        if g >= 26:
            raise ValueError("text encoding supports at most 26 generators")
        ch = chr(ord("a") + g)
        out.append(ch if c % 2 == 0 else ch.upper())
    return "".join(out)


def parse_codes(text: str) -> Tuple[int, ...]:
    codes = []
    for ch in text.strip():
        if "a" <= ch <= "z":
            codes.append(2 * (ord(ch) - ord("a")))
        elif "A" <= ch <= "Z":
            codes.append(2 * (ord(ch) - ord("A")) + 1)
        else:
            raise ValueError(f"invalid character {ch!r} in word {text!r}")
    return tuple(codes)


def parse_word(text: str, rank: int) -> Word:
    return Word(parse_codes(text), rank)


def parse_cyclic_word(text: str, rank: int) -> CyclicWord:
    return CyclicWord(parse_codes(text), rank)


# ---------------------------------------------------------------------------
# random generation
# ---------------------------------------------------------------------------

def random_word(
    length: int,
    rank: int,
    cyclic: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> Union[Word, CyclicWord]:
    """Uniform Markov word: first letter uniform on the alphabet, each next
    letter uniform on the alphabet minus the inverse of its predecessor.

    With ``cyclic=True`` the last letter is additionally resampled until it
    differs from the inverse of the first, and a CyclicWord is returned.
    """
    _check_rank(rank)
    if rng is None:
        rng = np.random.default_rng()
    if length == 0:
        log.warning("random_word called with length 0; returning identity")
        return CyclicWord((), rank) if cyclic else Word((), rank)

    m = 2 * rank
    draws = rng.integers(0, m - 1, size=length)
    letters = [int(rng.integers(0, m))]
    for i in range(1, length):
        banned = letters[-1] ^ 1
        c = int(draws[i])
        if c >= banned:
            c += 1
        letters.append(c)

    if cyclic and length >= 2:
        banned_prev = letters[-2] ^ 1
        while letters[-1] == letters[0] ^ 1:
            c = int(rng.integers(0, m - 1))
            if c >= banned_prev:
                c += 1
            letters[-1] = c
        return CyclicWord(tuple(letters), rank)
    if cyclic:
        return CyclicWord(tuple(letters), rank)
    return Word(tuple(letters), rank)
