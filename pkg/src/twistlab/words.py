"""Free-group words, endomorphisms given by generator images, and witnessed automorphisms.

A word in the free group on x_1..x_n is stored as a tuple of nonzero ints:
``i`` is x_i and ``-i`` is its inverse. Maps compose as functions,
``compose(f, g)(x) = f(g(x))``, so ``g`` is applied first.
"""

from __future__ import annotations

import re
import threading
from collections.abc import Iterable, Iterator, Mapping, Sequence
from contextlib import contextmanager

from twistlab import kernels
from twistlab.errors import RankMismatch

Letters = tuple[int, ...]

DEFAULT_MAX_WORD_LENGTH = 10**6

_guard = threading.local()


def max_word_length() -> int:
    """Current length guard; any reduced prefix longer than this raises WordGrowthOverflow."""
    return getattr(_guard, "limit", DEFAULT_MAX_WORD_LENGTH)


def set_max_word_length(limit: int) -> None:
    if limit < 1:
        raise ValueError("length guard must be positive")
    _guard.limit = limit


@contextmanager
def word_length_limit(limit: int) -> Iterator[None]:
    previous = max_word_length()
    set_max_word_length(limit)
    try:
        yield
    finally:
        set_max_word_length(previous)


class Word:
    """A freely reduced word of a given rank. Build one with :func:`reduce`."""

    __slots__ = ("letters", "rank")

    letters: Letters
    rank: int

    def __init__(self, letters: Iterable[int], rank: int):
        reduced = kernels.reduce_letters(tuple(letters), rank, max_word_length())
        object.__setattr__(self, "letters", reduced)
        object.__setattr__(self, "rank", rank)

    @classmethod
    def _trusted(cls, letters: Letters, rank: int) -> Word:
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "rank", rank)
        return w

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Word is immutable")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Word)
            and self.rank == other.rank
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __invert__(self) -> Word:
        return invert_word(self)

    def __repr__(self) -> str:
        return f"Word({format_letters(self.letters)!r}, rank={self.rank})"

    def __str__(self) -> str:
        return format_letters(self.letters)


def reduce(raw: Iterable[int], rank: int) -> Word:
    """Freely reduce ``raw``; raises ValueError on a letter outside 1..rank."""
    return Word(raw, rank)


def _same_rank(a: int, b: int) -> None:
    if a != b:
        raise RankMismatch(f"rank {a} does not match rank {b}")


def multiply(w1: Word, w2: Word) -> Word:
    _same_rank(w1.rank, w2.rank)
    return Word._trusted(
        kernels.reduce_letters(w1.letters + w2.letters, w1.rank, max_word_length()),
        w1.rank,
    )


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-x for x in reversed(letters))


def invert_word(w: Word) -> Word:
    return Word._trusted(invert_letters(w.letters), w.rank)


def conjugate(w: Word, by: Word) -> Word:
    """Return ``by * w * by^-1``."""
    _same_rank(w.rank, by.rank)
    raw = by.letters + w.letters + invert_letters(by.letters)
    return Word._trusted(kernels.reduce_letters(raw, w.rank, max_word_length()), w.rank)


# ---------------------------------------------------------------------------
# textual form "x1 x2^-1"

_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?")


def format_letters(letters: Sequence[int]) -> str:
    if not letters:
        return "1"
    parts: list[str] = []
    i = 0
    while i < len(letters):
        x = letters[i]
        run = 1
        while i + run < len(letters) and letters[i + run] == x:
            run += 1
        power = run if x > 0 else -run
        parts.append(f"x{abs(x)}" if power == 1 else f"x{abs(x)}^{power}")
        i += run
    return " ".join(parts)


def parse_word(text: str, rank: int) -> Word:
    """Parse ``"x1 x2^-1 x3^2"``; ``"1"`` or the empty string is the identity."""
    text = text.strip()
    if text in ("", "1"):
        return Word((), rank)
    raw: list[int] = []
    for token in text.split():
        m = _TOKEN.fullmatch(token)
        if m is None:
            raise ValueError(f"bad word token {token!r}")
        index = int(m.group(1))
        power = int(m.group(2)) if m.group(2) is not None else 1
        raw.extend([index if power > 0 else -index] * abs(power))
    return Word(raw, rank)


# ---------------------------------------------------------------------------
# cyclic words


def cyclic_reduce(letters: Sequence[int]) -> Letters:
    lo, hi = 0, len(letters)
    while hi - lo > 1 and letters[lo] == -letters[hi - 1]:
        lo += 1
        hi -= 1
    return tuple(letters[lo:hi])


class CyclicWord:
    """A cyclically reduced word up to rotation; orientation is kept."""

    __slots__ = ("letters", "rank")

    def __init__(self, w: Word):
        self.letters = cyclic_reduce(w.letters)
        self.rank = w.rank

    def rotations(self) -> Iterator[Letters]:
        n = len(self.letters)
        for i in range(max(n, 1)):
            yield self.letters[i:] + self.letters[:i]

    def canonical(self) -> Letters:
        return min(self.rotations())

    def unoriented_canonical(self) -> Letters:
        flipped = CyclicWord(Word._trusted(invert_letters(self.letters), self.rank))
        return min(self.canonical(), flipped.canonical())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CyclicWord)
            and self.rank == other.rank
            and self.canonical() == other.canonical()
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.canonical()))


def same_circle(a: Word, b: Word) -> bool:
    """Equal as unoriented cyclic words (rotation and inversion only, no conjugacy test)."""
    _same_rank(a.rank, b.rank)
    return CyclicWord(a).unoriented_canonical() == CyclicWord(b).unoriented_canonical()


# ---------------------------------------------------------------------------
# maps


class FreeMap:
    """Endomorphism of the free group of ``rank`` given by reduced generator images."""

    __slots__ = ("rank", "_raw", "_inv")

    rank: int
    _raw: tuple[Letters, ...]

    def __init__(self, rank: int, images: Sequence[Word | Sequence[int]]):
        if rank < 1:
            raise ValueError("rank must be positive")
        if len(images) != rank:
            raise RankMismatch(f"expected {rank} images, got {len(images)}")
        raw = []
        for w in images:
            if isinstance(w, Word):
                _same_rank(w.rank, rank)
                raw.append(w.letters)
            else:
                raw.append(kernels.reduce_letters(tuple(w), rank, max_word_length()))
        self.rank = rank
        self._raw = tuple(raw)
        self._inv: tuple[Letters, ...] | None = None

    @classmethod
    def _trusted(cls, rank: int, raw: tuple[Letters, ...]) -> FreeMap:
        f = object.__new__(cls)
        f.rank = rank
        f._raw = raw
        f._inv = None
        return f

    @classmethod
    def from_assignments(cls, rank: int, assignments: Mapping[int, Sequence[int]]) -> FreeMap:
        """Identity on every generator not listed in ``assignments``."""
        return cls(rank, [tuple(assignments.get(i, (i,))) for i in range(1, rank + 1)])

    @property
    def images(self) -> tuple[Word, ...]:
        return tuple(Word._trusted(w, self.rank) for w in self._raw)

    @property
    def raw_images(self) -> tuple[Letters, ...]:
        return self._raw

    def inverse_images(self) -> tuple[Letters, ...]:
        if self._inv is None:
            self._inv = tuple(invert_letters(w) for w in self._raw)
        return self._inv

    def image(self, i: int) -> Word:
        return Word._trusted(self._raw[i - 1], self.rank)

    def max_image_length(self) -> int:
        return max(len(w) for w in self._raw)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeMap) and equal_maps(self, other)

    def __hash__(self) -> int:
        return hash((self.rank, self._raw))

    def __repr__(self) -> str:
        body = ", ".join(
            f"x{i} -> {format_letters(w)}" for i, w in enumerate(self._raw, start=1)
        )
        return f"FreeMap({body})"


def identity_map(rank: int) -> FreeMap:
    return FreeMap._trusted(rank, tuple((i,) for i in range(1, rank + 1)))


def apply_letters(f: FreeMap, letters: Sequence[int]) -> Letters:
    return kernels.substitute(f._raw, f.inverse_images(), letters, max_word_length())


def apply_map(f: FreeMap, w: Word) -> Word:
    _same_rank(f.rank, w.rank)
    return Word._trusted(apply_letters(f, w.letters), f.rank)


def compose(f: FreeMap, g: FreeMap) -> FreeMap:
    """The map x -> f(g(x)); ``g`` acts first."""
    _same_rank(f.rank, g.rank)
    raw = kernels.compose_images(f._raw, f.inverse_images(), g._raw, max_word_length())
    return FreeMap._trusted(f.rank, raw)


def is_identity(f: FreeMap) -> bool:
    return all(w == (i,) for i, w in enumerate(f._raw, start=1))


def verify_inverse(f: FreeMap, g: FreeMap) -> bool:
    _same_rank(f.rank, g.rank)
    return is_identity(compose(f, g)) and is_identity(compose(g, f))


def equal_maps(f: FreeMap, g: FreeMap) -> bool:
    return f.rank == g.rank and f._raw == g._raw


def first_difference(f: FreeMap, g: FreeMap) -> tuple[int, Word, Word] | None:
    """The first generator index whose images differ, with both images."""
    _same_rank(f.rank, g.rank)
    for i, (a, b) in enumerate(zip(f._raw, g._raw), start=1):
        if a != b:
            return i, Word._trusted(a, f.rank), Word._trusted(b, g.rank)
    return None


class AutWitness:
    """An automorphism together with a certified inverse."""

    __slots__ = ("forward", "backward")

    forward: FreeMap
    backward: FreeMap

    def __init__(self, forward: FreeMap, backward: FreeMap, check: bool = True):
        if check and not verify_inverse(forward, backward):
            raise ValueError("backward map is not inverse to forward map")
        self.forward = forward
        self.backward = backward

    @classmethod
    def identity(cls, rank: int) -> AutWitness:
        idm = identity_map(rank)
        return cls(idm, idm, check=False)

    def inverse(self) -> AutWitness:
        return AutWitness(self.backward, self.forward, check=False)

    def then_after(self, inner: AutWitness) -> AutWitness:
        """``self`` composed with ``inner``, inner applied first; witnesses stay paired."""
        return AutWitness(
            compose(self.forward, inner.forward),
            compose(inner.backward, self.backward),
            check=False,
        )

    def is_valid(self) -> bool:
        return verify_inverse(self.forward, self.backward)

    def __repr__(self) -> str:
        return f"AutWitness({self.forward!r})"
