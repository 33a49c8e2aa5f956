"""Integer matrices of mapping classes on H_1 of the surface and of its orientable double cover.

The double cover corresponds to the kernel K of the orientation character,
an index-2 subgroup of F_k. With Schreier transversal {1, x_1}, K is free of
rank 2k - 1 on the basis (in this order)

    z_i = x_1 x_i      for i = 1..k
    y_i = x_i x_1^-1   for i = 2..k

Every mapping class preserves the character, so its automorphism restricts
to K; rewriting the images of the basis gives the lift, and exponent sums
give the action on H_1 of the double cover.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache

from twistlab.errors import CharacterNotPreserved, NonCommutingInput
from twistlab.mapclass import MappingClass, commutes
from twistlab.surface import OrientationCharacter
from twistlab.words import FreeMap, Letters, apply_letters, reduce


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> IntMatrix:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        return cls(rows)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        cols = list(zip(*other.rows))
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __pow__(self, n: int) -> IntMatrix:
        if n < 0:
            raise ValueError("negative powers are not supported")
        out, base = IntMatrix.identity(self.size), self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def mod(self, m: int) -> IntMatrix:
        return IntMatrix(tuple(tuple(x % m for x in r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.size)

    def is_identity_mod(self, m: int) -> bool:
        return (self - IntMatrix.identity(self.size)).mod(m).is_zero()

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def determinant(self) -> int:
        return bareiss_determinant(self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        width = max((len(str(x)) for x in self.flat()), default=1)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("fraction-free elimination lost exactness")
    return q


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of the given integer rows by fraction-free elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    rank, prev = 0, 1
    for c in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][c]
        for i in range(rank + 1, n_rows):
            f = a[i][c]
            row, prow = a[i], a[rank]
            for j in range(c + 1, n_cols):
                row[j] = _exact_div(row[j] * p - f * prow[j], prev)
            row[c] = 0
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for c in range(n - 1):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            sign = -sign
        p = a[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = _exact_div(a[i][j] * p - a[i][c] * a[c][j], prev)
            a[i][c] = 0
        prev = p
    return sign * a[n - 1][n - 1]


def _exponent_sums(letters: Iterable[int], rank: int) -> list[int]:
    v = [0] * rank
    for x in letters:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


def abelianize(f: FreeMap) -> IntMatrix:
    """Exponent-sum matrix; column i is the image of x_i."""
    cols = [_exponent_sums(w, f.rank) for w in f.raw_images]
    return IntMatrix(tuple(zip(*cols)))


def preserves_character(f: FreeMap, chi: OrientationCharacter) -> bool:
    return all(chi(w) == chi.values[i] for i, w in enumerate(f.raw_images))


@dataclass(frozen=True)
class DoubleCoverBasis:
    """Schreier basis of the orientation kernel for the crosscap model of rank k."""

    k: int

    @property
    def rank(self) -> int:
        return 2 * self.k - 1

    def basis_words(self) -> list[Letters]:
        return [(1, i) for i in range(1, self.k + 1)] + [(i, -1) for i in range(2, self.k + 1)]

    def labels(self) -> list[str]:
        return [f"x1*x{i}" for i in range(1, self.k + 1)] + [
            f"x{i}*x1^-1" for i in range(2, self.k + 1)
        ]

    def _schreier(self, coset: int, i: int) -> int:
        """Basis index (1-based) of rep(coset) x_i rep(coset x_i)^-1, or 0 if trivial."""
        if coset == 1:
            return i
        return 0 if i == 1 else self.k + i - 1

    def rewrite_raw(self, letters: Iterable[int]) -> list[int]:
        out: list[int] = []
        coset = 0
        for x in letters:
            if x > 0:
                s = self._schreier(coset, x)
                coset ^= 1
                if s:
                    out.append(s)
            else:
                coset ^= 1
                s = self._schreier(coset, -x)
                if s:
                    out.append(-s)
        if coset:
            raise CharacterNotPreserved("word is not in the orientation kernel")
        return out

    def rewrite(self, letters: Iterable[int]) -> Letters:
        return reduce(self.rewrite_raw(letters), self.rank).letters


@lru_cache(maxsize=None)
def double_cover_basis(k: int) -> DoubleCoverBasis:
    return DoubleCoverBasis(k)


def _check_character(f: FreeMap) -> None:
    if not preserves_character(f, OrientationCharacter((1,) * f.rank)):
        raise CharacterNotPreserved("map does not preserve the orientation character")


def double_cover_lift(f: FreeMap) -> FreeMap:
    """The restriction of ``f`` to the orientation kernel, in the Schreier basis."""
    _check_character(f)
    basis = double_cover_basis(f.rank)
    return FreeMap._trusted(
        basis.rank,
        tuple(basis.rewrite(apply_letters(f, b)) for b in basis.basis_words()),
    )


def double_cover_matrix(f: FreeMap) -> IntMatrix:
    """Abelianized lift, computed without reducing the rewritten words."""
    _check_character(f)
    basis = double_cover_basis(f.rank)
    cols = [
        _exponent_sums(basis.rewrite_raw(apply_letters(f, b)), basis.rank)
        for b in basis.basis_words()
    ]
    return IntMatrix(tuple(zip(*cols)))


def double_cover_h1(mc: MappingClass) -> IntMatrix:
    return double_cover_matrix(mc.evaluate())


def gamma_prime_member(mc: MappingClass, m: int) -> bool:
    """Whether ``mc`` acts trivially on H_1 of the double cover with Z/m coefficients."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return double_cover_h1(mc).is_identity_mod(m)


def transvection_rank_lower_bound(classes: Sequence[MappingClass]) -> int:
    """Rank of the span of M_i - I; a lower bound for the rank of the group the classes generate."""
    for a in range(len(classes)):
        for b in range(a + 1, len(classes)):
            if not commutes(classes[a], classes[b]):
                raise NonCommutingInput(f"classes {a} and {b} do not commute")
    rows = []
    for c in classes:
        mat = double_cover_h1(c)
        rows.append((mat - IntMatrix.identity(mat.size)).flat())
    return bareiss_rank(rows)
