"""The disc-with-k-crosscaps model N_{k,1}, its curves c_{i,j}, and the elementary automorphisms.

Conventions. pi_1 is free on x_1..x_k, x_i the one-sided loop through crosscap
i, based on the boundary, and the boundary reads x_1^2 x_2^2 ... x_k^2. The
curve c_{i,j} is represented by x_i x_{i+1} ... x_j; it is two-sided exactly
when j - i is odd.

Twist images are computed rather than tabulated. Cut the surface to a ribbon
graph: one disc with k twisted bands, band l attached at points la, lb
(boundary order: basepoint, 1a, 1b, 2a, 2b, ...). The curve c_{i,j} runs
through bands i..j and crosses the disc along chords lb -> (l+1)a plus the
closing chord jb -> ia. A generator x_l crosses the disc twice (basepoint ->
la, lb -> basepoint); at each crossing with a chord of c the twist splices in
a copy of c, read forwards or backwards according to which side the
generator turns to. Twisted bands flip the local orientation, so the turn
alternates from chord to chord. The global direction was fixed once by
requiring the relation catalog to hold (see ``validate_table`` and the
relation suite).
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING, Union

from twistlab.errors import OneSidedCurve
from twistlab.words import (
    AutWitness,
    FreeMap,
    Letters,
    Word,
    apply_map,
    compose,
    equal_maps,
    format_letters,
    invert_letters,
    parse_word,
    reduce,
)

if TYPE_CHECKING:
    from twistlab.mapclass import MappingClass


@dataclass(frozen=True)
class OrientationCharacter:
    """Homomorphism F_k -> Z/2 recording which loops reverse orientation."""

    values: tuple[int, ...]

    def __call__(self, w: Word | Iterable[int]) -> int:
        letters = w.letters if isinstance(w, Word) else w
        return sum(self.values[abs(x) - 1] for x in letters) % 2


@dataclass(frozen=True)
class SurfaceModel:
    crosscaps: int

    def __post_init__(self) -> None:
        if self.crosscaps < 1:
            raise ValueError("a model needs at least one crosscap")

    @property
    def rank(self) -> int:
        return self.crosscaps

    @property
    def boundary(self) -> Word:
        return Word._trusted(
            tuple(x for i in range(1, self.rank + 1) for x in (i, i)), self.rank
        )

    @property
    def character(self) -> OrientationCharacter:
        return OrientationCharacter((1,) * self.rank)

    def two_sided_intervals(self) -> list[tuple[int, int]]:
        k = self.crosscaps
        return [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1, 2)]

    def __str__(self) -> str:
        return f"N{self.crosscaps},1"


def build_model(k: int) -> SurfaceModel:
    return SurfaceModel(k)


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class Basic:
    i: int
    j: int


@dataclass(frozen=True)
class Pushed:
    """The image of ``base`` under the mapping class ``by``."""

    base: "CurveSpec"
    by: "MappingClass" = field(compare=False)


CurveSpec = Union[Basic, Pushed]


def check_interval(m: SurfaceModel, i: int, j: int) -> None:
    if not 1 <= i <= j <= m.crosscaps:
        raise ValueError(f"interval [{i},{j}] is not inside 1..{m.crosscaps}")


def curve_word(m: SurfaceModel, c: CurveSpec) -> Word:
    if isinstance(c, Basic):
        check_interval(m, c.i, c.j)
        return Word._trusted(tuple(range(c.i, c.j + 1)), m.rank)
    return apply_map(c.by.evaluate(), curve_word(m, c.base))


def is_two_sided(m: SurfaceModel, c: CurveSpec) -> bool:
    return m.character(curve_word(m, c)) == 0


def base_interval(c: CurveSpec) -> tuple[int, int]:
    while isinstance(c, Pushed):
        c = c.base
    return c.i, c.j


class Linking(enum.Enum):
    """How two crosscap intervals sit relative to each other.

    Partial overlaps split by parity: an odd number of shared crosscaps gives
    curves meeting once (braid relation); an even number gives curves meeting
    twice, whose twists neither commute nor braid.
    """

    DISJOINTABLE = "Disjointable"
    NESTED = "Nested"
    ONCE_LINKED = "OnceLinked"
    TWICE_LINKED = "TwiceLinked"


def linked(a: tuple[int, int], b: tuple[int, int]) -> Linking:
    (i1, j1), (i2, j2) = a, b
    lo, hi = max(i1, i2), min(j1, j2)
    if lo > hi:
        return Linking.DISJOINTABLE
    if (i1 <= i2 and j2 <= j1) or (i2 <= i1 and j1 <= j2):
        return Linking.NESTED
    shared = hi - lo + 1
    return Linking.ONCE_LINKED if shared % 2 else Linking.TWICE_LINKED


# ---------------------------------------------------------------------------
# elementary automorphisms

_SCALE = 1000  # boundary positions of the ribbon-graph disc, in integer units


def _twist_letters(k: int, i: int, j: int, sign: int) -> dict[int, Letters]:
    bands = list(range(i, j + 1))
    n = len(bands)
    end = _SCALE * (k + 1)  # the basepoint sits at both 0 and ``end``

    def a_end(l: int) -> int:
        return _SCALE * l + 100

    def b_end(l: int) -> int:
        return _SCALE * l + 500

    chords = [(b_end(bands[m]), a_end(bands[(m + 1) % n])) for m in range(n)]

    def loop(m: int, forward: bool) -> Letters:
        seq = tuple(bands[(m + 1 + r) % n] for r in range(n))
        return seq if forward else invert_letters(seq)

    def splices(start: int, stop: int) -> list[int]:
        # Chords of a simple curve are pairwise disjoint, so the ones crossing
        # start->stop are parallel and are met in the order of their endpoints
        # on the counterclockwise arc (start, stop).
        hits = []
        for m, (p, q) in enumerate(chords):
            p_in, q_in = start < p < stop, start < q < stop
            if p_in != q_in:
                hits.append((p if p_in else q, m, q_in))
        out: list[int] = []
        for _, m, q_in in sorted(hits):
            turn = sign * (-1) ** (m + 1)
            out.extend(loop(m, q_in if turn == 1 else not q_in))
        return out

    images = {}
    for l in range(1, k + 1):
        raw = splices(0, a_end(l) + 5) + [l] + splices(b_end(l) + 5, end)
        images[l] = reduce(raw, k).letters
    return images


def elementary_twist(m: SurfaceModel, i: int, j: int) -> AutWitness:
    """The twist about c_{i,j} with its inverse."""
    check_interval(m, i, j)
    if (j - i) % 2 == 0:
        raise OneSidedCurve(f"c_{{{i},{j}}} is one-sided (j - i even)")
    return _twist_cached(m.crosscaps, i, j)


@lru_cache(maxsize=None)
def _twist_cached(k: int, i: int, j: int) -> AutWitness:
    forward = FreeMap.from_assignments(k, _twist_letters(k, i, j, 1))
    backward = FreeMap.from_assignments(k, _twist_letters(k, i, j, -1))
    return AutWitness(forward, backward)


def crosscap_transposition(m: SurfaceModel) -> AutWitness:
    """Slide crosscap k through crosscap k-1, swapping them.

    x_{k-1} -> x_{k-1}^2 x_k x_{k-1}^-2 and x_k -> x_{k-1}.
    """
    k = m.crosscaps
    if k < 2:
        raise ValueError("crosscap transposition needs k >= 2")
    return _transposition_cached(k)


@lru_cache(maxsize=None)
def _transposition_cached(k: int) -> AutWitness:
    a, b = k - 1, k
    forward = FreeMap.from_assignments(k, {a: (a, a, b, -a, -a), b: (a,)})
    backward = FreeMap.from_assignments(k, {a: (b,), b: (-b, -b, a, b, b)})
    return AutWitness(forward, backward)


def boundary_twist(m: SurfaceModel) -> AutWitness:
    """Twist about a boundary-parallel curve: conjugation by the boundary word."""
    return _boundary_cached(m.crosscaps)


@lru_cache(maxsize=None)
def _boundary_cached(k: int) -> AutWitness:
    d = tuple(x for i in range(1, k + 1) for x in (i, i))
    d_inv = invert_letters(d)
    forward = FreeMap(k, [d + (i,) + d_inv for i in range(1, k + 1)])
    backward = FreeMap(k, [d_inv + (i,) + d for i in range(1, k + 1)])
    return AutWitness(forward, backward)


def twist_name(i: int, j: int) -> str:
    return f"T({i},{j})"


@dataclass(frozen=True)
class ElementaryTable:
    model: SurfaceModel
    entries: Mapping[str, AutWitness]

    def __getitem__(self, name: str) -> AutWitness:
        if name == "D":
            return boundary_twist(self.model)
        return self.entries[name]

    def __contains__(self, name: object) -> bool:
        return name == "D" or name in self.entries

    def twist_names(self) -> Iterator[tuple[str, tuple[int, int]]]:
        for i, j in self.model.two_sided_intervals():
            yield twist_name(i, j), (i, j)

    def replace(self, name: str, witness: AutWitness) -> ElementaryTable:
        entries = dict(self.entries)
        entries[name] = witness
        return ElementaryTable(self.model, entries)


@lru_cache(maxsize=None)
def build_table(m: SurfaceModel) -> ElementaryTable:
    entries: dict[str, AutWitness] = {}
    for i, j in m.two_sided_intervals():
        entries[twist_name(i, j)] = elementary_twist(m, i, j)
    if m.crosscaps >= 2:
        entries["U"] = crosscap_transposition(m)
    return ElementaryTable(m, entries)


# ---------------------------------------------------------------------------
# certification


@dataclass
class ValidationReport:
    crosscaps: int
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    linking: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None

    def record(self, passed: bool, message: str) -> None:
        self.checks += 1
        if not passed:
            self.failures.append(message)


def _commute(f: FreeMap, g: FreeMap) -> bool:
    return equal_maps(compose(f, g), compose(g, f))


def _braid(f: FreeMap, g: FreeMap) -> bool:
    return equal_maps(compose(f, compose(g, f)), compose(g, compose(f, g)))


def validate_table(m: SurfaceModel, table: ElementaryTable | None = None) -> ValidationReport:
    """Check the elementary automorphisms against the identities they must satisfy."""
    table = build_table(m) if table is None else table
    report = ValidationReport(m.crosscaps)
    boundary = m.boundary
    chi = m.character
    for name, w in table.entries.items():
        report.record(w.is_valid(), f"{name}: stored inverse is not an inverse")
        report.record(
            apply_map(w.forward, boundary) == boundary, f"{name}: boundary word not fixed"
        )
        report.record(
            all(chi(w.forward.image(i)) == chi.values[i - 1] for i in range(1, m.rank + 1)),
            f"{name}: orientation character not preserved",
        )
    twists = list(table.twist_names())
    for name, (i, j) in twists:
        f = table[name].forward
        outside = [l for l in range(1, m.rank + 1) if l < i or l > j]
        report.record(
            all(f.image(l).letters == (l,) for l in outside),
            f"{name}: moves a generator outside its interval",
        )
    for a in range(len(twists)):
        for b in range(a + 1, len(twists)):
            (na, ia), (nb, ib) = twists[a], twists[b]
            fa, fb = table[na].forward, table[nb].forward
            kind = linked(ia, ib)
            report.linking[f"{na}|{nb}"] = kind.value
            if kind is Linking.ONCE_LINKED:
                report.record(_braid(fa, fb), f"braid relation fails for {na}, {nb}")
            elif kind in (Linking.DISJOINTABLE, Linking.NESTED):
                report.record(_commute(fa, fb), f"{na} and {nb} do not commute")
            else:
                report.record(
                    not _commute(fa, fb) and not _braid(fa, fb),
                    f"{na} and {nb} meet twice but satisfy a commutation or braid relation",
                )
    if "U" in table.entries and m.crosscaps >= 2:
        name = twist_name(m.crosscaps - 1, m.crosscaps)
        u, t = table["U"], table[name]
        lhs = compose(u.forward, compose(t.forward, u.backward))
        report.record(equal_maps(lhs, t.backward), f"U {name} U^-1 is not {name}^-1")
    return report


# ---------------------------------------------------------------------------
# JSON description


def model_to_dict(m: SurfaceModel, table: ElementaryTable | None = None) -> dict:
    table = build_table(m) if table is None else table

    def images(f: FreeMap) -> list[str]:
        return [format_letters(w) for w in f.raw_images]

    return {
        "crosscaps": m.crosscaps,
        "boundary": format_letters(m.boundary.letters),
        "entries": {
            name: {"forward": images(w.forward), "backward": images(w.backward)}
            for name, w in table.entries.items()
        },
    }


def table_from_dict(data: Mapping) -> ElementaryTable:
    m = build_model(int(data["crosscaps"]))
    entries = {}
    for name, e in data["entries"].items():
        forward = FreeMap(m.rank, [parse_word(s, m.rank) for s in e["forward"]])
        backward = FreeMap(m.rank, [parse_word(s, m.rank) for s in e["backward"]])
        entries[name] = AutWitness(forward, backward)
    return ElementaryTable(m, entries)
