"""The relation catalog: fixtures, verification, suite runs, mutation, and the triangle search."""

from __future__ import annotations

import itertools
import json
import time
from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from twistlab import mapclass as mc
from twistlab.errors import WordGrowthOverflow
from twistlab.expressions import bind_all, evaluate_source
from twistlab.homology import IntMatrix, double_cover_h1, transvection_rank_lower_bound
from twistlab.surface import (
    Basic,
    CurveSpec,
    ElementaryTable,
    Pushed,
    SurfaceModel,
    build_model,
    build_table,
    twist_name,
)
from twistlab.words import first_difference, format_letters, max_word_length, word_length_limit

PASS, FAIL, OVERFLOW = "pass", "fail", "overflow"


@dataclass(frozen=True)
class RelationFixture:
    id: str
    k: int
    kind: str
    provenance: str
    lhs: str = ""
    rhs: str = ""
    let: tuple[tuple[str, str], ...] = ()
    twist: str = ""
    modulus: int = 0
    family: tuple[str, ...] = ()
    expected_rank: int = 0

    @classmethod
    def from_dict(cls, d: dict) -> RelationFixture:
        return cls(
            id=d["id"],
            k=int(d["k"]),
            kind=d.get("kind", "equal"),
            provenance=d.get("provenance", ""),
            lhs=d.get("lhs", ""),
            rhs=d.get("rhs", ""),
            let=tuple((n, s) for n, s in d.get("let", ())),
            twist=d.get("twist", ""),
            modulus=int(d.get("modulus", 0)),
            family=tuple(d.get("family", ())),
            expected_rank=int(d.get("expected_rank", 0)),
        )

    def model(self) -> SurfaceModel:
        return build_model(self.k)

    def subjects(self) -> list[mc.MappingClass]:
        """The mapping classes the verdict is computed from."""
        m = self.model()
        if self.kind == "equal":
            env = bind_all(list(self.let), m)
            return [evaluate_source(self.lhs, m, env), evaluate_source(self.rhs, m, env)]
        if self.kind == "gamma":
            t = evaluate_source(self.twist, m)
            return [mc.power(t, self.modulus), t]
        if self.kind == "rank":
            return [evaluate_source(s, m) for s in self.family]
        raise ValueError(f"unknown fixture kind {self.kind!r}")

    def mutable_subjects(self) -> list[int]:
        """Indices of subjects a corruption may touch (the reference twist of a gamma fixture stays)."""
        return [0] if self.kind == "gamma" else list(range(len(self.subjects())))


@dataclass(frozen=True)
class FixtureResult:
    id: str
    k: int
    status: str
    detail: str = ""
    value: int | None = None
    seconds: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        out: dict = {"id": self.id, "k": self.k, "status": self.status, "detail": self.detail}
        if self.value is not None:
            out["value"] = self.value
        return out


def judge(fixture: RelationFixture, subjects: Sequence[mc.MappingClass]) -> tuple[str, str, int | None]:
    if fixture.kind == "equal":
        lhs, rhs = subjects
        diff = first_difference(lhs.evaluate(), rhs.evaluate())
        if diff is None:
            return PASS, "", None
        i, a, b = diff
        return FAIL, f"x{i}: lhs -> {_clip(a.letters)}, rhs -> {_clip(b.letters)}", None
    if fixture.kind == "gamma":
        powered, single = subjects
        mat, m = double_cover_h1(powered), fixture.modulus
        base = double_cover_h1(single)
        nil = base - IntMatrix.identity(base.size)
        problems = []
        if not mat.is_identity_mod(m):
            problems.append(f"power is not the identity mod {m}")
        if base.is_identity_mod(m):
            problems.append(f"twist itself is the identity mod {m}")
        if not (nil @ nil).is_zero():
            problems.append("twist matrix is not unipotent of step 2")
        return (FAIL, "; ".join(problems), None) if problems else (PASS, "", None)
    if fixture.kind == "rank":
        for a, b in itertools.combinations(range(len(subjects)), 2):
            if not mc.commutes(subjects[a], subjects[b]):
                return FAIL, f"{fixture.family[a]} and {fixture.family[b]} do not commute", None
        r = transvection_rank_lower_bound(subjects)
        if r < 1 or r != fixture.expected_rank:
            return FAIL, f"rank lower bound {r}, expected {fixture.expected_rank}", r
        return PASS, "", r
    raise ValueError(f"unknown fixture kind {fixture.kind!r}")


def _clip(letters: Sequence[int], limit: int = 60) -> str:
    text = format_letters(letters)
    return text if len(text) <= limit else text[:limit] + f" ... ({len(letters)} letters)"


def verify_relation(fixture: RelationFixture) -> FixtureResult:
    start = time.perf_counter()
    try:
        status, detail, value = judge(fixture, fixture.subjects())
    except WordGrowthOverflow as exc:
        status, detail, value = OVERFLOW, str(exc), None
    return FixtureResult(fixture.id, fixture.k, status, detail, value, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# catalog and suite


def default_catalog_path() -> Path:
    return Path(str(resources.files("twistlab") / "data" / "fixtures.json"))


def load_catalog(path: str | Path | None = None) -> list[RelationFixture]:
    source = Path(path) if path is not None else default_catalog_path()
    data = json.loads(source.read_text())
    if data.get("version") != 1:
        raise ValueError(f"unsupported catalog version {data.get('version')!r}")
    return [RelationFixture.from_dict(d) for d in data["fixtures"]]


@dataclass
class SuiteReport:
    results: list[FixtureResult]

    @property
    def passed(self) -> bool:
        return all(r.status == PASS for r in self.results)

    @property
    def overflowed(self) -> bool:
        return any(r.status == OVERFLOW for r in self.results)

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, OVERFLOW: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def verdicts(self) -> list[tuple[str, str]]:
        return [(r.id, r.status) for r in self.results]

    def to_json(self) -> dict:
        return {"counts": self.counts(), "results": [r.to_json() for r in self.results]}

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            extra = f" value={r.value}" if r.value is not None else ""
            lines.append(f"{r.status.upper():8} {r.id}{extra}  [{r.seconds * 1000:.1f} ms]")
            if r.detail:
                lines.append(f"         {r.detail}")
        c = self.counts()
        lines.append(f"{len(self.results)} fixtures: {c[PASS]} pass, {c[FAIL]} fail, {c[OVERFLOW]} overflow")
        return "\n".join(lines)


def _run_one(fixture: RelationFixture, limit: int) -> FixtureResult:
    with word_length_limit(limit):
        return verify_relation(fixture)


def run_suite(
    filter: str | None = None,
    catalog: Sequence[RelationFixture] | None = None,
    workers: int = 1,
) -> SuiteReport:
    """Run every fixture whose id starts with ``filter``; results keep catalog order."""
    fixtures = list(load_catalog() if catalog is None else catalog)
    if filter:
        fixtures = [f for f in fixtures if f.id.startswith(filter)]
    limit = max_word_length()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda f: _run_one(f, limit), fixtures))
    else:
        results = [_run_one(f, limit) for f in fixtures]
    return SuiteReport(results)


# ---------------------------------------------------------------------------
# mutation


@dataclass(frozen=True)
class Mutant:
    fixture_id: str
    subject: int
    position: int
    status: str


def _without(c: mc.MappingClass, position: int) -> mc.MappingClass:
    return mc.MappingClass(c.model, c.factors[:position] + c.factors[position + 1 :], c.table)


def mutants(fixture: RelationFixture) -> Iterator[Mutant]:
    """Delete each factor of each mutable subject in turn and re-judge.

    Deleting a nontrivial factor changes the class, so every mutant of a
    passing fixture should fail.
    """
    subjects = fixture.subjects()
    for s in fixture.mutable_subjects():
        for p in range(len(subjects[s])):
            changed = list(subjects)
            changed[s] = _without(subjects[s], p)
            try:
                status = judge(fixture, changed)[0]
            except WordGrowthOverflow:
                status = OVERFLOW
            yield Mutant(fixture.id, s, p, status)


# ---------------------------------------------------------------------------
# nonorientable triangles


@dataclass(frozen=True)
class TriangleWitness:
    a: CurveSpec
    b: CurveSpec
    c: CurveSpec
    pushing_word: str

    def classes(self, m: SurfaceModel) -> tuple[mc.MappingClass, mc.MappingClass, mc.MappingClass]:
        return mc.twist_about(m, self.a), mc.twist_about(m, self.b), mc.twist_about(m, self.c)


def triangle_relations_hold(ta: mc.MappingClass, tb: mc.MappingClass, tc: mc.MappingClass) -> bool:
    return (
        mc.braid_with(ta, tb)
        and mc.braid_with(ta, tc)
        and mc.braid_with(tc.inverse(), tb)
    )


def _pushing_words(m: SurfaceModel, table: ElementaryTable, length: int) -> Iterator[mc.MappingClass]:
    letters = [(name, s) for name in table.entries for s in (1, -1)]
    for word in itertools.product(letters, repeat=length):
        if any(word[i][0] == word[i + 1][0] and word[i][1] != word[i + 1][1] for i in range(length - 1)):
            continue  # not freely reduced
        yield mc.MappingClass(m, tuple(word), table)


def find_triangle(
    m: SurfaceModel, search_depth: int, table: ElementaryTable | None = None
) -> TriangleWitness | None:
    """Search for twists t_a, t_b, t_c forming a nonorientable triangle.

    ``a`` and ``b`` range over the basic two-sided curves; ``c`` over basic
    curves pushed by reduced words of length at most ``search_depth`` in the
    elementary classes, shortest first. Any witness is re-verified from
    scratch before it is returned.
    """
    table = build_table(m) if table is None else table
    basics = [Basic(i, j) for i, j in m.two_sided_intervals()]

    def basic_twist(c: Basic) -> mc.MappingClass:
        return mc.MappingClass(m, ((twist_name(c.i, c.j), 1),), table)

    braiding = [
        (a, b)
        for a, b in itertools.permutations(basics, 2)
        if mc.braid_with(basic_twist(a), basic_twist(b))
    ]
    seen: set = set()
    for depth in range(search_depth + 1):
        pushers = [mc.MappingClass(m, (), table)] if depth == 0 else _pushing_words(m, table, depth)
        for by in pushers:
            for base in basics:
                tc = mc.conjugate_class(basic_twist(base), by)
                key = tc.evaluate()
                if key in seen:
                    continue
                seen.add(key)
                for a, b in braiding:
                    ta, tb = basic_twist(a), basic_twist(b)
                    if triangle_relations_hold(ta, tb, tc):
                        c = base if depth == 0 else Pushed(base, by)
                        witness = TriangleWitness(a, b, c, str(by))
                        fresh = tuple(
                            mc.MappingClass(m, x.factors, table) for x in (ta, tb, tc)
                        )
                        if triangle_relations_hold(*fresh):
                            return witness
                        return None
    return None
