"""Mapping classes as factorizations over the elementary table.

A factorization ``(f1, f2, ..., fn)`` denotes the product f1 f2 ... fn, which
acts on pi_1 as f1 o f2 o ... o fn: the rightmost factor is applied first.
Equality of classes is decided by equality of the induced automorphisms of
pi_1, which is faithful for a surface with one boundary component fixed
pointwise and the basepoint on the boundary.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property

from twistlab.errors import ModelMismatch, OneSidedCurve
from twistlab.surface import (
    Basic,
    CurveSpec,
    ElementaryTable,
    Pushed,
    SurfaceModel,
    build_table,
    curve_word,
    elementary_twist,
    twist_name,
)
from twistlab.words import (
    AutWitness,
    FreeMap,
    apply_map,
    compose,
    equal_maps,
    identity_map,
    is_identity,
)

Factor = tuple[str, int]


@dataclass(frozen=True)
class MappingClass:
    model: SurfaceModel
    factors: tuple[Factor, ...] = ()
    table: ElementaryTable | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        table = self.elementary_table
        for name, sign in self.factors:
            if sign not in (1, -1):
                raise ValueError(f"factor exponent must be +1 or -1, got {sign}")
            if name not in table:
                raise KeyError(f"{name} is not an elementary class of {self.model}")

    @property
    def elementary_table(self) -> ElementaryTable:
        return build_table(self.model) if self.table is None else self.table

    # cached_property writes the instance dict directly; two threads racing on
    # the same class compute the same value, so the cache is idempotent.
    @cached_property
    def _forward(self) -> FreeMap:
        table = self.elementary_table
        result = identity_map(self.model.rank)
        for name, sign in self.factors:
            w = table[name]
            result = compose(result, w.forward if sign == 1 else w.backward)
        boundary = self.model.boundary
        if apply_map(result, boundary) != boundary:
            raise AssertionError(f"{self} does not fix the boundary word")
        return result

    @cached_property
    def _backward(self) -> FreeMap:
        return self.inverse()._forward

    def evaluate(self) -> FreeMap:
        return self._forward

    def witness(self) -> AutWitness:
        """Forward map with the inverse obtained from the reversed factorization."""
        return AutWitness(self._forward, self._backward, check=False)

    def _check_model(self, other: MappingClass) -> None:
        if self.model != other.model:
            raise ModelMismatch(f"{self.model} vs {other.model}")

    def __mul__(self, other: MappingClass) -> MappingClass:
        self._check_model(other)
        return MappingClass(self.model, self.factors + other.factors, self.table)

    def inverse(self) -> MappingClass:
        return MappingClass(
            self.model, tuple((n, -s) for n, s in reversed(self.factors)), self.table
        )

    def __pow__(self, n: int) -> MappingClass:
        return power(self, n)

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(n if s == 1 else f"{n}^-1" for n, s in self.factors)


def identity(m: SurfaceModel) -> MappingClass:
    return MappingClass(m)


def elementary(m: SurfaceModel, name: str, sign: int = 1) -> MappingClass:
    return MappingClass(m, ((name, sign),))


def twist(m: SurfaceModel, i: int, j: int, sign: int = 1) -> MappingClass:
    elementary_twist(m, i, j)  # raises for one-sided or out-of-range curves
    return elementary(m, twist_name(i, j), sign)


def transposition(m: SurfaceModel, sign: int = 1) -> MappingClass:
    return elementary(m, "U", sign)


def boundary(m: SurfaceModel) -> MappingClass:
    return elementary(m, "D")


def product(m: SurfaceModel, classes: Sequence[MappingClass]) -> MappingClass:
    out = identity(m)
    for c in classes:
        out = out * c
    return out


def power(mc: MappingClass, n: int) -> MappingClass:
    base = mc if n >= 0 else mc.inverse()
    return MappingClass(mc.model, base.factors * abs(n), mc.table)


def conjugate_class(base: MappingClass, by: MappingClass) -> MappingClass:
    """``by * base * by^-1``."""
    return by * base * by.inverse()


@dataclass(frozen=True)
class ConjugatedTwist:
    """The twist ``base`` moved by ``by``: evaluates to by o base o by^-1."""

    base: str
    by: MappingClass

    def as_class(self) -> MappingClass:
        return conjugate_class(elementary(self.by.model, self.base), self.by)


def twist_about(m: SurfaceModel, c: CurveSpec) -> MappingClass:
    if isinstance(c, Basic):
        return twist(m, c.i, c.j)
    if m.character(curve_word(m, c)) != 0:
        raise OneSidedCurve(f"{c} is one-sided")
    return conjugate_class(twist_about(m, c.base), c.by)


def mc_equal(a: MappingClass, b: MappingClass) -> bool:
    a._check_model(b)
    return equal_maps(a.evaluate(), b.evaluate())


def is_trivial(mc: MappingClass) -> bool:
    return is_identity(mc.evaluate())


def commutes(a: MappingClass, b: MappingClass) -> bool:
    a._check_model(b)
    fa, fb = a.evaluate(), b.evaluate()
    return equal_maps(compose(fa, fb), compose(fb, fa))


def braid_with(a: MappingClass, b: MappingClass) -> bool:
    a._check_model(b)
    fa, fb = a.evaluate(), b.evaluate()
    return equal_maps(compose(fa, compose(fb, fa)), compose(fb, compose(fa, fb)))
