"""Finitely generated ordered abelian groups realized as lexicographic Q^d.

Only the lexicographic order is modelled.  A rank-one group with several
Q-independent (irrational) generators is represented by lex Q^d of the same
rational rank; this changes the order type but none of the group-theoretic
formulas the rest of the package evaluates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, LayoutMismatch, SingularSystem

Rational = Fraction | int


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True, order=False)
class GroupElement:
    """A point of lex Q^d.

    Arithmetic operators are coordinate-wise; comparisons are lexicographic,
    which is exactly Python's tuple order on the coordinates.
    """

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable[Rational]):
        object.__setattr__(self, "coords", tuple(as_fraction(c) for c in coords))

    @classmethod
    def zero(cls, dimension: int) -> "GroupElement":
        return cls((0,) * dimension)

    @classmethod
    def unit(cls, dimension: int, index: int) -> "GroupElement":
        return cls(1 if i == index else 0 for i in range(dimension))

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if len(other.coords) != len(self.coords):
            raise DimensionMismatch(f"dimensions {self.dimension} and {other.dimension} differ")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return add(self, other)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return add(self, neg(other))

    def __neg__(self) -> "GroupElement":
        return neg(self)

    def __rmul__(self, q: Rational) -> "GroupElement":
        return scale(q, self)

    def __lt__(self, other: "GroupElement") -> bool:
        return lex_cmp(self, other) < 0

    def __le__(self, other: "GroupElement") -> bool:
        return lex_cmp(self, other) <= 0

    def __gt__(self, other: "GroupElement") -> bool:
        return lex_cmp(self, other) > 0

    def __ge__(self, other: "GroupElement") -> bool:
        return lex_cmp(self, other) >= 0

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"GroupElement({format_element(self)})"


@dataclass(frozen=True)
class OrderedGroupSpec:
    dimension: int

    def __post_init__(self):
        if self.dimension < 0:
            raise ValueError("dimension must be non-negative")

    @property
    def rank(self) -> int:
        return self.dimension

    @property
    def rational_rank(self) -> int:
        return self.dimension

    def zero(self) -> GroupElement:
        return GroupElement.zero(self.dimension)

    def contains(self, a: GroupElement) -> bool:
        return a.dimension == self.dimension


@dataclass(frozen=True)
class CompositionLayout:
    """Direct-sum layout of a composed value group.

    The first ``front_dims`` coordinates carry the outer (quotient) value, the
    trailing ``back_dims`` coordinates form the convex subgroup of the inner
    valuation.
    """

    front_dims: int
    back_dims: int

    @property
    def total(self) -> int:
        return self.front_dims + self.back_dims


def lex_cmp(a: GroupElement, b: GroupElement) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    a._check(b)
    for x, y in zip(a.coords, b.coords):
        if x != y:
            return -1 if x < y else 1
    return 0


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    a._check(b)
    return GroupElement(x + y for x, y in zip(a.coords, b.coords))


def neg(a: GroupElement) -> GroupElement:
    return GroupElement(-x for x in a.coords)


def scale(q: Rational, a: GroupElement) -> GroupElement:
    q = as_fraction(q)
    return GroupElement(q * x for x in a.coords)


def total(elements: Iterable[GroupElement], dimension: int) -> GroupElement:
    acc = [Fraction(0)] * dimension
    for e in elements:
        if e.dimension != dimension:
            raise DimensionMismatch(f"expected dimension {dimension}, got {e.dimension}")
        for i, c in enumerate(e.coords):
            acc[i] += c
    return GroupElement(acc)


def project_quotient(layout: CompositionLayout, a: GroupElement) -> GroupElement:
    if a.dimension != layout.total:
        raise LayoutMismatch(f"element of dimension {a.dimension} does not fit layout {layout}")
    return GroupElement(a.coords[: layout.front_dims])


def project_subgroup(layout: CompositionLayout, a: GroupElement) -> GroupElement:
    """Back coordinates of ``a``; only meaningful on the convex subgroup."""
    if a.dimension != layout.total:
        raise LayoutMismatch(f"element of dimension {a.dimension} does not fit layout {layout}")
    return GroupElement(a.coords[layout.front_dims:])


def include_subgroup(layout: CompositionLayout, a: GroupElement) -> GroupElement:
    if a.dimension != layout.back_dims:
        raise LayoutMismatch(f"element of dimension {a.dimension} is not in the back subgroup of {layout}")
    return GroupElement((0,) * layout.front_dims + a.coords)


def concat(front: GroupElement, back: GroupElement) -> GroupElement:
    return GroupElement(front.coords + back.coords)


# -- exact linear algebra over Q on lists of group elements -----------------

def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    if not rows:
        return rows, pivots
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def span_rank(elements: Sequence[GroupElement]) -> int:
    """Dimension of the Q-span of ``elements``."""
    if not elements:
        return 0
    return len(_echelon([list(e.coords) for e in elements])[1])


def independent_subset(elements: Sequence[GroupElement]) -> list[int]:
    """Greedy indices of a maximal Q-independent subfamily, in input order."""
    chosen: list[int] = []
    for i, e in enumerate(elements):
        if span_rank([elements[j] for j in chosen] + [e]) > len(chosen):
            chosen.append(i)
    return chosen


def solve_combination(basis: Sequence[GroupElement], target: GroupElement) -> list[Fraction]:
    """Coefficients ``n`` with ``sum(n_i * basis_i) == target``.

    Raises SingularSystem when ``target`` is outside the Q-span of ``basis``
    or the basis is dependent.
    """
    k = len(basis)
    if span_rank(basis) != k:
        raise SingularSystem("basis elements are Q-linearly dependent")
    d = target.dimension
    # columns are basis vectors; augmented with target
    rows = [[basis[j].coords[i] for j in range(k)] + [target.coords[i]] for i in range(d)]
    red, pivots = _echelon(rows)
    if k in pivots:
        raise SingularSystem(f"{target} is not in the span of the basis")
    sol = [Fraction(0)] * k
    for row, c in zip(red, pivots):
        sol[c] = row[k]
    return sol


# -- text form ----------------------------------------------------------------

def format_rational(q: Fraction) -> str:
    q = as_fraction(q)
    return str(q)


def format_element(a: GroupElement) -> str:
    return "(" + ", ".join(format_rational(c) for c in a.coords) + ")"


_ELEMENT_RE = re.compile(r"^\s*\(\s*(.*?)\s*\)\s*$", re.S)


def parse_element(text: str) -> GroupElement:
    """Parse ``"(1/2, -3, 0)"``; the surrounding parentheses are optional."""
    m = _ELEMENT_RE.match(text)
    body = m.group(1) if m else text.strip()
    if not body:
        return GroupElement(())
    try:
        return GroupElement(Fraction(part.strip()) for part in body.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed group element {text!r}") from exc
