"""Generalized power series with exponents in lex Q^d and finite support.

Infinite series only appear as truncations of inverses.  A truncated series
carries a :class:`Truncation` marker whose ``exact_below`` field is the first
exponent at which the stored coefficients may differ from the true series;
every stored coefficient below it is exact.  Markers propagate through
arithmetic with the correct bound.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import FrameMismatch, GroupMismatch, NotInValuationRing, ZeroSeries
from .funfield import Polynomial
from .ordgroup import CompositionLayout, GroupElement, OrderedGroupSpec, as_fraction, format_element

Exponent = tuple[Fraction, ...]


@dataclass(frozen=True)
class Truncation:
    exact_below: GroupElement | None = None
    max_terms: int | None = None
    cutoff: GroupElement | None = None


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


@dataclass(frozen=True, eq=False)
class GenSeries:
    group: OrderedGroupSpec
    terms: tuple[tuple[Exponent, Fraction], ...]
    truncation: Truncation | None = None

    @classmethod
    def from_dict(cls, group: OrderedGroupSpec | int, data: Mapping, truncation: Truncation | None = None) -> "GenSeries":
        if isinstance(group, int):
            group = OrderedGroupSpec(group)
        acc: dict[Exponent, Fraction] = {}
        for k, c in data.items():
            k = tuple(k.coords) if isinstance(k, GroupElement) else tuple(as_fraction(x) for x in k)
            if len(k) != group.dimension:
                raise GroupMismatch(f"exponent {k} not in a group of dimension {group.dimension}")
            acc[k] = acc.get(k, Fraction(0)) + as_fraction(c)
        return cls._make(group, acc, truncation)

    @classmethod
    def _make(cls, group: OrderedGroupSpec, acc: Mapping[Exponent, Fraction], truncation=None) -> "GenSeries":
        return cls(group, tuple(sorted((k, c) for k, c in acc.items() if c != 0)), truncation)

    @classmethod
    def zero(cls, d: int) -> "GenSeries":
        return cls(OrderedGroupSpec(d), ())

    @classmethod
    def one(cls, d: int) -> "GenSeries":
        return cls(OrderedGroupSpec(d), (((Fraction(0),) * d, Fraction(1)),))

    @classmethod
    def monomial(cls, exponent: GroupElement, coeff=1) -> "GenSeries":
        return cls.from_dict(exponent.dimension, {exponent: coeff})

    @property
    def dimension(self) -> int:
        return self.group.dimension

    @property
    def exact(self) -> bool:
        return self.truncation is None

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[GroupElement, Fraction]:
        return {GroupElement(k): c for k, c in self.terms}

    def coefficient(self, exponent) -> Fraction:
        k = tuple(exponent.coords) if isinstance(exponent, GroupElement) else tuple(map(as_fraction, exponent))
        return dict(self.terms).get(k, Fraction(0))

    def prefix(self, n: int) -> "GenSeries":
        """First ``n`` terms, marked exact below the first dropped one."""
        if n >= len(self.terms):
            return self
        cut = GroupElement(self.terms[n][0])
        bound = _min_opt(cut, self.truncation.exact_below if self.truncation else None)
        return GenSeries(self.group, self.terms[:n], Truncation(bound, max_terms=n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GenSeries):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, series_scale(other, -1))

    def __mul__(self, other):
        return series_mul(self, other)

    def __str__(self) -> str:
        return format_series(self)


def _check_groups(s: GenSeries, t: GenSeries) -> None:
    if s.group != t.group:
        raise GroupMismatch(f"groups of dimension {s.dimension} and {t.dimension} differ")


def _lower_value(s: GenSeries) -> GroupElement | None:
    """Lower bound for the value of the true series (None means +infinity)."""
    v = GroupElement(s.terms[0][0]) if s.terms else None
    bound = s.truncation.exact_below if s.truncation else None
    return _min_opt(v, bound)


def _merge_truncation(s: GenSeries, t: GenSeries, exact_below: GroupElement | None) -> Truncation | None:
    if s.truncation is None and t.truncation is None:
        return None
    parts = [x for x in (s.truncation, t.truncation) if x is not None]
    terms = [p.max_terms for p in parts if p.max_terms is not None]
    cut = None
    for p in parts:
        cut = _min_opt(cut, p.cutoff)
    return Truncation(exact_below, min(terms) if terms else None, cut)


def series_from_poly(p: Polynomial, weights: Mapping[str, GroupElement] | Sequence[GroupElement]) -> GenSeries:
    """Embed a polynomial by sending ``x_j`` to ``z^{w_j}``; colliding exponents add up."""
    if not isinstance(weights, Mapping):
        weights = dict(zip(p.ctx.names, weights))
    ws = [weights[n] if isinstance(weights[n], GroupElement) else GroupElement(weights[n]) for n in p.ctx.names]
    d = ws[0].dimension if ws else 0
    acc: dict[Exponent, Fraction] = {}
    for mono, c in p.terms.items():
        e = [Fraction(0)] * d
        for q, w in zip(mono, ws):
            if q:
                for k in range(d):
                    e[k] += q * w.coords[k]
        key = tuple(e)
        acc[key] = acc.get(key, Fraction(0)) + c
    return GenSeries._make(OrderedGroupSpec(d), acc)


def series_scale(s: GenSeries, c) -> GenSeries:
    c = as_fraction(c)
    if c == 0:
        return GenSeries(s.group, (), s.truncation)
    return GenSeries(s.group, tuple((k, v * c) for k, v in s.terms), s.truncation)


def series_add(s: GenSeries, t: GenSeries) -> GenSeries:
    _check_groups(s, t)
    acc = dict(s.terms)
    for k, c in t.terms:
        acc[k] = acc.get(k, Fraction(0)) + c
    bound = _min_opt(
        s.truncation.exact_below if s.truncation else None,
        t.truncation.exact_below if t.truncation else None,
    )
    return GenSeries._make(s.group, acc, _merge_truncation(s, t, bound))


def series_mul(s: GenSeries, t: GenSeries) -> GenSeries:
    _check_groups(s, t)
    acc: dict[Exponent, Fraction] = {}
    for k1, c1 in s.terms:
        for k2, c2 in t.terms:
            k = tuple(a + b for a, b in zip(k1, k2))
            acc[k] = acc.get(k, Fraction(0)) + c1 * c2
    bound = None
    if s.truncation and s.truncation.exact_below is not None:
        vt = _lower_value(t)
        if vt is not None:
            bound = _min_opt(bound, s.truncation.exact_below + vt)
    if t.truncation and t.truncation.exact_below is not None:
        vs = _lower_value(s)
        if vs is not None:
            bound = _min_opt(bound, t.truncation.exact_below + vs)
    return GenSeries._make(s.group, acc, _merge_truncation(s, t, bound))


def series_value(s: GenSeries) -> GroupElement:
    if not s.terms:
        raise ZeroSeries("value of the zero series")
    low = GroupElement(s.terms[0][0])
    if s.truncation and s.truncation.exact_below is not None and not low < s.truncation.exact_below:
        raise ZeroSeries("value not determined by the truncated terms")
    return low


def series_invert(s: GenSeries, max_terms: int = 16, cutoff: GroupElement | None = None,
                  max_steps: int = 100_000) -> GenSeries:
    """Leading terms of ``1/s`` in increasing exponent order.

    With ``s = c z^v (1 + m)`` and every exponent of ``m`` positive, the
    inverse is ``c^-1 z^-v sum (-m)^k``.  Its support lies in ``-v`` plus the
    monoid generated by the exponents of ``m``; that monoid is walked
    smallest-first with a heap and coefficients come from the recurrence
    ``r_g = [g = 0] - sum_mu m_mu r_{g - mu}``.  The walk stops after
    ``max_terms`` nonzero terms or once every remaining exponent exceeds
    ``cutoff``.  The result is exact below its marker's ``exact_below``, so
    ``s * result`` agrees with 1 below ``v + exact_below``.
    """
    if not s.terms:
        raise ZeroSeries("inverse of the zero series")
    if s.truncation is not None:
        raise ValueError("inverting a truncated series is not supported")
    d = s.dimension
    v, c = s.terms[0]
    if len(s.terms) == 1:
        return GenSeries(s.group, ((tuple(-x for x in v), 1 / c),))
    m = [(tuple(a - b for a, b in zip(k, v)), x / c) for k, x in s.terms[1:]]
    origin = (Fraction(0),) * d
    coeffs: dict[Exponent, Fraction] = {}
    heap = [origin]
    seen = {origin}
    emitted: list[tuple[Exponent, Fraction]] = []
    neg_v = tuple(-x for x in v)
    exact_below = None
    steps = 0
    while heap:
        if cutoff is not None and GroupElement(tuple(a + b for a, b in zip(heap[0], neg_v))) > cutoff:
            exact_below = GroupElement(tuple(a + b for a, b in zip(heap[0], neg_v)))
            break
        steps += 1
        if steps > max_steps:
            exact_below = GroupElement(tuple(a + b for a, b in zip(heap[0], neg_v)))
            break
        g = heapq.heappop(heap)
        r = Fraction(1) if g == origin else Fraction(0)
        for mu, x in m:
            prev = coeffs.get(tuple(a - b for a, b in zip(g, mu)))
            if prev:
                r -= x * prev
        if r:
            coeffs[g] = r
            if len(emitted) == max_terms:
                exact_below = GroupElement(tuple(a + b for a, b in zip(g, neg_v)))
                break
            emitted.append((tuple(a + b for a, b in zip(g, neg_v)), r / c))
        for mu, _ in m:
            nxt = tuple(a + b for a, b in zip(g, mu))
            if nxt not in seen:
                seen.add(nxt)
                heapq.heappush(heap, nxt)
    return GenSeries(s.group, tuple(emitted), Truncation(exact_below, max_terms, cutoff))


@dataclass(frozen=True)
class SeriesVariableFrame:
    """Names ``z_i = z^{e_i}`` for the standard basis of Q^d."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise FrameMismatch(f"duplicate frame names {self.names}")

    @classmethod
    def standard(cls, d: int, prefix: str = "z") -> "SeriesVariableFrame":
        return cls(tuple(f"{prefix}{i + 1}" for i in range(d)))

    def index(self, i: int | str) -> int:
        if isinstance(i, str):
            try:
                return self.names.index(i)
            except ValueError:
                raise FrameMismatch(f"{i!r} is not a frame variable") from None
        if not 0 <= i < len(self.names):
            raise FrameMismatch(f"index {i} out of range for a frame of size {len(self.names)}")
        return i


def formal_partial(s: GenSeries, frame: SeriesVariableFrame, i: int | str) -> GenSeries:
    """Term-wise derivative by ``z_i``: ``a z^g -> a g_i z^(g - e_i)``."""
    if len(frame.names) != s.dimension:
        raise FrameMismatch(f"frame of size {len(frame.names)} for a group of dimension {s.dimension}")
    i = frame.index(i)
    acc: dict[Exponent, Fraction] = {}
    for k, c in s.terms:
        if k[i] == 0:
            continue
        nk = k[:i] + (k[i] - 1,) + k[i + 1:]
        acc[nk] = acc.get(nk, Fraction(0)) + c * k[i]
    trunc = s.truncation
    if trunc is not None and trunc.exact_below is not None:
        trunc = Truncation(trunc.exact_below - GroupElement.unit(s.dimension, i), trunc.max_terms, trunc.cutoff)
    return GenSeries._make(s.group, acc, trunc)


def series_residue(s: GenSeries, layout: CompositionLayout) -> GenSeries:
    """Reduction modulo the prime of the front quotient: keep the terms with
    zero front part, projected to the back subgroup."""
    if layout.total != s.dimension:
        raise GroupMismatch(f"layout {layout} does not fit dimension {s.dimension}")
    f = layout.front_dims
    zero_front = (Fraction(0),) * f
    acc: dict[Exponent, Fraction] = {}
    for k, c in s.terms:
        if k[:f] < zero_front:
            raise NotInValuationRing(f"term with exponent {GroupElement(k)} has negative front part")
        if k[:f] == zero_front:
            acc[k[f:]] = c
    trunc = None
    if s.truncation is not None:
        eb = s.truncation.exact_below
        if eb is not None:
            front = eb.coords[:f]
            if front < zero_front:
                raise NotInValuationRing("truncation leaves terms with negative front part undetermined")
            if front == zero_front:
                trunc = Truncation(GroupElement(eb.coords[f:]), s.truncation.max_terms, None)
        else:
            trunc = Truncation(None, s.truncation.max_terms, None)
    return GenSeries._make(OrderedGroupSpec(layout.back_dims), acc, trunc)


def series_form_value(f: GenSeries, basis_values: Sequence[GroupElement]) -> GroupElement:
    """Value of ``f dy_1 ^ ... ^ dy_n`` where ``nu(y_i)`` are the given basis values."""
    acc = series_value(f)
    for g in basis_values:
        acc = acc + g
    return acc


def format_series(s: GenSeries) -> str:
    body = ", ".join(
        "(" + ",".join(str(x) for x in k) + f"): {c}" for k, c in s.terms
    )
    text = f"[{body}]"
    if s.truncation is not None:
        eb = s.truncation.exact_below
        text += f" + O({format_element(eb) if eb is not None else '?'})"
    return text


def parse_series(text: str) -> GenSeries:
    """Parse ``[(0,0): 1, (1,0): -1]``.  Rationals may be written ``p/q``."""
    import re

    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"series literal must be bracketed: {text!r}")
    body = body[1:-1].strip()
    if not body:
        raise ValueError("empty series literal needs an explicit dimension")
    entries = re.findall(r"\(([^)]*)\)\s*:\s*([^,\]]+)", body)
    if not entries:
        raise ValueError(f"malformed series literal {text!r}")
    data: dict[Exponent, Fraction] = {}
    dims = set()
    for exps, coeff in entries:
        key = tuple(Fraction(x.strip()) for x in exps.split(",") if x.strip())
        dims.add(len(key))
        data[key] = data.get(key, Fraction(0)) + Fraction(coeff.strip())
    if len(dims) != 1:
        raise ValueError("series exponents have inconsistent dimensions")
    return GenSeries.from_dict(dims.pop(), data)
