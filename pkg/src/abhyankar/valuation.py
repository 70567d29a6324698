"""Monomial-type Abhyankar valuations on Q(x_1, ..., x_n).

A valuation is given by a weight in lex Q^d for every coordinate; the value of
a polynomial is the lex-minimum of the weights of its monomials.  Two flavours
share one class:

* adapted specs (:func:`monomial_valuation`, :func:`compose`): the variables
  split into a basis part T whose weights form a Q-basis of Q^d and a residue
  part R of weight zero.  These support residues.
* quasi-monomial handles (:func:`quasi_monomial_valuation`): arbitrary
  weights, e.g. all equal for the blow-up of the origin.  Values and initial
  forms work; residues need an adapted rewrite first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    ContextMismatch,
    NonAdaptedWeights,
    NonzeroValue,
    ZeroFunction,
    ZeroPolynomial,
)
from .funfield import Polynomial, RationalFunction, VariableContext, rf_mul
from .ordgroup import (
    CompositionLayout,
    GroupElement,
    OrderedGroupSpec,
    concat,
    format_element,
    independent_subset,
    project_quotient,
    solve_combination,
    span_rank,
)


@dataclass(frozen=True)
class ValuationInvariants:
    rank: int
    rational_rank: int
    dimension: int


@dataclass(frozen=True, eq=False)
class ValuationSpec:
    ctx: VariableContext
    group: OrderedGroupSpec
    weights: tuple[GroupElement, ...]
    basis_vars: tuple[str, ...]
    residue_vars: tuple[str, ...]
    adapted: bool = True
    layout: CompositionLayout | None = None
    outer: "ValuationSpec | None" = field(default=None, repr=False)
    inner: "ValuationSpec | None" = field(default=None, repr=False)

    @property
    def dimension(self) -> int:
        return self.group.dimension

    def weight(self, name: str) -> GroupElement:
        return self.weights[self.ctx.index(name)]

    @property
    def residue_ctx(self) -> VariableContext:
        return VariableContext(self.residue_vars)

    def as_mapping(self) -> dict:
        """Spec-file shaped description; weights are written as element strings."""
        out = {
            "variables": list(self.ctx.names),
            "weights": {v: format_element(w) for v, w in zip(self.ctx.names, self.weights)},
        }
        if self.adapted:
            out["basis"] = list(self.basis_vars)
            out["residue"] = list(self.residue_vars)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ValuationSpec):
            return NotImplemented
        return (self.ctx, self.weights, self.basis_vars, self.residue_vars, self.adapted) == (
            other.ctx, other.weights, other.basis_vars, other.residue_vars, other.adapted)

    def __hash__(self) -> int:
        return hash((self.ctx, self.weights, self.basis_vars, self.residue_vars, self.adapted))


def _weight_tuple(ctx: VariableContext, weights: Mapping[str, object]) -> tuple[GroupElement, ...]:
    for name in weights:
        ctx.index(name)
    given = {k: v if isinstance(v, GroupElement) else GroupElement(v) for k, v in weights.items()}
    dims = {w.dimension for w in given.values()}
    if len(dims) > 1:
        raise NonAdaptedWeights(f"weights have different dimensions {sorted(dims)}")
    d = dims.pop() if dims else 0
    return tuple(given.get(n, GroupElement.zero(d)) for n in ctx.names)


def monomial_valuation(
    ctx: VariableContext,
    weights: Mapping[str, object],
    basis: Sequence[str] | None = None,
    residue: Sequence[str] | None = None,
) -> ValuationSpec:
    """Adapted monomial valuation.

    Unlisted variables get weight zero.  Without an explicit partition the
    basis is every variable of nonzero weight, in context order.
    """
    w = _weight_tuple(ctx, weights)
    d = w[0].dimension if w else 0
    if basis is None and residue is None:
        basis = [n for n, x in zip(ctx.names, w) if not x.is_zero()]
    if basis is None:
        basis = [n for n in ctx.names if n not in residue]
    if residue is None:
        residue = [n for n in ctx.names if n not in basis]
    basis, residue = tuple(basis), tuple(residue)
    if sorted(basis + residue) != sorted(ctx.names) or len(set(basis + residue)) != len(ctx):
        raise NonAdaptedWeights(f"basis {basis} and residue {residue} do not partition {ctx.names}")
    for n in residue:
        if not w[ctx.index(n)].is_zero():
            raise NonAdaptedWeights(f"residue variable {n!r} has nonzero weight {w[ctx.index(n)]}")
    bw = [w[ctx.index(n)] for n in basis]
    if span_rank(bw) != len(basis):
        raise NonAdaptedWeights(f"weights of basis variables {basis} are Q-linearly dependent")
    if len(basis) != d:
        raise NonAdaptedWeights(f"{len(basis)} basis variables for a group of dimension {d}")
    return ValuationSpec(ctx, OrderedGroupSpec(d), w, basis, residue, adapted=True)


def quasi_monomial_valuation(ctx: VariableContext, weights: Mapping[str, object]) -> ValuationSpec:
    """Handle for arbitrary (possibly dependent) weights.

    A maximal independent set of weighted variables is recorded as the basis;
    the Abhyankar equality rr + dim = n is assumed, not checked.
    """
    w = _weight_tuple(ctx, weights)
    d = w[0].dimension if w else 0
    chosen = independent_subset(list(w))
    basis = tuple(ctx.names[i] for i in chosen)
    residue = tuple(n for n in ctx.names if n not in basis)
    return ValuationSpec(ctx, OrderedGroupSpec(d), w, basis, residue, adapted=False)


def divisorial_valuation(ctx: VariableContext, name: str) -> ValuationSpec:
    """Order of vanishing along the coordinate hyperplane ``name = 0``."""
    return monomial_valuation(ctx, {n: [1 if n == name else 0] for n in ctx.names})


def compose(outer: ValuationSpec, inner: ValuationSpec) -> ValuationSpec:
    """Composite valuation: outer value first, inner value on the residue field."""
    if not outer.adapted:
        raise NonAdaptedWeights("the outer valuation of a composition must be adapted")
    if inner.ctx.names != outer.residue_vars:
        raise ContextMismatch(
            f"inner context {inner.ctx.names} is not the residue context {outer.residue_vars}"
        )
    d_out, d_in = outer.dimension, inner.dimension
    weights = []
    for name, w in zip(outer.ctx.names, outer.weights):
        if name in outer.basis_vars:
            weights.append(concat(w, GroupElement.zero(d_in)))
        else:
            weights.append(concat(GroupElement.zero(d_out), inner.weight(name)))
    return ValuationSpec(
        outer.ctx,
        OrderedGroupSpec(d_out + d_in),
        tuple(weights),
        outer.basis_vars + inner.basis_vars,
        inner.residue_vars,
        adapted=inner.adapted,
        layout=CompositionLayout(d_out, d_in),
        outer=outer,
        inner=inner,
    )


def _term_values(nu: ValuationSpec, p: Polynomial) -> list[tuple[tuple[Fraction, ...], tuple]]:
    if p.ctx != nu.ctx:
        raise ContextMismatch(f"polynomial context {p.ctx.names} differs from {nu.ctx.names}")
    d = nu.dimension
    ws = [(j, w.coords) for j, w in enumerate(nu.weights) if not w.is_zero()]
    out = []
    for mono in p.terms:
        v = [Fraction(0)] * d
        for j, wc in ws:
            e = mono[j]
            if e:
                for k in range(d):
                    v[k] += e * wc[k]
        out.append((tuple(v), mono))
    return out


def value_poly(nu: ValuationSpec, p: Polynomial) -> GroupElement:
    if p.is_zero():
        raise ZeroPolynomial("valuation of the zero polynomial")
    return GroupElement(min(v for v, _ in _term_values(nu, p)))


def value(nu: ValuationSpec, f: RationalFunction | Polynomial) -> GroupElement:
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    if f.is_zero():
        raise ZeroFunction("valuation of the zero function")
    return value_poly(nu, f.num) - value_poly(nu, f.den)


def initial_form(nu: ValuationSpec, p: Polynomial) -> Polynomial:
    """Sum of the terms of minimal value (ties keep every tied term)."""
    if p.is_zero():
        raise ZeroPolynomial("initial form of the zero polynomial")
    tv = _term_values(nu, p)
    low = min(v for v, _ in tv)
    return Polynomial._raw(p.ctx, {m: p.terms[m] for v, m in tv if v == low})


def _residue_part(nu: ValuationSpec, p: Polynomial) -> tuple[tuple, Polynomial]:
    init = initial_form(nu, p)
    bidx = [nu.ctx.index(n) for n in nu.basis_vars]
    ridx = [nu.ctx.index(n) for n in nu.residue_vars]
    rctx = nu.residue_ctx
    basis_parts = {tuple(m[i] for i in bidx) for m in init.terms}
    # independence of the basis weights forces a common basis exponent
    assert len(basis_parts) == 1, basis_parts
    terms = {tuple(m[i] for i in ridx): c for m, c in init.terms.items()}
    return basis_parts.pop(), Polynomial._raw(rctx, terms)


def residue(nu: ValuationSpec, f: RationalFunction | Polynomial) -> RationalFunction:
    """Image of a value-zero function in the residue field Q(R)."""
    if not nu.adapted:
        raise NonAdaptedWeights("residues need adapted coordinates; rewrite the handle first")
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    v = value(nu, f)
    if not v.is_zero():
        raise NonzeroValue(f"{f} has value {v}, not 0")
    a, p = _residue_part(nu, f.num)
    b, q = _residue_part(nu, f.den)
    assert a == b
    return RationalFunction(p, q)


def split_value(nu: ValuationSpec, f: RationalFunction | Polynomial) -> tuple[GroupElement, GroupElement]:
    """Split a composed value into (outer value, inner value of the normalized residue)."""
    if nu.layout is None or nu.outer is None or nu.inner is None:
        raise ValueError("split_value needs a composed valuation")
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    if f.is_zero():
        raise ZeroFunction("valuation of the zero function")
    outer = nu.outer
    front = project_quotient(nu.layout, value(nu, f))
    n = solve_combination([outer.weight(t) for t in outer.basis_vars], front)
    shift = Polynomial.monomial(nu.ctx, {t: -e for t, e in zip(outer.basis_vars, n)})
    unit = rf_mul(f, RationalFunction(shift))
    back = value(nu.inner, residue(outer, unit))
    return front, back


def invariants_of(nu: ValuationSpec) -> ValuationInvariants:
    # every Q-subspace of lex Q^d has as many convex subgroups as its dimension
    rr = span_rank(list(nu.weights))
    return ValuationInvariants(rank=rr, rational_rank=rr, dimension=len(nu.ctx) - rr)


def coordinates_in_basis(nu: ValuationSpec, v: GroupElement) -> list[Fraction]:
    """Write ``v`` as a Q-combination of the basis-variable weights."""
    return solve_combination([nu.weight(t) for t in nu.basis_vars], v)


__all__ = [
    "ValuationSpec",
    "ValuationInvariants",
    "monomial_valuation",
    "quasi_monomial_valuation",
    "divisorial_valuation",
    "compose",
    "value_poly",
    "value",
    "initial_form",
    "residue",
    "split_value",
    "invariants_of",
    "coordinates_in_basis",
]
