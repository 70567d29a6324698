"""Rational top differential forms and their values at monomial places.

A form ``f * dg_1 ^ ... ^ dg_n`` is stored with its explicit basis
``(g_1, ..., g_n)``.  Two forms are equal when their coefficients in the
coordinate presentation ``dx_1 ^ ... ^ dx_n`` agree, so presentation
independence of the value is a property of this code, not a definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ContextMismatch, DegenerateBasis, NonAdaptedWeights, NonzeroFormValue
from .funfield import (
    Polynomial,
    RationalFunction,
    VariableContext,
    jacobian_det,
    product,
    rf_div,
    rf_mul,
    substitute,
)
from .ordgroup import GroupElement, span_rank, total
from .valuation import ValuationSpec, residue, value


def _rf(f) -> RationalFunction:
    return RationalFunction(f) if isinstance(f, Polynomial) else f


@dataclass(frozen=True, eq=False)
class TopForm:
    coefficient: RationalFunction
    basis: tuple[RationalFunction, ...]
    ctx: VariableContext
    jacobian: RationalFunction = field(init=False, repr=False)

    def __post_init__(self):
        basis = tuple(_rf(g) for g in self.basis)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coefficient", _rf(self.coefficient))
        if len(basis) != len(self.ctx):
            raise DegenerateBasis(f"{len(basis)} basis functions for {len(self.ctx)} variables")
        if self.coefficient.ctx != self.ctx:
            raise ContextMismatch(f"coefficient context {self.coefficient.ctx.names} differs from {self.ctx.names}")
        jac = jacobian_det(basis, self.ctx)
        if jac.is_zero():
            raise DegenerateBasis("basis functions are functionally dependent (zero Jacobian)")
        object.__setattr__(self, "jacobian", jac)

    @classmethod
    def coordinate(cls, ctx: VariableContext, coefficient=1) -> "TopForm":
        """``coefficient * dx_1 ^ ... ^ dx_n`` in the variables of ``ctx``."""
        if not isinstance(coefficient, (RationalFunction, Polynomial)):
            coefficient = RationalFunction.constant(ctx, coefficient)
        return cls(_rf(coefficient), tuple(RationalFunction.var(ctx, v) for v in ctx), ctx)

    def scaled(self, g: RationalFunction) -> "TopForm":
        return TopForm(rf_mul(self.coefficient, _rf(g)), self.basis, self.ctx)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TopForm):
            return NotImplemented
        return self.ctx == other.ctx and to_coordinate_coefficient(self) == to_coordinate_coefficient(other)

    __hash__ = None

    def __str__(self) -> str:
        from .funfield import format_rational_function

        wedge = " ^ ".join(f"d({format_rational_function(g)})" for g in self.basis)
        coeff = format_rational_function(self.coefficient)
        return f"({coeff}) {wedge}" if wedge else f"({coeff})"


class ResidueForm(TopForm):
    """Top form on the residue field of a valuation (variables = its residue variables)."""


def to_coordinate_coefficient(omega: TopForm) -> RationalFunction:
    return rf_mul(omega.coefficient, omega.jacobian)


def change_presentation(omega: TopForm, new_basis: Sequence[RationalFunction]) -> TopForm:
    new_basis = tuple(_rf(g) for g in new_basis)
    new_jac = jacobian_det(new_basis, omega.ctx)
    if new_jac.is_zero():
        raise DegenerateBasis("new basis is functionally dependent")
    coeff = rf_div(to_coordinate_coefficient(omega), new_jac)
    return type(omega)(coeff, new_basis, omega.ctx)


def valuate_form(omega: TopForm, nu: ValuationSpec) -> GroupElement:
    """Log value of a top form: value of the coordinate coefficient plus the sum
    of the weights of all coordinates.

    For quasi-monomial handles this assumes the residues of the normalized
    monomials form a transcendence basis of the residue field (genericity of
    the weights); for adapted specs it is exact.
    """
    if nu.ctx != omega.ctx:
        raise ContextMismatch(f"valuation context {nu.ctx.names} differs from {omega.ctx.names}")
    return value(nu, to_coordinate_coefficient(omega)) + total(nu.weights, nu.dimension)


def poincare_residue(
    omega: TopForm,
    nu: ValuationSpec,
    presentation: Sequence[RationalFunction] | None = None,
) -> ResidueForm:
    """Generalized Poincare residue of a form with value zero.

    ``presentation`` is an adapted basis ``(s_1..s_k, y_1..y_m)``: the values of
    the ``s_i`` form a Q-basis of the value group and the ``y_j`` are units.
    It defaults to the coordinates ``(t.., x..)`` of ``nu``.  Different adapted
    presentations give coefficients that agree up to a nonzero constant.
    """
    if not nu.adapted:
        raise NonAdaptedWeights("the residue map needs adapted coordinates")
    v = valuate_form(omega, nu)
    if not v.is_zero():
        raise NonzeroFormValue(f"form has value {v}, residue needs value 0")
    k = len(nu.basis_vars)
    ctx = omega.ctx
    if presentation is None:
        presentation = [RationalFunction.var(ctx, n) for n in nu.basis_vars + nu.residue_vars]
    presentation = [_rf(g) for g in presentation]
    if len(presentation) != len(ctx):
        raise DegenerateBasis(f"presentation has {len(presentation)} entries for {len(ctx)} variables")
    params, units = presentation[:k], presentation[k:]
    if span_rank([value(nu, s) for s in params]) != k:
        raise NonAdaptedWeights("values of the parameter part do not form a Q-basis")
    for y in units:
        if not value(nu, y).is_zero():
            raise NonAdaptedWeights(f"{y} is not a unit for the valuation")
    adapted = change_presentation(omega, presentation)
    coeff = residue(nu, rf_mul(adapted.coefficient, product(params, ctx)))
    rbasis = tuple(residue(nu, y) for y in units)
    return ResidueForm(coeff, rbasis, nu.residue_ctx)


def classical_value_via_chart(
    omega: TopForm,
    chart: Mapping[str, RationalFunction],
    exc_var: str,
) -> Fraction:
    """Classical order of ``omega`` along ``exc_var = 0`` after pulling back through ``chart``.

    The chart must be birational (e.g. a blow-up chart or a unimodular toric
    chart); this is not verified.
    """
    chart = {k: _rf(v) for k, v in chart.items()}
    if not chart:
        raise DegenerateBasis("empty chart")
    target = next(iter(chart.values())).ctx
    target.index(exc_var)
    jac = jacobian_det([chart[x] for x in omega.ctx], target)
    if jac.is_zero():
        raise DegenerateBasis("chart has zero Jacobian")
    pulled = rf_mul(substitute(to_coordinate_coefficient(omega), chart, target), jac)
    if pulled.is_zero():
        raise DegenerateBasis("pulled-back form vanishes")
    return min(pulled.num.exponents_in(exc_var)) - min(pulled.den.exponents_in(exc_var))
