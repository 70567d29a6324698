import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from abhyankar.errors import DegenerateBasis, NonAdaptedWeights, NonzeroFormValue
from abhyankar.forms import (
    TopForm,
    change_presentation,
    classical_value_via_chart,
    poincare_residue,
    to_coordinate_coefficient,
    valuate_form,
)
from abhyankar.funfield import RationalFunction, VariableContext
from abhyankar.ordgroup import GroupElement, total
from abhyankar.valuation import monomial_valuation, quasi_monomial_valuation, value

import gen

G = GroupElement
seeds = st.integers(0, 10**9)

C2 = gen.context(2)
x1, x2 = RationalFunction.var(C2, "x1"), RationalFunction.var(C2, "x2")
TX = VariableContext(["t", "x"])
t, x = RationalFunction.var(TX, "t"), RationalFunction.var(TX, "x")


def flag():
    return monomial_valuation(TX, {"t": [1], "x": [0]})


def test_to_coordinate_coefficient_examples():
    f = x1**2 + x2
    assert to_coordinate_coefficient(TopForm(f, (x1, x2), C2)) == f
    assert to_coordinate_coefficient(TopForm(RationalFunction.constant(C2, 1), (x1 * x2, x2), C2)) == x2
    assert to_coordinate_coefficient(TopForm(RationalFunction.constant(C2, 1), (x2, x1), C2)) == -1
    with pytest.raises(DegenerateBasis):
        TopForm(RationalFunction.constant(C2, 1), (x1, 2 * x1), C2)


def test_change_presentation_examples():
    f = x1 + 3
    om = TopForm(f, (x1, x2), C2)
    swapped = change_presentation(om, (x2, x1))
    assert swapped.coefficient == -f
    m = Fraction(3, 2)
    om_t = TopForm(t + x, (t, x), TX)
    powered = change_presentation(om_t, (t**m, x))
    assert powered.coefficient == (t + x) / (m * t ** (m - 1))
    back = change_presentation(powered, (t, x))
    assert back.coefficient == om_t.coefficient
    assert back == om_t


def test_valuate_form_examples():
    c3 = gen.context(3)
    blow3 = quasi_monomial_valuation(c3, {v: [1] for v in c3.names})
    assert valuate_form(TopForm.coordinate(c3), blow3) == G([3])
    assert valuate_form(TopForm.coordinate(TX, 1 / t), flag()) == G([0])
    w23 = quasi_monomial_valuation(C2, {"x1": [2], "x2": [3]})
    # frozen oracle: nu(x y) = 2 + 3
    assert valuate_form(TopForm.coordinate(C2), w23) == G([5])


def test_poincare_residue_examples():
    rc = flag().residue_ctx
    xr = RationalFunction.var(rc, "x")
    res = poincare_residue(TopForm.coordinate(TX, 1 / t), flag())
    assert res.coefficient == 1 and res.basis == (xr,)
    # f = (x + t) / (t x): res(f t) = res((x + t) / x) = 1
    res = poincare_residue(TopForm(RationalFunction((x + t).num, (t * x).num), (t, x), TX), flag())
    assert res.coefficient == 1
    with pytest.raises(NonzeroFormValue):
        poincare_residue(TopForm.coordinate(TX), flag())
    blow = quasi_monomial_valuation(C2, {"x1": [1], "x2": [1]})
    with pytest.raises(NonAdaptedWeights):
        poincare_residue(TopForm.coordinate(C2, 1 / (x1 * x2)), blow)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_classical_residue_rule(n):
    # omega = (g / x_n) dx_1 ^ ... ^ dx_n along x_n = 0: residue is res(g) on the hyperplane
    ctx = gen.context(n)
    xs = [RationalFunction.var(ctx, v) for v in ctx.names]
    nu = monomial_valuation(ctx, {ctx.names[-1]: [1]})
    g = (xs[0] + 2 + xs[-1]) / (xs[0] ** 2 + 1)
    res = poincare_residue(TopForm.coordinate(ctx, g / xs[-1]), nu)
    rc = nu.residue_ctx
    r0 = RationalFunction.var(rc, "x1")
    # the canonical presentation puts the parameter first, the classical rule
    # puts it last: moving dx_n to the front costs (-1)^(n-1)
    assert res.coefficient == (-1) ** (n - 1) * (r0 + 2) / (r0**2 + 1)


def test_classical_value_examples():
    dst = VariableContext(["y1", "y2"])
    y1, y2 = RationalFunction.var(dst, "y1"), RationalFunction.var(dst, "y2")
    chart = {"x1": y1, "x2": y1 * y2}
    assert classical_value_via_chart(TopForm.coordinate(C2), chart, "y1") == 1
    # frozen oracle: pullback of (1/x1) dx1 ^ dx2 is (1/y1) * y1 dy1 ^ dy2
    assert classical_value_via_chart(TopForm.coordinate(C2, 1 / x1), chart, "y1") == 0
    ident = {"x1": RationalFunction.var(C2, "x1"), "x2": RationalFunction.var(C2, "x2")}
    assert classical_value_via_chart(TopForm.coordinate(C2, x1), ident, "x1") == 1


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 3))
def test_presentation_invariance(seed, n):
    rng = random.Random(seed)
    ctx = gen.context(n)
    nu = gen.adapted_spec(rng, ctx)
    omega = gen.random_form(rng, ctx)
    basis, _ = gen.adapted_presentation(rng, nu)
    moved = change_presentation(omega, basis)
    assert moved == omega
    assert valuate_form(moved, nu) == valuate_form(omega, nu)
    assert gen.adapted_formula(omega, nu, basis) == valuate_form(omega, nu)


@settings(max_examples=40, deadline=None)
@given(seeds, st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_power_of_parameter_keeps_value(seed, m):
    if m == 0:
        return
    rng = random.Random(seed)
    nu = gen.adapted_spec(rng, TX, k=1)
    omega = gen.random_form(rng, TX)
    tv = RationalFunction.var(TX, nu.basis_vars[0])
    xv = RationalFunction.var(TX, nu.residue_vars[0])
    assert valuate_form(change_presentation(omega, (tv**m, xv)), nu) == valuate_form(omega, nu)
    assert gen.adapted_formula(omega, nu, [tv**m, xv]) == valuate_form(omega, nu)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 3))
def test_residue_well_defined(seed, n):
    rng = random.Random(seed)
    ctx = gen.context(n)
    nu = gen.adapted_spec(rng, ctx, k=rng.randint(1, n - 1))
    omega = gen.value_zero_form(rng, nu)
    assert valuate_form(omega, nu).is_zero()
    canonical = poincare_residue(omega, nu)
    basis, det = gen.adapted_presentation(rng, nu)
    other = poincare_residue(omega, nu, basis)
    ratio = to_coordinate_coefficient(other) / to_coordinate_coefficient(canonical)
    assert ratio.is_constant() and ratio.constant_value() == 1 / det
    basis, _ = gen.adapted_presentation(rng, nu, same_params=True, same_residue_basis=True)
    assert poincare_residue(omega, nu, basis).coefficient == canonical.coefficient


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_offset_law_on_charts(seed):
    rng = random.Random(seed)
    for label, src, weights, chart, exc in gen.charts():
        nu = quasi_monomial_valuation(src, weights)
        omega = gen.random_form(rng, src)
        classical = classical_value_via_chart(omega, chart, exc)
        assert valuate_form(omega, nu) == G([classical + 1]), label


@pytest.mark.parametrize("label, src, weights, chart, exc", gen.charts())
def test_coordinate_form_on_charts(label, src, weights, chart, exc):
    nu = quasi_monomial_valuation(src, weights)
    omega = TopForm.coordinate(src)
    expected = sum(w[0] for w in weights.values())
    assert classical_value_via_chart(omega, chart, exc) == expected - 1
    assert valuate_form(omega, nu) == G([expected])


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_linearity(seed):
    rng = random.Random(seed)
    ctx = gen.context(3)
    nu = gen.adapted_spec(rng, ctx)
    omega = gen.random_form(rng, ctx)
    g = gen.rational_function(rng, ctx, negative=True)
    assert valuate_form(omega.scaled(g), nu) == value(nu, g) + valuate_form(omega, nu)
    other = TopForm(gen.rational_function(rng, ctx, negative=True), omega.basis, ctx)
    s = omega.coefficient + other.coefficient
    if not s.is_zero():
        summed = TopForm(s, omega.basis, ctx)
        assert valuate_form(summed, nu) >= min(valuate_form(omega, nu), valuate_form(other, nu))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=2, max_size=4))
def test_parameter_weight_blowup_sums_weights(ws):
    ctx = gen.context(len(ws))
    nu = quasi_monomial_valuation(ctx, {v: [w] for v, w in zip(ctx.names, ws)})
    expected = total([value(nu, RationalFunction.var(ctx, v)) for v in ctx.names], 1)
    assert valuate_form(TopForm.coordinate(ctx), nu) == expected == G([sum(ws)])
