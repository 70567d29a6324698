"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` (the lines are printed even
without ``-s``).  Every check is exact rational arithmetic; random inputs come
from fixed seeds so a failure is reproducible.
"""

import random
import time
from fractions import Fraction

import sympy

from abhyankar.forms import (
    TopForm,
    change_presentation,
    classical_value_via_chart,
    poincare_residue,
    to_coordinate_coefficient,
    valuate_form,
)
from abhyankar.funfield import Polynomial, RationalFunction, VariableContext
from abhyankar.genseries import (
    GenSeries,
    SeriesVariableFrame,
    formal_partial,
    series_add,
    series_invert,
    series_mul,
    series_residue,
)
from abhyankar.logpair import (
    Divisor,
    LogPair,
    adjunction_identity_check,
    decompose_discrepancy,
    lct,
    log_discrepancy,
    probe_global,
)
from abhyankar.ordgroup import CompositionLayout, GroupElement, total
from abhyankar.valuation import (
    compose,
    divisorial_valuation,
    quasi_monomial_valuation,
    value,
)

import gen

G = GroupElement


def report(capsys, number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def test_criterion_1_blowup_form_value(capsys):
    results = {}
    ok = True
    for n in (2, 3, 4):
        start = time.perf_counter()
        ctx = gen.context(n)
        nu = quasi_monomial_valuation(ctx, {v: [1] for v in ctx.names})
        got = valuate_form(TopForm.coordinate(ctx), nu)
        elapsed = time.perf_counter() - start
        results[n] = (got, elapsed)
        ok &= got == G([n]) and elapsed < 1
    detail = ", ".join(f"n={n}: {v} in {t:.3f}s" for n, (v, t) in results.items())
    report(capsys, 1, "blow-up handle gives the coordinate form value (n)", ok, detail)


def test_criterion_2_classical_offset(capsys):
    start = time.perf_counter()
    ok = True
    for label, src, weights, chart, exc in gen.charts()[:3]:
        n = len(src)
        ok &= classical_value_via_chart(TopForm.coordinate(src), chart, exc) == n - 1
    rng = random.Random(2)
    checked = 0
    all_charts = gen.charts()
    for label, src, weights, chart, exc in all_charts:
        nu = quasi_monomial_valuation(src, weights)
        for _ in range(34):
            omega = gen.random_form(rng, src)
            ok &= valuate_form(omega, nu) == G([classical_value_via_chart(omega, chart, exc) + 1])
            checked += 1
    elapsed = time.perf_counter() - start
    ok &= checked >= 200 and len(all_charts) >= 3 and elapsed < 30
    report(capsys, 2, "classical chart value n-1 and offset law nu = nu_cl + 1", ok,
           f"{checked} forms on {len(all_charts)} charts in {elapsed:.1f}s")


def test_criterion_3_monomial_basis_sum(capsys):
    rng = random.Random(3)
    ok, checked = True, 0
    while checked < 200:
        n = rng.randint(1, 4)
        ctx = gen.context(n)
        nu = gen.adapted_spec(rng, ctx, positive=False)
        E = [[rng.choice(gen.EXPONENT_CHOICES) for _ in range(n)] for _ in range(n)]
        if sympy.Matrix(E).det() == 0:
            continue
        z = tuple(
            RationalFunction(Polynomial.monomial(ctx, dict(zip(ctx.names, row)), gen.frac(rng, nonzero=True)))
            for row in E
        )
        expected = total([value(nu, zj) for zj in z], nu.dimension)
        ok &= valuate_form(TopForm(RationalFunction.constant(ctx, 1), z, ctx), nu) == expected
        checked += 1
    report(capsys, 3, "monomial basis: form value equals the sum of the basis values", ok,
           f"{checked} configurations, n <= 4")


def test_criterion_4_presentation_independence(capsys):
    rng = random.Random(4)
    ok, checked = True, 0
    for _ in range(500):
        n = rng.randint(2, 3)
        ctx = gen.context(n)
        nu = gen.adapted_spec(rng, ctx)
        omega = gen.random_form(rng, ctx)
        basis, _ = gen.adapted_presentation(rng, nu)
        moved = change_presentation(omega, basis)
        base = valuate_form(omega, nu)
        # same form, same value; second route through the adapted-coordinate formula
        ok &= moved == omega and valuate_form(moved, nu) == base
        ok &= gen.adapted_formula(omega, nu, basis) == base
        checked += 1
    report(capsys, 4, "form value is independent of the presentation", ok,
           f"{checked} triples with monomial and unit-triangular changes")


def test_criterion_5_residue_well_defined(capsys):
    rng = random.Random(5)
    ok, checked, nontrivial = True, 0, 0
    for _ in range(100):
        n = rng.randint(2, 3)
        ctx = gen.context(n)
        nu = gen.adapted_spec(rng, ctx, k=rng.randint(1, n - 1))
        omega = gen.value_zero_form(rng, nu)
        ok &= valuate_form(omega, nu).is_zero()
        canonical = poincare_residue(omega, nu)
        basis, det = gen.adapted_presentation(rng, nu)
        ratio = to_coordinate_coefficient(poincare_residue(omega, nu, basis)) / to_coordinate_coefficient(canonical)
        ok &= ratio.is_constant() and ratio.constant_value() == 1 / det
        # shared residue basis: exact agreement (the parameter change has det E = 1)
        basis, det = gen.adapted_presentation(rng, nu, same_residue_basis=True, det_one=True)
        ok &= det == 1 and poincare_residue(omega, nu, basis).coefficient == canonical.coefficient
        nontrivial += any(b != RationalFunction.var(ctx, s) for b, s in zip(basis, nu.basis_vars))
        basis, _ = gen.adapted_presentation(rng, nu, same_params=True, same_residue_basis=True)
        ok &= poincare_residue(omega, nu, basis).coefficient == canonical.coefficient
        checked += 1
    report(capsys, 5, "residues of two presentations differ by a rational constant; exact with shared residue basis",
           ok, f"{checked} value-0 forms, {nontrivial} of them also with changed parameters of det E = 1")


def test_criterion_6_series_laws(capsys):
    rng = random.Random(6)
    leibniz = commute = prefixes = 0
    ok = True
    for _ in range(500):
        d = rng.randint(1, 3)
        s, t = gen.random_series(rng, d), gen.random_series(rng, d)
        fr = SeriesVariableFrame.standard(d)
        for i in range(d):
            lhs = formal_partial(series_mul(s, t), fr, i)
            rhs = series_add(series_mul(s, formal_partial(t, fr, i)), series_mul(t, formal_partial(s, fr, i)))
            ok &= lhs == rhs
        leibniz += 1
    for _ in range(500):
        d1, d2 = rng.randint(1, 2), rng.randint(1, 2)
        lay = CompositionLayout(d1, d2)
        s = gen.random_series(rng, d1 + d2)
        s = GenSeries(s.group, tuple((k, c) for k, c in s.terms if k[:d1] >= (0,) * d1))
        full, back = SeriesVariableFrame.standard(d1 + d2), SeriesVariableFrame.standard(d2)
        for i in range(d2):
            ok &= series_residue(formal_partial(s, full, d1 + i), lay) == formal_partial(series_residue(s, lay), back, i)
        commute += 1
    for _ in range(200):
        s = gen.random_series(rng, rng.randint(1, 3), terms=3)
        r = series_invert(s, max_terms=rng.randint(1, 8))
        try:
            gen.check_invert_prefixes(s, r)
        except AssertionError:
            ok = False
        prefixes += len(r.terms) + 1
    report(capsys, 6, "Leibniz rule, partials commute with residue, inversion prefixes exact", ok,
           f"{leibniz} Leibniz, {commute} residue, {prefixes} prefixes")


def cusp_lct_oracle(max_weight=6):
    """Brute force over weights (a, b): min of (a + b) / min(2a, 3b)."""
    return min(Fraction(a + b, min(2 * a, 3 * b)) for a in range(1, max_weight + 1)
               for b in range(1, max_weight + 1))


def test_criterion_7_discrepancy_values(capsys):
    xy = VariableContext(["x", "y"])
    x, y = RationalFunction.var(xy, "x"), RationalFunction.var(xy, "y")
    blow = quasi_monomial_valuation(xy, {"x": [1], "y": [1]})
    a_blow = log_discrepancy(LogPair(xy), blow)
    w23 = quasi_monomial_valuation(xy, {"x": [2], "y": [3]})
    a_w23 = log_discrepancy(LogPair(xy, Divisor([("1/2", x)])), w23)
    w32 = quasi_monomial_valuation(xy, {"x": [3], "y": [2]})
    c = lct(LogPair(xy), Divisor([(1, x**2 + y**3)]), w32)
    # frozen hand values: 1 + 1 = 2 and 2 + 3 - (1/2) * 2 = 4; the lct against brute force
    oracle = cusp_lct_oracle()
    ok = a_blow == G([2]) and a_w23 == G([4]) and c == Fraction(5, 6) == oracle
    report(capsys, 7, "log discrepancies 2 and 4, lct 5/6 of the cusp", ok,
           f"a = {a_blow}, {a_w23}; lct = {c}, oracle {oracle}")


def test_criterion_8_decomposition_and_adjunction(capsys):
    rng = random.Random(8)
    ok, decomposed, adj = True, 0, 0
    for _ in range(200):
        n = rng.randint(1, 4)
        ctx = gen.context(n)
        nu = gen.adapted_spec(rng, ctx, positive=False)
        pair = gen.snc_pair(rng, nu)
        dec = decompose_discrepancy(pair, nu)
        recon = sum((c * nu.weight(s) for s, c in zip(dec.basis_vars, dec.coefficients)), G.zero(nu.dimension))
        ok &= recon == log_discrepancy(pair, nu)
        for s, c in zip(dec.basis_vars, dec.coefficients):
            ok &= c == log_discrepancy(pair, divisorial_valuation(ctx, s)).coords[0]
        decomposed += 1
    for _ in range(100):
        n = rng.randint(2, 4)
        ctx = gen.context(n)
        nu = gen.adapted_spec(rng, ctx, k=rng.randint(1, n - 1))
        pair = gen.snc_pair(rng, nu, lc_basis=True)
        mu = gen.adapted_spec(rng, nu.residue_ctx, positive=False)
        rep = adjunction_identity_check(pair, nu, mu)
        comp = compose(nu, mu)
        direct = sum(comp.weights, G.zero(comp.dimension))
        for coeff, h in pair.boundary.components:
            direct = direct - coeff * value(comp, h)
        ok &= rep.equal and rep.ambient == direct
        adj += 1
    report(capsys, 8, "discrepancy decomposition and adjunction identity", ok,
           f"{decomposed} decompositions, {adj} adjunction instances")


def klt_snc_pair(rng, n):
    ctx = gen.context(n)
    comps = []
    for v in ctx.names:
        c = Fraction(rng.randint(-6, 5), 6)
        if c:
            comps.append((c, RationalFunction.var(ctx, v)))
    # a component missing the origin does not affect places centered there
    comps.append((gen.frac(rng, nonzero=True), RationalFunction.var(ctx, ctx.names[0]) + 1))
    return ctx, comps


def test_criterion_9_probe(capsys):
    rng = random.Random(9)
    ok = True
    clean_pairs = 0
    for n in (1, 2, 3, 4):
        ctx, comps = klt_snc_pair(rng, n)
        ok &= probe_global(LogPair(ctx, Divisor(comps)), "klt", 1000, seed=n).ok
        clean_pairs += 1
    ctx, comps = klt_snc_pair(rng, 3)
    planted = ctx.names[1]
    comps = [(c, h) for c, h in comps if h != RationalFunction.var(ctx, planted)]
    comps.append((Fraction(3, 2), RationalFunction.var(ctx, planted)))
    pair = LogPair(ctx, Divisor(comps))
    rep = probe_global(pair, "klt", 1000, seed=0)
    axis = divisorial_valuation(ctx, planted)
    axis_hits = [nu for nu, _ in rep.violations if nu.basis_vars == (planted,) and nu.weights == axis.weights]
    ok &= bool(axis_hits) and log_discrepancy(pair, axis) == G([Fraction(-1, 2)])
    report(capsys, 9, "klt probe: no violations below 1, planted coefficient caught on its axis", ok,
           f"{clean_pairs} clean pairs x 1000 samples; planted pair: {len(rep.violations)} violations, "
           f"{len(axis_hits)} on the planted axis")
