"""Log pairs on an affine chart and their discrepancies at monomial places.

The ambient model is affine n-space with reference form
``omega_0 = dx_1 ^ ... ^ dx_n`` (so ``K^{omega_0} = 0``).  A boundary is a
formal Q-combination of principal divisors ``div(h)``; nothing is factored.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import (
    InconsistentSpan,
    NonAdaptedWeights,
    NonpositiveHValue,
    NonzeroBoundaryValue,
    NotLcPlace,
    RankNotOne,
    SingularSystem,
    ZeroFunction,
)
from .forms import TopForm, poincare_residue, to_coordinate_coefficient, valuate_form
from .funfield import Polynomial, RationalFunction, VariableContext
from .ordgroup import GroupElement, as_fraction, include_subgroup, span_rank
from .valuation import (
    ValuationSpec,
    compose,
    coordinates_in_basis,
    divisorial_valuation,
    monomial_valuation,
    residue,
    value,
)


@dataclass(frozen=True)
class Divisor:
    components: tuple[tuple[Fraction, RationalFunction], ...] = ()

    def __init__(self, components: Iterable[tuple[object, RationalFunction | Polynomial]] = ()):
        comps = []
        for c, h in components:
            c = as_fraction(c)
            h = RationalFunction(h) if isinstance(h, Polynomial) else h
            if c == 0:
                raise ValueError("divisor coefficients must be nonzero")
            if h.is_zero():
                raise ZeroFunction("div(0) is undefined")
            comps.append((c, h))
        object.__setattr__(self, "components", tuple(comps))

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(self.components + other.components)

    def __rmul__(self, r) -> "Divisor":
        r = as_fraction(r)
        if r == 0:
            return Divisor()
        return Divisor((r * c, h) for c, h in self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __str__(self) -> str:
        if not self.components:
            return "0"
        return " + ".join(f"{c}*div({h})" for c, h in self.components)


def divisor_value(nu: ValuationSpec, D: Divisor) -> GroupElement:
    acc = GroupElement.zero(nu.dimension)
    for c, h in D.components:
        acc = acc + c * value(nu, h)
    return acc


@dataclass(frozen=True)
class LogPair:
    ctx: VariableContext
    boundary: Divisor = field(default_factory=Divisor)

    def __post_init__(self):
        for _, h in self.boundary.components:
            if h.ctx != self.ctx:
                raise ValueError(f"boundary function {h} does not live in {self.ctx.names}")

    def with_boundary(self, extra: Divisor) -> "LogPair":
        return LogPair(self.ctx, self.boundary + extra)


def log_discrepancy(pair: LogPair, nu: ValuationSpec, omega: TopForm | None = None) -> GroupElement:
    """``nu(omega) - nu(K^omega + D)``; independent of the choice of ``omega``."""
    if omega is None:
        omega = TopForm.coordinate(pair.ctx)
    canonical = value(nu, to_coordinate_coefficient(omega))
    return valuate_form(omega, nu) - canonical - divisor_value(nu, pair.boundary)


def lct(pair: LogPair, H: Divisor, nu: ValuationSpec) -> Fraction:
    """Largest r with a(X, D + rH, nu) >= 0 at a place with one-dimensional value group."""
    if nu.dimension != 1:
        raise RankNotOne(f"value group has dimension {nu.dimension}")
    h = divisor_value(nu, H).coords[0]
    if h <= 0:
        raise NonpositiveHValue(f"nu(H) = {h} is not positive")
    return log_discrepancy(pair, nu).coords[0] / h


@dataclass(frozen=True)
class Decomposition:
    basis_vars: tuple[str, ...]
    coefficients: tuple[Fraction, ...]
    divisorial: tuple[Fraction, ...]
    discrepancy: GroupElement


def decompose_discrepancy(pair: LogPair, nu: ValuationSpec) -> Decomposition:
    """Write a(X,D,nu) = sum n_i nu(t_i) and check n_i = a(X,D,nu_i) for the
    divisorial valuations along the basis coordinates."""
    if not nu.adapted:
        raise NonAdaptedWeights("decomposition needs adapted coordinates")
    a = log_discrepancy(pair, nu)
    try:
        n = coordinates_in_basis(nu, a)
    except SingularSystem as exc:
        raise InconsistentSpan(str(exc)) from exc
    per = []
    for t, ni in zip(nu.basis_vars, n):
        ai = log_discrepancy(pair, divisorial_valuation(pair.ctx, t)).coords[0]
        if ai != ni:
            raise InconsistentSpan(
                f"coefficient of {t} is {ni} but the divisorial discrepancy is {ai}; "
                "boundary is not adapted to the center"
            )
        per.append(ai)
    return Decomposition(nu.basis_vars, tuple(n), tuple(per), a)


@dataclass
class ProbeReport:
    mode: str
    samples: int
    seed: int
    violations: list[tuple[ValuationSpec, GroupElement]]

    @property
    def ok(self) -> bool:
        return not self.violations


def random_adapted_spec(ctx: VariableContext, rng: random.Random, max_num: int = 6, max_den: int = 3) -> ValuationSpec:
    """Random adapted monomial valuation with lex-positive basis weights."""
    n = len(ctx)
    k = rng.randint(1, n)
    basis = rng.sample(list(ctx.names), k)
    while True:
        rows = []
        for _ in range(k):
            row = [Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)) for _ in range(k)]
            row[0] = Fraction(rng.randint(1, max_num), rng.randint(1, max_den))
            rows.append(GroupElement(row))
        if span_rank(rows) == k:
            break
    return monomial_valuation(ctx, dict(zip(basis, rows)), basis=basis)


def _axis_spec(ctx: VariableContext, rng: random.Random) -> ValuationSpec:
    return divisorial_valuation(ctx, rng.choice(ctx.names))


def probe_global(pair: LogPair, mode: str = "klt", samples: int = 100, seed: int = 0) -> ProbeReport:
    """Sample adapted places and collect those where the klt (a > 0) or lc
    (a >= 0) inequality fails.

    Each sample has its own generator derived from (seed, index), so the
    result does not depend on evaluation order.  Every fourth sample is a
    coordinate-hyperplane divisor.
    """
    if mode not in ("klt", "lc"):
        raise ValueError(f"unknown mode {mode!r}")
    zero = GroupElement.zero
    violations = []
    for i in range(samples):
        rng = random.Random(seed * 1_000_003 + i)
        nu = _axis_spec(pair.ctx, rng) if i % 4 == 0 else random_adapted_spec(pair.ctx, rng)
        a = log_discrepancy(pair, nu)
        z = zero(nu.dimension)
        bad = a <= z if mode == "klt" else a < z
        if bad:
            violations.append((nu, a))
    return ProbeReport(mode, samples, seed, violations)


def _basis_coefficients(pair: LogPair, nu: ValuationSpec):
    """Split the boundary into coordinate components ``div(t_i)`` and the rest."""
    lc_part: dict[str, Fraction] = {t: Fraction(0) for t in nu.basis_vars}
    rest = []
    for c, h in pair.boundary.components:
        for t in nu.basis_vars:
            if h == RationalFunction.var(pair.ctx, t):
                lc_part[t] += c
                break
        else:
            rest.append((c, h))
    return lc_part, rest


def different(pair: LogPair, nu: ValuationSpec) -> Divisor:
    """Different of the boundary on the center ``{t = 0}`` of an lc place.

    Uses the reference form ``(1/prod t) dt ^ dx`` which has value zero; its
    residue is ``dx`` on the center.
    """
    if not nu.adapted:
        raise NonAdaptedWeights("the different needs adapted coordinates")
    lc_part, rest = _basis_coefficients(pair, nu)
    for c, h in rest:
        v = value(nu, h)
        if not v.is_zero():
            raise NonzeroBoundaryValue(f"boundary component div({h}) has value {v}")
    a = log_discrepancy(pair, nu)
    if not a.is_zero() or any(c != 1 for c in lc_part.values()):
        raise NotLcPlace(f"a(X,D,nu) = {a}; basis coefficients {dict(lc_part)}")
    ctx = pair.ctx
    t_prod = Polynomial.monomial(ctx, {t: 1 for t in nu.basis_vars})
    omega = TopForm.coordinate(ctx, RationalFunction(Polynomial.one(ctx), t_prod))
    omega_bar = poincare_residue(omega, nu)
    comps = []
    for c, h in rest:
        hb = residue(nu, h)
        if not hb.is_constant():
            comps.append((c, hb))
    kbar = to_coordinate_coefficient(omega_bar)
    if not kbar.is_constant():
        comps.append((Fraction(-1), kbar))
    return Divisor(comps)


@dataclass(frozen=True)
class AdjunctionReport:
    ambient: GroupElement
    center: GroupElement
    center_embedded: GroupElement

    @property
    def equal(self) -> bool:
        return self.ambient == self.center_embedded


def adjunction_identity_check(pair: LogPair, nu: ValuationSpec, mu: ValuationSpec) -> AdjunctionReport:
    """Compare a(X, D, nu o mu) with a(Z, D_Z, mu) embedded in the composed group."""
    delta = different(pair, nu)
    composed = compose(nu, mu)
    ambient = log_discrepancy(pair, composed)
    center_pair = LogPair(nu.residue_ctx, delta)
    center = log_discrepancy(center_pair, mu)
    return AdjunctionReport(ambient, center, include_subgroup(composed.layout, center))
