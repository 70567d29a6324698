"""Sparse exact polynomials and rational functions over Q.

Exponents are rationals, so a :class:`Polynomial` is really a Laurent-Puiseux
polynomial: ``x^(1/2)`` and ``x^(-1)`` are ordinary monomials.  Monomials are
exponent tuples aligned with the owning :class:`VariableContext`.

Rational functions are kept as (numerator, denominator) pairs without gcd
reduction; equality is decided by cross-multiplication.  The only
normalization applied is cheap: a common monomial factor is cancelled and a
single-term denominator is folded into the numerator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import (
    ContextMismatch,
    FractionalExponentOnNonMonomial,
    MissingImage,
    SizeMismatch,
    ZeroDivision,
)
from .ordgroup import as_fraction

Monomial = tuple[int | Fraction, ...]


@dataclass(frozen=True)
class VariableContext:
    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ContextMismatch(f"variable {name!r} not in context {self.names}") from None

    def sub(self, names: Iterable[str]) -> "VariableContext":
        names = tuple(names)
        for n in names:
            self.index(n)
        return VariableContext(names)

    def zero_monomial(self) -> Monomial:
        return (0,) * len(self.names)


def _exp(q) -> int | Fraction:
    # integral exponents are kept as ints: they hash and add much faster, and
    # compare and hash equal to the corresponding Fraction
    q = as_fraction(q)
    return q.numerator if q.denominator == 1 else q


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _mono_min(monos: Iterable[Monomial]) -> Monomial:
    return tuple(map(min, zip(*monos)))


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    x = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k + 1)
    # Newton refinement for large inputs
    for _ in range(200):
        if x <= 0:
            x = 1
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if abs(y - x) <= 1:
            break
        x = y
    for cand in (x - 1, x, x + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def rational_power(c: Fraction, e: Fraction) -> Fraction:
    """``c ** e`` when it is rational; raises FractionalExponentOnNonMonomial otherwise."""
    c, e = as_fraction(c), as_fraction(e)
    if e.denominator == 1:
        if c == 0 and e < 0:
            raise ZeroDivision("zero raised to a negative power")
        return c ** int(e)
    if c == 0:
        if e < 0:
            raise ZeroDivision("zero raised to a negative power")
        return Fraction(0)
    r, s = e.numerator, e.denominator
    sign = 1
    if c < 0:
        if s % 2 == 0:
            raise FractionalExponentOnNonMonomial(f"even root of negative coefficient {c}")
        sign = -1
    p, q = _iroot(abs(c.numerator), s), _iroot(c.denominator, s)
    if p is None or q is None:
        raise FractionalExponentOnNonMonomial(f"coefficient {c} has no rational {s}-th root")
    return (Fraction(sign * p, q)) ** r


class Polynomial:
    """Finite sum of ``coefficient * x^exponents`` with nonzero rational coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VariableContext, terms: Mapping[Monomial, Fraction] | None = None):
        self.ctx = ctx
        clean: dict[Monomial, Fraction] = {}
        n = len(ctx)
        for mono, c in (terms or {}).items():
            c = as_fraction(c)
            if c == 0:
                continue
            if len(mono) != n:
                raise ContextMismatch(f"monomial {mono} does not match context {ctx.names}")
            mono = tuple(_exp(x) for x in mono)
            clean[mono] = clean.get(mono, Fraction(0)) + c
            if clean[mono] == 0:
                del clean[mono]
        self.terms = clean

    @classmethod
    def _raw(cls, ctx: VariableContext, terms: dict[Monomial, Fraction]) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        return p

    # constructors
    @classmethod
    def zero(cls, ctx: VariableContext) -> "Polynomial":
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx: VariableContext, c) -> "Polynomial":
        c = as_fraction(c)
        return cls._raw(ctx, {ctx.zero_monomial(): c} if c else {})

    @classmethod
    def one(cls, ctx: VariableContext) -> "Polynomial":
        return cls.constant(ctx, 1)

    @classmethod
    def var(cls, ctx: VariableContext, name: str, exponent=1) -> "Polynomial":
        i = ctx.index(name)
        mono = tuple(_exp(exponent) if j == i else 0 for j in range(len(ctx)))
        return cls._raw(ctx, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, ctx: VariableContext, exponents: Mapping[str, object], coeff=1) -> "Polynomial":
        mono = [0] * len(ctx)
        for name, e in exponents.items():
            mono[ctx.index(name)] = _exp(e)
        return cls(ctx, {tuple(mono): coeff})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def exponents_in(self, name: str) -> list[Fraction]:
        i = self.ctx.index(name)
        return [m[i] for m in self.terms]

    def _check(self, other: "Polynomial") -> None:
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch(f"contexts {self.ctx.names} and {other.ctx.names} differ")

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ctx, other)
        return poly_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ctx, other)
        return poly_add(self, poly_neg(other))

    def __rsub__(self, other):
        return Polynomial.constant(self.ctx, other) - self

    def __neg__(self):
        return poly_neg(self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            if c == 0:
                return Polynomial.zero(self.ctx)
            return Polynomial._raw(self.ctx, {m: v * c for m, v in self.terms.items()})
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e):
        return poly_pow(self, e)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    out = dict(p.terms)
    for m, c in q.terms.items():
        v = out.get(m)
        if v is None:
            out[m] = c
        else:
            v += c
            if v:
                out[m] = v
            else:
                del out[m]
    return Polynomial._raw(p.ctx, out)


def poly_neg(p: Polynomial) -> Polynomial:
    return Polynomial._raw(p.ctx, {m: -c for m, c in p.terms.items()})


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = _mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Polynomial._raw(p.ctx, out)


def poly_pow(p: Polynomial, e) -> Polynomial:
    """Integer powers of any polynomial; rational or negative powers of monomials."""
    e = as_fraction(e)
    if p.is_monomial():
        (mono, c), = p.terms.items()
        return Polynomial._raw(p.ctx, {tuple(_exp(x * e) for x in mono): rational_power(c, e)})
    if e.denominator != 1:
        raise FractionalExponentOnNonMonomial(f"cannot raise non-monomial {p} to the power {e}")
    if e < 0:
        if p.is_zero():
            raise ZeroDivision("zero polynomial raised to a negative power")
        raise ValueError("negative power of a non-monomial is not a polynomial; use RationalFunction")
    n = int(e)
    result = Polynomial.one(p.ctx)
    base = p
    while n:
        if n & 1:
            result = poly_mul(result, base)
        n >>= 1
        if n:
            base = poly_mul(base, base)
    return result


def poly_partial(p: Polynomial, name: str) -> Polynomial:
    i = p.ctx.index(name)
    out: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        e = m[i]
        if e == 0:
            continue
        dm = m[:i] + (e - 1,) + m[i + 1:]
        out[dm] = out.get(dm, 0) + c * e
    return Polynomial._raw(p.ctx, {m: c for m, c in out.items() if c})


def _monomial_content(polys: Sequence[Polynomial]) -> Monomial | None:
    monos = [m for p in polys for m in p.terms]
    return _mono_min(monos) if monos else None


def _shift(p: Polynomial, mono: Monomial, coeff: Fraction = Fraction(1)) -> Polynomial:
    """Multiply by ``coeff * x^mono``."""
    return Polynomial._raw(p.ctx, {_mono_mul(m, mono): c * coeff for m, c in p.terms.items()})


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.one(num.ctx)
        num._check(den)
        if den.is_zero():
            raise ZeroDivision("zero denominator")
        if den.is_monomial():
            (mono, c), = den.terms.items()
            num = _shift(num, tuple(-x for x in mono), 1 / c)
            den = Polynomial.one(num.ctx)
        elif not num.is_zero():
            content = _monomial_content([num, den])
            if any(content):
                inv = tuple(-x for x in content)
                num, den = _shift(num, inv), _shift(den, inv)
            lead = den.sorted_terms()[0][1]
            if lead != 1:
                num, den = num * (1 / lead), den * (1 / lead)
        if num.is_zero():
            den = Polynomial.one(num.ctx)
        self.num = num
        self.den = den

    @property
    def ctx(self) -> VariableContext:
        return self.num.ctx

    @classmethod
    def from_poly(cls, p: Polynomial) -> "RationalFunction":
        return cls(p)

    @classmethod
    def constant(cls, ctx: VariableContext, c) -> "RationalFunction":
        return cls(Polynomial.constant(ctx, c))

    @classmethod
    def var(cls, ctx: VariableContext, name: str) -> "RationalFunction":
        return cls(Polynomial.var(ctx, name))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        # den is normalized to monic-leading; constant iff num is a multiple of den
        if self.num.is_zero():
            return True
        if self.den.is_constant():
            return self.num.is_constant()
        lead_m, lead_c = self.den.sorted_terms()[0]
        c = self.num.terms.get(lead_m)
        return c is not None and self.num == self.den * (c / lead_c)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return Fraction(0)
        lead_m, lead_c = self.den.sorted_terms()[0]
        return self.num.terms[lead_m] / lead_c

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"contexts {self.ctx.names} and {other.ctx.names} differ")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction.constant(self.ctx, other)

    def __add__(self, other):
        return rf_add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return rf_add(self, rf_neg(self._coerce(other)))

    def __rsub__(self, other):
        return rf_add(self._coerce(other), rf_neg(self))

    def __neg__(self):
        return rf_neg(self)

    def __mul__(self, other):
        return rf_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return rf_div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return rf_div(self._coerce(other), self)

    def __pow__(self, e):
        return rf_pow(self, e)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Polynomial)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if other.ctx != self.ctx:
            return False
        if self.den == other.den:
            return self.num == other.num
        return poly_mul(self.num, other.den) == poly_mul(other.num, self.den)

    __hash__ = None

    def __str__(self) -> str:
        return format_rational_function(self)

    def __repr__(self) -> str:
        return f"RationalFunction({format_rational_function(self)!r})"


def rf_add(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    if f.den == g.den:
        return RationalFunction(poly_add(f.num, g.num), f.den)
    return RationalFunction(
        poly_add(poly_mul(f.num, g.den), poly_mul(g.num, f.den)), poly_mul(f.den, g.den)
    )


def rf_neg(f: RationalFunction) -> RationalFunction:
    return RationalFunction(poly_neg(f.num), f.den)


def rf_mul(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    if f.den == g.num and not g.num.is_zero():
        return RationalFunction(f.num, g.den)
    if g.den == f.num and not f.num.is_zero():
        return RationalFunction(g.num, f.den)
    return RationalFunction(poly_mul(f.num, g.num), poly_mul(f.den, g.den))


def rf_inv(f: RationalFunction) -> RationalFunction:
    if f.is_zero():
        raise ZeroDivision("inverse of the zero function")
    return RationalFunction(f.den, f.num)


def rf_div(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    return rf_mul(f, rf_inv(g))


def rf_pow(f: RationalFunction, e) -> RationalFunction:
    e = as_fraction(e)
    if e.denominator != 1:
        if not (f.num.is_monomial() and f.den.is_constant()):
            raise FractionalExponentOnNonMonomial(f"cannot raise {f} to the power {e}")
        return RationalFunction(poly_pow(f.num * (1 / f.den.constant_value()), e))
    if e < 0:
        return rf_pow(rf_inv(f), -e)
    return RationalFunction(poly_pow(f.num, e), poly_pow(f.den, e))


def partial(f: RationalFunction, name: str) -> RationalFunction:
    """Exact partial derivative; ``d(x^q)/dx = q x^(q-1)`` term-wise, quotient rule on fractions."""
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    dn = poly_partial(f.num, name)
    if f.den.is_constant():
        return RationalFunction(dn, f.den)
    dd = poly_partial(f.den, name)
    return RationalFunction(
        poly_add(poly_mul(dn, f.den), poly_neg(poly_mul(f.num, dd))), poly_mul(f.den, f.den)
    )


def _poly_det(matrix: list[list[Polynomial]], ctx: VariableContext) -> Polynomial:
    """Cofactor expansion along rows, memoized on the set of used columns."""
    n = len(matrix)
    memo: dict[tuple[int, frozenset], Polynomial] = {}

    def minor(row: int, cols: frozenset) -> Polynomial:
        if row == n:
            return Polynomial.one(ctx)
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = Polynomial.zero(ctx)
        free = [c for c in range(n) if c not in cols]
        for pos, c in enumerate(free):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            term = poly_mul(entry, minor(row + 1, cols | {c}))
            acc = poly_add(acc, term if pos % 2 == 0 else poly_neg(term))
        memo[key] = acc
        return acc

    return minor(0, frozenset())


def jacobian_det(fs: Sequence[RationalFunction], ctx: VariableContext) -> RationalFunction:
    """Determinant of ``(d f_i / d x_j)`` for the variables ``x_j`` of ``ctx``."""
    if len(fs) != len(ctx):
        raise SizeMismatch(f"{len(fs)} functions for {len(ctx)} variables")
    fs = [RationalFunction(f) if isinstance(f, Polynomial) else f for f in fs]
    for f in fs:
        if f.ctx != ctx:
            raise ContextMismatch(f"function context {f.ctx.names} differs from {ctx.names}")
    # row i shares the denominator den_i^2
    rows: list[list[Polynomial]] = []
    den = Polynomial.one(ctx)
    for f in fs:
        if f.den.is_constant():
            rows.append([poly_partial(f.num, v) for v in ctx])
            den = poly_mul(den, f.den)
        else:
            rows.append([
                poly_add(poly_mul(poly_partial(f.num, v), f.den), poly_neg(poly_mul(f.num, poly_partial(f.den, v))))
                for v in ctx
            ])
            den = poly_mul(den, poly_mul(f.den, f.den))
    return RationalFunction(_poly_det(rows, ctx), den)


def substitute(
    f: RationalFunction | Polynomial,
    images: Mapping[str, RationalFunction | Polynomial],
    ctx: VariableContext | None = None,
) -> RationalFunction:
    """Simultaneously replace each variable of ``f`` by its image.

    A variable carrying a non-integral exponent may only be sent to a single
    monomial (with a coefficient that has the needed rational root).
    """
    imgs = {k: RationalFunction(v) if isinstance(v, Polynomial) else v for k, v in images.items()}
    if ctx is None:
        if not imgs:
            raise MissingImage("no images given and no target context")
        ctx = next(iter(imgs.values())).ctx
    for v in imgs.values():
        if v.ctx != ctx:
            raise ContextMismatch(f"image context {v.ctx.names} differs from {ctx.names}")
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    num, num_den = _subst_poly(f.num, imgs, ctx)
    den, den_den = _subst_poly(f.den, imgs, ctx)
    if den.is_zero():
        raise ZeroDivision("denominator vanishes after substitution")
    return RationalFunction(poly_mul(num, den_den), poly_mul(den, num_den))


def _subst_poly(p: Polynomial, imgs: Mapping[str, RationalFunction], ctx: VariableContext):
    """Return (N, L) with ``p(images) == N / L``, both polynomials."""
    used = [j for j in range(len(p.ctx)) if any(m[j] != 0 for m in p.terms)]
    mono_img: dict[int, Polynomial] = {}
    gen_img: dict[int, tuple[Polynomial, Polynomial]] = {}
    for j in used:
        name = p.ctx.names[j]
        if name not in imgs:
            raise MissingImage(f"no image for variable {name!r}")
        g = imgs[name]
        if g.is_zero() and any(m[j] < 0 for m in p.terms):
            raise ZeroDivision(f"variable {name!r} with negative exponent sent to zero")
        if g.num.is_monomial() and g.den.is_constant():
            mono_img[j] = g.num * (1 / g.den.constant_value())
        else:
            if any(m[j].denominator != 1 for m in p.terms):
                raise FractionalExponentOnNonMonomial(
                    f"variable {name!r} has a fractional exponent but its image {g} is not a monomial"
                )
            gen_img[j] = (g.num, g.den)

    pos = {j: max(0, max(int(m[j]) for m in p.terms)) for j in gen_img}
    negs = {j: max(0, -min(int(m[j]) for m in p.terms)) for j in gen_img}
    cache: dict[tuple[int, int, str], Polynomial] = {}

    def power(j: int, e: int, which: str) -> Polynomial:
        key = (j, e, which)
        if key not in cache:
            a, b = gen_img[j]
            cache[key] = poly_pow(a if which == "a" else b, e)
        return cache[key]

    common = Polynomial.one(ctx)
    for j in gen_img:
        common = poly_mul(common, poly_mul(power(j, pos[j], "b"), power(j, negs[j], "a")))

    acc = Polynomial.zero(ctx)
    for m, c in p.terms.items():
        term = Polynomial.constant(ctx, c)
        for j, img in mono_img.items():
            if m[j] != 0:
                term = poly_mul(term, poly_pow(img, m[j]))
        for j in gen_img:
            e = int(m[j])
            term = poly_mul(term, poly_mul(power(j, e + negs[j], "a"), power(j, pos[j] - e, "b")))
        acc = poly_add(acc, term)
    return acc, common


# -- printing -------------------------------------------------------------------

def _format_exp(e: Fraction) -> str:
    if e.denominator == 1 and e > 0:
        return str(e.numerator)
    return f"({e})"


def format_monomial(ctx: VariableContext, mono: Monomial) -> str:
    parts = []
    for name, e in zip(ctx.names, mono):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{_format_exp(e)}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (mono, c) in enumerate(p.sorted_terms()):
        body = format_monomial(p.ctx, mono)
        mag = abs(c)
        if body:
            text = body if mag == 1 else f"{mag}*{body}"
        else:
            text = str(mag)
        if i == 0:
            out.append(f"-{text}" if c < 0 else text)
        else:
            out.append(f" - {text}" if c < 0 else f" + {text}")
    return "".join(out)


def format_rational_function(f: RationalFunction) -> str:
    num = format_polynomial(f.num)
    if f.den.is_constant() and f.den.constant_value() == 1:
        return num
    return f"({num})/({format_polynomial(f.den)})"


def product(items: Iterable[RationalFunction], ctx: VariableContext) -> RationalFunction:
    return reduce(rf_mul, items, RationalFunction.constant(ctx, 1))
