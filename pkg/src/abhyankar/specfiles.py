"""Loaders for valuation spec files and log pair files (YAML documents).

Valuation spec::

    variables: [t, x]
    weights: {t: [1], x: [0]}
    basis: [t]        # optional
    residue: [x]      # optional

or a composition of two other spec files, paths relative to this one::

    compose: [outer.spec, inner.spec]

Without an explicit partition the spec is adapted when its weights allow it
and a quasi-monomial handle otherwise.

Pair file::

    variables: [x, y]
    boundary:
      - {coeff: "1/2", function: "x"}
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import yaml

from .errors import NonAdaptedWeights, SpecFileError
from .expr import parse_function
from .funfield import VariableContext
from .logpair import Divisor, LogPair
from .ordgroup import GroupElement, parse_element
from .valuation import ValuationSpec, compose, monomial_valuation, quasi_monomial_valuation

VALUATION_FIELDS = {"variables", "weights", "basis", "residue", "compose"}
PAIR_FIELDS = {"variables", "boundary"}
BOUNDARY_FIELDS = {"coeff", "function"}


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise SpecFileError(f"{where}: {x!r} is not an exact rational (write it as \"p/q\")")
    try:
        return Fraction(x) if isinstance(x, int) else Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError):
        raise SpecFileError(f"{where}: {x!r} is not a rational") from None


def _load_doc(source: str | Path | dict, allowed: set[str]) -> tuple[dict, Path | None]:
    if isinstance(source, dict):
        doc, base = source, None
    else:
        path = Path(source)
        try:
            doc = yaml.safe_load(path.read_text())
        except OSError as exc:
            raise SpecFileError(f"cannot read {path}: {exc}") from None
        except yaml.YAMLError as exc:
            raise SpecFileError(f"{path}: malformed document: {exc}") from None
        base = path.parent
    if not isinstance(doc, dict):
        raise SpecFileError("document must be a mapping")
    unknown = set(doc) - allowed
    if unknown:
        raise SpecFileError(f"unknown field(s): {', '.join(sorted(map(str, unknown)))}")
    return doc, base


def _variables(doc: dict) -> VariableContext:
    names = doc.get("variables")
    if not isinstance(names, list) or not names or not all(isinstance(n, str) for n in names):
        raise SpecFileError("'variables' must be a non-empty list of names")
    try:
        return VariableContext(names)
    except ValueError as exc:
        raise SpecFileError(str(exc)) from None


def load_valuation(source: str | Path | dict, base: Path | None = None) -> ValuationSpec:
    doc, file_base = _load_doc(source, VALUATION_FIELDS)
    base = file_base or base or Path(".")
    if "compose" in doc:
        extra = set(doc) - {"compose"}
        if extra:
            raise SpecFileError(f"a compose spec cannot also set {', '.join(sorted(extra))}")
        refs = doc["compose"]
        if not isinstance(refs, list) or len(refs) != 2:
            raise SpecFileError("'compose' must be [outer-ref, inner-ref]")
        outer = load_valuation(base / refs[0])
        inner = load_valuation(base / refs[1])
        return compose(outer, inner)
    ctx = _variables(doc)
    raw = doc.get("weights")
    if not isinstance(raw, dict):
        raise SpecFileError("'weights' must map variables to lists of rationals")
    weights: dict[str, GroupElement] = {}
    for name, w in raw.items():
        if name not in ctx:
            raise SpecFileError(f"weight given for undeclared variable {name!r}")
        if isinstance(w, str):
            try:
                weights[name] = parse_element(w)
            except ValueError as exc:
                raise SpecFileError(str(exc)) from None
        elif isinstance(w, list):
            weights[name] = GroupElement(_rational(x, f"weights.{name}") for x in w)
        else:
            weights[name] = GroupElement([_rational(w, f"weights.{name}")])
    basis, residue = doc.get("basis"), doc.get("residue")
    if basis is None and residue is None:
        try:
            return monomial_valuation(ctx, weights)
        except NonAdaptedWeights:
            return quasi_monomial_valuation(ctx, weights)
    return monomial_valuation(ctx, weights, basis=basis, residue=residue)


def load_pair(source: str | Path | dict) -> LogPair:
    doc, _ = _load_doc(source, PAIR_FIELDS)
    ctx = _variables(doc)
    comps = []
    for i, entry in enumerate(doc.get("boundary") or []):
        if not isinstance(entry, dict):
            raise SpecFileError(f"boundary[{i}] must be a mapping")
        unknown = set(entry) - BOUNDARY_FIELDS
        if unknown:
            raise SpecFileError(f"boundary[{i}]: unknown field(s): {', '.join(sorted(unknown))}")
        if "coeff" not in entry or "function" not in entry:
            raise SpecFileError(f"boundary[{i}] needs 'coeff' and 'function'")
        comps.append((_rational(entry["coeff"], f"boundary[{i}].coeff"), parse_function(str(entry["function"]), ctx)))
    return LogPair(ctx, Divisor(comps))


def dump_valuation(nu: ValuationSpec) -> str:
    return yaml.safe_dump(nu.as_mapping(), sort_keys=False, default_flow_style=True).strip()
