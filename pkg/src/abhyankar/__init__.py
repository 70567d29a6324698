"""Exact valuations of rational functions and top differential forms at
monomial-type Abhyankar places, with log discrepancies, log canonical
thresholds, Poincare residues and adjunction."""

from .forms import (
    ResidueForm,
    TopForm,
    change_presentation,
    classical_value_via_chart,
    poincare_residue,
    to_coordinate_coefficient,
    valuate_form,
)
from .funfield import (
    Polynomial,
    RationalFunction,
    VariableContext,
    jacobian_det,
    partial,
    substitute,
)
from .logpair import (
    Divisor,
    LogPair,
    adjunction_identity_check,
    decompose_discrepancy,
    different,
    lct,
    log_discrepancy,
    probe_global,
)
from .ordgroup import CompositionLayout, GroupElement, OrderedGroupSpec, lex_cmp
from .valuation import (
    ValuationSpec,
    compose,
    initial_form,
    invariants_of,
    monomial_valuation,
    quasi_monomial_valuation,
    residue,
    split_value,
    value,
    value_poly,
)

__all__ = [
    "CompositionLayout",
    "Divisor",
    "GroupElement",
    "LogPair",
    "OrderedGroupSpec",
    "Polynomial",
    "RationalFunction",
    "ResidueForm",
    "TopForm",
    "ValuationSpec",
    "VariableContext",
    "adjunction_identity_check",
    "change_presentation",
    "classical_value_via_chart",
    "compose",
    "decompose_discrepancy",
    "different",
    "initial_form",
    "invariants_of",
    "jacobian_det",
    "lct",
    "lex_cmp",
    "log_discrepancy",
    "monomial_valuation",
    "partial",
    "poincare_residue",
    "probe_global",
    "quasi_monomial_valuation",
    "residue",
    "split_value",
    "substitute",
    "to_coordinate_coefficient",
    "valuate_form",
    "value",
    "value_poly",
]

__version__ = "0.1.0"
