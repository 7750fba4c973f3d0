"""Weighted zero-sum constants of finite abelian groups.

Exhaustive searches for the Harborth, Erdos-Ginzburg-Ziv, Davenport and eta
constants under weight sets, plus the critical number, extremal sequence
censuses with structural predicates, and closed-form values to check the
searches against.
"""

from zerosum.engine import (
    ConstantKind,
    SearchBudgetExceeded,
    SearchReport,
    compute_constant,
    critical_number,
    davenport,
    egz,
    eta,
    exists_failing_sequence,
    failing_census,
    harborth,
    max_failing_length,
)
from zerosum.formulas import (
    FormulaValue,
    critical_formula,
    davenport_formula,
    egz_formula,
    eta_formula,
    formula_for,
    gw_equals_order_plus_one,
    harborth_formula,
)
from zerosum.groups import (
    Basis2x2n,
    GroupCeilingError,
    GroupElement,
    GroupMismatchError,
    GroupSpec,
    Hom,
    SumSet,
    coset_index_mod_2G,
    doubling_subgroup,
    enumerate_bases_2x2n,
    parse_group,
    sumset,
)
from zerosum.inverse import (
    CharacterizationReport,
    ExtremalCensus,
    HypothesisError,
    TheoremId,
    check_doubled_subsums_full,
    check_theorem_hypotheses,
    enumerate_extremal,
    predicate_c2c4_pm,
    predicate_full_group,
    predicate_pm_general,
    predicate_unweighted_even,
    predicate_unweighted_odd,
    verify_characterization,
)
from zerosum.sequences import (
    LengthSumTable,
    Sequence,
    WeightSet,
    apply_hom,
    enumerate_multisets,
    enumerate_squarefree,
    has_weighted_zero_of_length,
    length_sum_table,
    nonempty_subsums,
    sigma,
    subsums_sigma0,
    weighted_sums,
)

__version__ = "0.1.0"

__all__ = [
    "Basis2x2n",
    "CharacterizationReport",
    "ConstantKind",
    "ExtremalCensus",
    "FormulaValue",
    "GroupCeilingError",
    "GroupElement",
    "GroupMismatchError",
    "GroupSpec",
    "Hom",
    "HypothesisError",
    "LengthSumTable",
    "SearchBudgetExceeded",
    "SearchReport",
    "Sequence",
    "SumSet",
    "TheoremId",
    "WeightSet",
    "apply_hom",
    "check_doubled_subsums_full",
    "check_theorem_hypotheses",
    "compute_constant",
    "coset_index_mod_2G",
    "critical_formula",
    "critical_number",
    "davenport",
    "davenport_formula",
    "doubling_subgroup",
    "egz",
    "egz_formula",
    "enumerate_bases_2x2n",
    "enumerate_extremal",
    "enumerate_multisets",
    "enumerate_squarefree",
    "eta",
    "eta_formula",
    "exists_failing_sequence",
    "failing_census",
    "formula_for",
    "gw_equals_order_plus_one",
    "harborth",
    "harborth_formula",
    "has_weighted_zero_of_length",
    "length_sum_table",
    "max_failing_length",
    "nonempty_subsums",
    "parse_group",
    "predicate_c2c4_pm",
    "predicate_full_group",
    "predicate_pm_general",
    "predicate_unweighted_even",
    "predicate_unweighted_odd",
    "sigma",
    "subsums_sigma0",
    "sumset",
    "verify_characterization",
    "weighted_sums",
    "__version__",
]
