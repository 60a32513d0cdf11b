"""Exact-arithmetic zeta functions of self-maps and the fixed-point counts
of the maps they induce on symmetric powers, subset spaces, tuple spaces and
partition-constrained configuration spaces, with brute-force enumeration
oracles for every closed form."""

from .series import (
    BivariateSeries,
    NotAUnitError,
    NotExpandableError,
    Poly,
    PowerSeries,
    RationalFunction,
    egf_pack,
    egf_unpack,
    exponent_product,
    rat,
    rat_str,
    series_exp_neg_weighted,
)
from .multipoly import MultiPoly
from .dynamics import (
    DoldProfile,
    FiniteSelfMap,
    HorizonError,
    InconsistentInputError,
    LefschetzSequence,
    NotRealizableError,
    cycle_profile,
    divisors,
    dold_from_lefschetz,
    iterate_dold_profile,
    lefschetz_from_dold,
    lefschetz_sequence,
    mobius,
    zeta_of_map,
    zeta_series,
)
from .partitions import (
    NoExcludedPartitionError,
    NotRefinementClosedError,
    PartitionFamily,
    PermutationGroup,
    SetPartition,
    all_partitions,
    minimal_excluded_step,
    orbit_and_stabilizer,
    validate_family,
)
from .oracles import (
    EnumerationLimitError,
    PointedFiniteSet,
    coefficient_traces,
    fixed_bounded_multisets,
    fixed_bounded_tuples,
    fixed_gmap_space,
    fixed_invariant_subsets,
    fixed_partition_orbits,
    induced_bounded_multiset_map,
)
from .identities import (
    DEFAULT_ORDER,
    BoundedSymmetricPower,
    Compose,
    ConstantSphereSmash,
    IdentityFunctor,
    LefschetzPolynomial,
    Smash,
    Wedge,
    bounded_power_polynomial,
    coefficient_identities_check,
    compare_series_with_counts,
    compose_lefschetz,
    configuration_trace_series,
    disjoint_union_combine,
    dold_polynomial_of_functor,
    expression_polynomial,
    general_lefschetz_polynomial,
    gsymm_polynomial,
    integer_lattice_check,
    order_polynomial,
    realize_polynomial,
    rhs_borsuk_ulam,
    rhs_bounded_tuples,
    rhs_symmetric_power,
    symmetric_power_polys,
    verify_identity,
)
from .graded import (
    GradedEndomorphism,
    bareiss_determinant,
    characteristic_rational_function,
    det_one_minus_t,
    graded_zeta,
    koszul_invariant_trace,
    koszul_sign,
    lefschetz_from_graded,
    poincare_generating,
)

__version__ = "0.1.0"
