"""Lattice sums of the two-squares function over binary form values.

Computes the empirical sum of r(L(x)) * r(C(x)) over integer points of a
dilated convex region, assembles the predicted leading constant from exact
local densities (an Euler product over odd primes plus a dyadic factor), and
compares the two.
"""

from .arith import chi, divisors, factorize, in_E, in_E_mod, is_prime, r_two_squares
from .counter import (
    ConvergenceRow,
    SumResult,
    convergence_table,
    eta_reference,
    lattice_points_in,
    sum_S,
)
from .errors import (
    BadPrimeError,
    BudgetExceededError,
    CertificationError,
    InstanceFormatError,
    InstanceInvalidError,
    ScaleLimitError,
)
from .euler import (
    ConstantReport,
    EulerFactor,
    is_good_prime,
    k_2,
    k_p,
    k_p_large,
    predicted_constant,
)
from .forms import (
    BinaryForm,
    BoundaryStats,
    InstanceReport,
    ProblemInstance,
    Region,
    boundary_stats,
    check_positivity,
    ensure_validated,
    eval_form,
    instance_from_dict,
    is_irreducible_cubic,
    load_instance,
    reducibility_witness,
    region_area,
    validate_instance,
)
from .localdens import DensityValue, cubic_roots_mod_p, rho, rho_bruteforce

__version__ = "0.1.0"

__all__ = [
    "BadPrimeError",
    "BinaryForm",
    "BoundaryStats",
    "BudgetExceededError",
    "CertificationError",
    "ConstantReport",
    "ConvergenceRow",
    "DensityValue",
    "EulerFactor",
    "InstanceFormatError",
    "InstanceInvalidError",
    "InstanceReport",
    "ProblemInstance",
    "Region",
    "ScaleLimitError",
    "SumResult",
    "boundary_stats",
    "check_positivity",
    "chi",
    "convergence_table",
    "cubic_roots_mod_p",
    "divisors",
    "ensure_validated",
    "eta_reference",
    "eval_form",
    "factorize",
    "in_E",
    "in_E_mod",
    "instance_from_dict",
    "is_good_prime",
    "is_irreducible_cubic",
    "is_prime",
    "k_2",
    "k_p",
    "k_p_large",
    "lattice_points_in",
    "load_instance",
    "predicted_constant",
    "r_two_squares",
    "reducibility_witness",
    "region_area",
    "rho",
    "rho_bruteforce",
    "sum_S",
    "validate_instance",
]
