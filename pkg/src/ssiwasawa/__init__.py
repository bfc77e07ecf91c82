"""Exact tools for supersingular elliptic curves over Z_p-extensions.

* the local points module E(K)^(p) over Z[Gal(K/Q_p)] for finite abelian K/Q_p,
  built from generators and norm relations and analyzed by Smith normal form;
* closed-form growth laws for Sha and Mordell-Weil ranks along the tower.
"""

from .abelian import (
    FiniteAbelianGroup,
    Subgroup,
    all_subgroups,
    cosets,
    make_group,
    quotient,
    subgroup_generated,
)
from .errors import ConstraintError, InputError
from .growth import (
    GrowthParams,
    consistency_check,
    rank_corank_diff,
    sha_diff_ramified,
    sha_diff_stable,
    sha_exponent,
    sha_table,
    validate_constraints,
)
from .local_module import (
    GroupRingElement,
    ModuleInvariants,
    ModulePresentation,
    analyze_module,
    build_presentation,
    flatten,
    norm_element,
)
from .smith import BACKEND, SmithDecomposition, cokernel_invariants, smith_normal_form
from .tower import FieldSpec, Tower, build_tower, layer_degree, units_group

__version__ = "0.1.0"
