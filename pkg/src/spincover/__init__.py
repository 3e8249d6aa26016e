"""Exact-arithmetic spin double covers of the spatial and spacetime
symmetry groups, with finite double-group tooling.

The exact layer works over Gaussian rationals, so covering-map identities,
kernel statements and multiplication tables are verified by exact equality.
A float backend with a separation audit covers the finite double groups
whose matrix entries are irrational.
"""

from .cover import (
    HALF_TURN_Y,
    IDENTITY2,
    IDENTITY3,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    SPACE_INVERSION,
    OrthogonalMat3,
    UnitaryMat2,
    UnitQuaternion,
    check_exact_sequence,
    covering_map,
    determinant_section,
    extended_covering_map,
    parity_operator,
    quaternion_to_su2,
    rational_unit_quaternion,
    su2_from_zw,
)
from .groups import (
    FiniteGroup,
    IsomorphismWitness,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    double_group,
    double_group_verdict,
    find_isomorphism,
    generate_closure,
    spacetime_pt_group,
    spinor_pt_group,
    verify_isomorphism,
)
from .ptgroup import (
    Event,
    RayPoint,
    SpacetimeSymmetry,
    SpinorSampleField,
    SpinorSymmetry,
    SpinorValue,
    apply_parity,
    apply_parity_time,
    apply_rotation,
    apply_symmetry,
    apply_time_reversal,
    composition_defect,
    from_semidirect,
    pair_spacetime_projection,
    ray_project,
    spacetime_projection,
    time_reversal_operator,
    to_semidirect,
)
from .scalars import GaussianRational, Rational
from .semidirect import (
    SemidirectElement,
    Z2Rep,
    compose,
    from_unitary,
    parity_element,
    project_to_o3,
    to_unitary,
    twist_automorphism,
)

__version__ = "0.1.0"
