"""Homotopy types of the posets of p-subgroups and p-tori of a finite group,
treated as finite topological spaces."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import (
    DegreeMismatch,
    DimensionOutOfRange,
    EmptyComplex,
    EmptyFamily,
    EmptyPoset,
    MissingAction,
    NeitherAtomicNorCoatomic,
    NotReducedLattice,
    OrderLimitExceeded,
    ParseError,
    PrimeDoesNotDivide,
    PsubtopError,
    RowTimeout,
    SizeLimitExceeded,
)
from .perms import Perm, cycle_text, parse_cycle_text
from .groups import (
    Group,
    Subgroup,
    center,
    centralizer,
    closure,
    element_order,
    fitting,
    group_from_table,
    normalizer,
    o_p,
    omega1,
    sylow_subgroups,
)
from .plattice import (
    PSubgroupFamily,
    ToriIntersectionFamily,
    ap_poset,
    build_poset,
    enumerate_p_subgroups,
    enumerate_p_tori,
    maximal_tori,
    mn_family,
    sp_poset,
    step_predicate,
    tori_all_conjugate,
    tori_intersections,
    ultim_check,
)
from .finposet import (
    Poset,
    RemovalTrace,
    core,
    euler_char,
    hasse_dot,
    height,
    i_op,
    invariant_core,
    is_atomic,
    is_coatomic,
    is_down_beat,
    is_reduced_lattice,
    is_up_beat,
    min_changes_oracle,
    order_complex,
    poset_iso,
    s_op,
    same_homotopy_type,
    steps_to_contract,
    xn_sequence,
)
from .homol import (
    HomologySummary,
    SimplicialComplex,
    boundary_matrix,
    reduced_homology,
    smith_normal_form,
)
from .groupfile import format_group_file, load_group_file, load_group_text, parse_group_file
from .analysis import (
    HomotopyReport,
    analyze_file,
    analyze_group,
    batch,
    export_dot,
    filter_propA,
    filter_propB,
)

__version__ = "0.1.0"
