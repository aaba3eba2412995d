"""Graph-induced concept classes and their exact teaching/VC dimensions."""

from .concepts import (
    ConceptClass,
    Sample,
    disjoint_union,
    is_consistent,
    is_shattered,
    powerset_class,
    read_class,
    restrict,
    sample_of,
    version_space,
    write_class,
)
from .connected import (
    OpponentSet,
    build_con_class,
    con_superset_teacher,
    con_tree_teacher,
    con_triple,
    con_vcd_matching_teacher,
    leaf_tree_condition,
    maximal_opponents,
)
from .dimensions import (
    RtdCertificate,
    rtd,
    rtd_subclass_lower_bound,
    rtd_value,
    sauer_bound,
    sauer_rtd_implication,
    td_max,
    td_min,
    td_of,
    vcd,
)
from .errors import (
    BudgetExceededError,
    ClassFormatError,
    GraphFormatError,
    PreferenceCycleError,
    TeacherPreconditionError,
)
from .graphs import (
    DEFAULT_ENUM_BUDGET,
    MAX_VERTICES,
    Graph,
    Tree,
    closed_neighborhood,
    components,
    connected_set_masks,
    extend_to_spanning_tree,
    graph_from_edges,
    is_connected,
    max_leaf_number,
    max_leaf_number_exhaustive,
    neighborhood_spanning_tree,
    open_neighborhood,
    read_graph,
    spanned_subgraph,
    spanning_trees,
    write_graph,
)
from .stars import (
    VmaxGroup,
    VmaxPartition,
    build_star_class,
    star_special_teacher,
    star_subset_teacher,
    star_triple,
    star_vcd_characterization,
    vmax_partition,
)
from .teaching import (
    PBTeacher,
    PreferenceRelation,
    format_teacher,
    lex_refine,
    plan_to_teacher,
    subset_preferences,
    superset_preferences,
    verify_pb_teacher,
    verify_smgk_teacher,
)

__all__ = [name for name in dir() if not name.startswith("_")]
