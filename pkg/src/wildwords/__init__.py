"""Word calculus for wild fundamental groups at desk scale.

Free-group words over indexed generators, truncated elements of the
inverse limit of free groups with the occurrence-count stabilization test,
the total-collapse kernel scan for the hill quotient, free groups over
decidable equivalence relations with a normal-form decision procedure,
and the tree-gadget geometry whose path components realize a relation.
"""

from .words import (
    EMPTY,
    Letter,
    Word,
    commutator,
    concat,
    free_reduce,
    gen,
    invert,
    multiply_reduced,
    occurrence_count,
    project,
    word,
)
from .earring import (
    TruncatedCoherentSequence,
    commutator_tower,
    embed_word,
    identity_sequence,
    in_image_up_to_depth,
    seq_invert,
    seq_multiply,
    stabilization_report,
    validate_coherent,
)
from .archipelago import (
    BranchPrefix,
    KernelVerdict,
    branch_family,
    collapse_substitute,
    eta_element,
    eta_word_at_level,
    ha_equivalent,
    ker_theta_scan,
    partition_block,
)
from .relcalc import (
    Atom,
    EventualAgreement,
    FinitePartition,
    IdentityRelation,
    SeqPoint,
    XWord,
    e_normal_form,
    e_related,
    embed_point,
    fe_equivalent,
    fx_invert,
    fx_multiply,
    product_view_equal,
    quotient_word,
)
from .becker import (
    FiberAssembly,
    GadgetGeometry,
    TreeDesc,
    assembly_connected,
    build_assembly,
    build_gadget,
    build_realization,
    canonical_point,
    export_json,
    export_svg,
    gadget_components,
    interleave,
    loop_homotopic,
    segment_disjointness_check,
    split,
)
from .parsing import WordExpr, format_word, parse_word

__version__ = "0.1.0"
