"""Group frames, symmetric line systems, and spherical codes from finite groups.

The package builds highly symmetric configurations of unit vectors from
finite-group data and verifies their claimed properties:

* :mod:`symframes.permcore` -- permutation groups, conjugacy classes,
  double cosets, subgroup search.
* :mod:`symframes.cyclo` -- exact arithmetic in cyclotomic fields with
  certified floating-point enclosures.
* :mod:`symframes.chartab` -- linear characters and full complex character
  tables of permutation groups.
* :mod:`symframes.frames` -- twisted spherical functions, group-frame Gram
  rows, cross-Gram rows between two frames, line-system summaries.
* :mod:`symframes.codes` -- explicit root-system codes, phased block
  assemblies of several frames into one Gram matrix, kissing-configuration
  certificates, line-system unions, coherence.
* :mod:`symframes.cli` -- command-line surface and reproduction reports for
  the documented worked examples.

All structural claims (entry value sets, angle multisets, maximal inner
products) are decided exactly in cyclotomic arithmetic; positive
semidefiniteness and rank are certified numerically with explicit
tolerances.
"""

from .chartab import (
    Character,
    CharacterTable,
    LinearCharacter,
    character_table,
    linear_characters,
    multiplicity,
    permutation_character,
)
from .codes import (
    BlockSpec,
    CodedGram,
    CoherenceResult,
    E7Shell,
    ExplicitCode,
    FrameBlock,
    GramAssembly,
    KissingReport,
    LineSystemUnion,
    assemble_union,
    build_code_r10,
    build_code_r11,
    build_code_r14,
    coherence,
    construct_d7_scaled,
    construct_e7_shell,
    construct_phi3,
    embed_vectors_from_gram,
    explicit_block,
    frame_block,
    realify,
    resolve_cross_phase,
    union_line_system,
    verify_kissing,
)
from .cyclo import (
    CertifiedComplex,
    Cyclotomic,
    compare_real,
    cyc_sum,
    sqrt_rational,
    sqrt_real,
)
from .errors import (
    ComputationError,
    ExpectationMismatch,
    InputError,
    InvariantViolation,
    SymframesError,
)
from .frames import (
    AngleEntry,
    Cell,
    CrossGramRow,
    GroupGram,
    LineSystemSummary,
    TwistedSphericalRow,
    angle_set,
    convolve_at,
    cross_row,
    evaluate_row,
    exact_modulus,
    frame_representatives,
    gram,
    homogenize,
    isotypic_projection_row,
    line_representatives,
    twisted_spherical,
)
from .permcore import (
    ConjugacyClass,
    ConjugacyClassSet,
    DoubleCoset,
    DoubleCosetDecomposition,
    Permutation,
    PermutationGroup,
    coset_representatives,
    cyclic_subgroup,
    double_cosets,
    find_subgroups,
    subgroup_from_members,
)

__version__ = "0.1.0"

__all__ = [
    "AngleEntry",
    "BlockSpec",
    "Cell",
    "CertifiedComplex",
    "Character",
    "CharacterTable",
    "CodedGram",
    "CoherenceResult",
    "ComputationError",
    "ConjugacyClass",
    "ConjugacyClassSet",
    "CrossGramRow",
    "Cyclotomic",
    "DoubleCoset",
    "DoubleCosetDecomposition",
    "E7Shell",
    "ExpectationMismatch",
    "ExplicitCode",
    "FrameBlock",
    "GramAssembly",
    "GroupGram",
    "InputError",
    "InvariantViolation",
    "KissingReport",
    "LinearCharacter",
    "LineSystemSummary",
    "LineSystemUnion",
    "Permutation",
    "PermutationGroup",
    "SymframesError",
    "TwistedSphericalRow",
    "angle_set",
    "assemble_union",
    "build_code_r10",
    "build_code_r11",
    "build_code_r14",
    "character_table",
    "coherence",
    "compare_real",
    "construct_d7_scaled",
    "construct_e7_shell",
    "construct_phi3",
    "convolve_at",
    "coset_representatives",
    "cross_row",
    "cyc_sum",
    "cyclic_subgroup",
    "double_cosets",
    "embed_vectors_from_gram",
    "evaluate_row",
    "exact_modulus",
    "explicit_block",
    "find_subgroups",
    "frame_block",
    "frame_representatives",
    "gram",
    "homogenize",
    "isotypic_projection_row",
    "line_representatives",
    "linear_characters",
    "multiplicity",
    "permutation_character",
    "realify",
    "resolve_cross_phase",
    "subgroup_from_members",
    "twisted_spherical",
    "union_line_system",
    "verify_kissing",
]
