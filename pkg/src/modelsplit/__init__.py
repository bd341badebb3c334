"""Factorization of model sets over finite products.

Find the partitions of a coordinate set along which a set of assignments
splits into independent pieces, split propositional theories into
variable-disjoint components, revise model sets by Hamming distance, and
search recodings that make a model set factorable.
"""

from .core import (
    Assignment,
    ModelSet,
    ProductSpace,
    complete_assignment,
    coordinate_values,
    format_model_set,
    parse_model_set,
    project_model_set,
    restrict_assignment,
)
from .errors import (
    EmptyModelSetError,
    ModelSplitError,
    NoCompletionError,
    ParseError,
    PartitionError,
    RecodingError,
    ResourceLimitError,
    RevisionError,
    ScopeError,
)
from .factorize import (
    FactorizationReport,
    compose_join,
    cylinder_extend,
    factorization_bipartitions,
    finest_factorization,
    is_factorization,
    oracle_finest,
)
from .logic import Theory, models_of, parse_formula, parse_theory, split_theory, variables_of
from .partition import Partition, is_refinement, meet, meet_many, parse_partition, restrict_partition
from .recoding import Recoding, apply_recoding, exists_factorable_recoding, recoding_from_definitions
from .revision import RevisionOutcome, hamming_distance, revise

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "EmptyModelSetError",
    "FactorizationReport",
    "ModelSet",
    "ModelSplitError",
    "NoCompletionError",
    "ParseError",
    "Partition",
    "PartitionError",
    "ProductSpace",
    "Recoding",
    "RecodingError",
    "ResourceLimitError",
    "RevisionError",
    "RevisionOutcome",
    "ScopeError",
    "Theory",
    "apply_recoding",
    "complete_assignment",
    "compose_join",
    "coordinate_values",
    "cylinder_extend",
    "exists_factorable_recoding",
    "factorization_bipartitions",
    "finest_factorization",
    "format_model_set",
    "hamming_distance",
    "is_factorization",
    "is_refinement",
    "meet",
    "meet_many",
    "models_of",
    "oracle_finest",
    "parse_formula",
    "parse_model_set",
    "parse_partition",
    "parse_theory",
    "project_model_set",
    "recoding_from_definitions",
    "restrict_assignment",
    "restrict_partition",
    "revise",
    "split_theory",
    "variables_of",
]
