"""Exact counting of Birch and Tverberg partitions."""
from .birch import BirchReport, check_pair_lemma, count_birch, valid_blocks
from .configs import (
    GeneratorSpec,
    gen_line_balanced,
    gen_random,
    gen_sierksma_birch,
    gen_sierksma_tverberg,
    read_configuration,
    write_configuration,
)
from .errors import *  # noqa: F401,F403
from .kernel import (
    Configuration,
    Rational,
    Sign,
    cone_contains,
    is_general_position,
    linear_feasible,
    orientation,
    simplex_contains_origin,
)
from .partitions import Partition
from .tverberg import (
    TverbergReport,
    TypeI,
    TypeII,
    classify,
    count_tverberg,
    hulls_have_common_point,
    topological_lower_bound,
    tverberg_lower_bound,
)

__version__ = "0.1.0"
