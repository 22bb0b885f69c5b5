"""Exact addresses of geometric patterns in the Cantor set {0,1}^N."""
from .compiler import (
    AddressEntry,
    decode_detail,
    decode_representation,
    enumerate_table,
    partition_words,
    represent_arc_point,
    represent_node,
    represent_point,
)
from .errors import (
    CantorError,
    DanglingReference,
    DuplicateArc,
    EmptyCluster,
    EndpointIsNode,
    InvalidInput,
    NoMatch,
    NotAFiber,
    PatternError,
    UnresolvablePath,
)
from .interval import DyadicClass, Kind, binary_value, classify, decode_fiber, fiber_unit_interval
from .oracle import SuiteConfig, TruncatedSpace, check_metric_truncation, check_partition, run_suite
from .pattern import Cluster, Graph, PatternPoint, Point, incidences, parse_pattern, parse_points
from .sequence import (
    ONE,
    ZERO,
    BinSeq,
    ConeRelation,
    Fiber,
    apply_word,
    bit_at,
    canonicalize,
    cmts_value,
    cone_contains,
    cone_diameter,
    cone_relation,
    metric,
)

__version__ = "0.1.0"
