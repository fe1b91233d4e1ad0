"""Random-graph knotting laboratory.

Bitmap graphs, the four random-graph models, certified detectors for
nonplanarity, intrinsic linking, intrinsic knotting and the n-apex
property, and seeded experiments around the complement-bound arguments.
"""

from .bounds import (
    BoundReport,
    InapplicableBound,
    complement_edge_bound,
    exact_tail,
    gilbert_report,
    hoeffding_bound,
    known_bounds,
    model3_chain,
)
from .canon import automorphism_count, canonical_code, is_isomorphic
from .detectors import (
    Status,
    Verdict,
    classify,
    classify_IK,
    classify_IL,
    classify_nonplanar,
    classify_not_n_apex,
    verify,
)
from .enumeration import (
    ENUMERATION_CAP,
    UnsupportedOrder,
    count_unlabelled,
    count_unlabelled_by_size,
    enumerate_unlabelled,
)
from .graph import Graph
from .minors import (
    MinorCertificate,
    check_certificate,
    delta_y_closure,
    has_clique_minor,
    has_minor,
    mader_certifies,
    petersen_family,
)
from .models import ModelSpec, parse_model, sample, unlabelled_estimate, unlabelled_weight
from .planarity import ApexResult, is_n_apex, is_planar
from .stats import wilson_interval

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
