"""Exact combinatorics, bounds, and list-decoding experiments for
rank-metric codes at desk scale."""

from .bounds import (
    BoundReport,
    alpha_exact,
    code_rate,
    gv_alpha_lower,
    gv_barrier,
    hamming_check,
    singleton_barrier,
    singleton_max_log_size,
    theta_threshold,
)
from .codefile import dump_code, dumps_code, load_code, loads_code
from .codes import (
    ExplicitCode,
    GabidulinCode,
    LinearCode,
    enumerate_codewords,
    gabidulin,
    gabidulin_encode,
    min_rank_distance,
    sample_random_code,
    sample_random_linear_code,
)
from .errors import EnumerationCapExceeded, InfeasibleError
from .fields import ExtCtx, FieldCtx, context_from_descriptor, default_context
from .harness import (
    CosetCheckReport,
    CurvePoint,
    EnsembleSpec,
    ProbeRow,
    TrialOutcome,
    TrialReport,
    coset_partition_check,
    emit_barrier_curves,
    run_ensemble,
    threshold_probe,
)
from .listdec import (
    ListReport,
    decoding_radius,
    is_list_decodable,
    list_size_at,
    max_list_size,
    pigeonhole_lower_bound,
    pigeonhole_loose_form,
    radius_from_fraction,
)
from .rankmetric import (
    DEFAULT_ENUM_CAP,
    KqInterval,
    RankVector,
    VolumeResult,
    ball_volume,
    count_rank_u,
    enumerate_ball,
    iter_all_vectors,
    kq_constant,
    matrix_to_vector,
    rank_distance,
    rank_fq,
    rank_of_vector,
    vector_to_matrix,
)
from .rng import make_rng, substream_seed

__version__ = "0.1.0"
