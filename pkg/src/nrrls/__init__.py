"""Deterministic online class-rebalanced least-squares classification.

The online learner replays each class-weight change exactly against all
previously seen samples in constant per-sample time, so its coefficients
match the batch weighted solve at every step. The package also ships the
batch references, min-max/polynomial feature tooling, dataset loaders,
cross-validation and timing harnesses, and a benchmark CLI.
"""

from .errors import (
    DimensionMismatchError,
    EmptyFileError,
    InsufficientClassSamplesError,
    InvalidRatioError,
    LengthMismatchError,
    NonAscendingIndexError,
    NrrlsError,
    NumericalSingularityError,
    ParseError,
    SingularMatrixError,
    TooFewRecordsError,
    UnknownClassError,
)
from .model import (
    DEFAULT_B,
    ClassCounts,
    Hyperparams,
    LabeledSample,
    MomentState,
    MulticlassState,
    RlsState,
    Weighting,
    batch_ls_solve,
    batch_ter_solve,
    classify,
    load_state,
    multiclass_init,
    multiclass_predict,
    multiclass_scores,
    multiclass_step,
    nrrls_init,
    nrrls_step,
    predict,
    rls_init,
    rls_step,
    save_state,
    ter_gradient,
    ter_objective,
)
from .features import (
    ExpansionMode,
    MinMaxScaler,
    PolyExpander,
    choose_mode,
    expand,
    expand_rows,
    full_multinomial_dim,
    scaler_apply,
    scaler_fit,
)
from .data import (
    BayesRule,
    Dataset,
    SplitPlan,
    gen_gaussian_imbalanced,
    gen_overlap_demo,
    load_delimited,
    load_libsvm,
    make_splits,
    save_libsvm,
)
from .evaluation import (
    Confusion,
    EvalRecord,
    LearnerConfig,
    TimingProfile,
    confusion,
    g_mean,
    run_fold,
    timing_profile,
)

__version__ = "0.1.0"
