"""causelab: learning order-independent cause-event conjunctions in event sequences.

The package provides the gap-constrained multiset matcher that defines ground
truth, a seeded synthetic benchmark generator, two learners behind a
scikit-learn style fit/predict API (the count-intersection histogram learner
and a from-scratch MLP baseline), and the sweep/scoring/decision-tree
machinery used to compare them across a parameter grid.
"""

from .exceptions import (
    CauselabError,
    CausationSpaceExhaustedError,
    EmptyCausationError,
    InconsistentPositivesError,
    InfeasibleParametersError,
    NoPositiveInstancesError,
    OracleBoundExceededError,
    SweepCsvError,
    TrainingDivergedError,
    UnknownEventTypeError,
)
from .generation import (
    Dataset,
    Instance,
    generate_causations,
    generate_stream,
    generate_test_set,
    generate_training_set,
    make_rng,
    verify_labels,
)
from .histogram import (
    HistogramCausationLearner,
    estimate_cause_multiset,
    estimate_intervening_max,
    predict_histogram,
    train_histogram,
)
from .matching import (
    Causation,
    brute_force_contains,
    contains_batch,
    contains_causation,
    label_batch,
    label_instance,
    membership_matrix,
    min_max_gap,
)
from .metrics import FAIR, GOOD, POOR, SCORE_CLASSES, exact_match_accuracy, score_class
from .mlp import (
    MlpCausationClassifier,
    encode_instance,
    encode_labels,
    gradient_check,
    predict_mlp,
    train_mlp,
)
from .params import Params, default_instance_length
from .sweep import (
    DEFAULT_SEEDS,
    MCE_VALUES,
    METHODS,
    MIE_VALUES,
    NC_VALUES,
    NET_VALUES,
    SweepRecord,
    aggregate_scores,
    combo_mean_accuracies,
    execute_run,
    run_single,
    run_sweep,
    score_rows,
)
from .tree import (
    FEATURE_NAMES,
    ScoreTree,
    TreeNode,
    fit_score_tree,
    parse_tree_text,
    render_tree_text,
)

__version__ = "0.1.0"

__all__ = [
    "CauselabError",
    "CausationSpaceExhaustedError",
    "EmptyCausationError",
    "InconsistentPositivesError",
    "InfeasibleParametersError",
    "NoPositiveInstancesError",
    "OracleBoundExceededError",
    "SweepCsvError",
    "TrainingDivergedError",
    "UnknownEventTypeError",
    "Dataset",
    "Instance",
    "generate_causations",
    "generate_stream",
    "generate_test_set",
    "generate_training_set",
    "make_rng",
    "verify_labels",
    "HistogramCausationLearner",
    "estimate_cause_multiset",
    "estimate_intervening_max",
    "predict_histogram",
    "train_histogram",
    "Causation",
    "brute_force_contains",
    "contains_batch",
    "contains_causation",
    "label_batch",
    "label_instance",
    "membership_matrix",
    "min_max_gap",
    "FAIR",
    "GOOD",
    "POOR",
    "SCORE_CLASSES",
    "exact_match_accuracy",
    "score_class",
    "MlpCausationClassifier",
    "encode_instance",
    "encode_labels",
    "gradient_check",
    "predict_mlp",
    "train_mlp",
    "Params",
    "default_instance_length",
    "DEFAULT_SEEDS",
    "MCE_VALUES",
    "METHODS",
    "MIE_VALUES",
    "NC_VALUES",
    "NET_VALUES",
    "SweepRecord",
    "aggregate_scores",
    "combo_mean_accuracies",
    "execute_run",
    "run_single",
    "run_sweep",
    "score_rows",
    "FEATURE_NAMES",
    "ScoreTree",
    "TreeNode",
    "fit_score_tree",
    "parse_tree_text",
    "render_tree_text",
    "__version__",
]
