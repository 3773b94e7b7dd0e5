from .beam import BeamResult, EdgeTrace, append_constant, beam_search_train, split_bias, training_errors
from .boolean import (
    And,
    AtMostCount,
    CongruenceModPowP,
    ExactCount,
    Nand,
    Nxor,
    UnsupportedTarget,
    Xor,
    build_boolean,
    target_function,
    truth_table_matches,
)
from .linear import (
    ALWAYS_NEGATIVE,
    NEGATIVE,
    POSITIVE,
    BestBall,
    Canonical,
    LinearClassifier,
    NotSeparable,
    SeparableFit,
    as_ball,
    ball_classifier,
    build_digit_trie,
    canonicalize,
    count_errors,
    fit_best_ball_1d,
    fit_separable_1d,
    predict,
    reduce_to_integers,
)
from .network import TwoLayerNetwork, count_threshold_network, exact_one_pm1
from .poly import PolyClassifier, PositiveRegion1D, poly_predict, second_order_region
