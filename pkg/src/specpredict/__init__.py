"""Causal prediction of anti-causal convolutions for signals whose spectrum
vanishes at a single frequency.

The library discretizes the continuous-time picture on uniform grids
(:mod:`.spectral`), models the anti-causal rational kernels to be predicted
(:mod:`.kernels`), builds the explicit causal predictor transfer family
(:mod:`.predictor`), generates controlled test signals (:mod:`.signals`) and
reproduces the checkable convergence, robustness and impossibility
experiments (:mod:`.experiments`).
"""

from .degeneracy import DegeneracyClass, weight_h
from .experiments import (
    counterexample_experiment,
    default_grid,
    error_decomposition,
    gamma_sweep,
    make_class_ensemble,
    nonpredictability_demo,
    prediction_error,
    robustness_experiment,
    uniformity_check,
)
from .kernels import (
    AnticausalKernel,
    apply_anticausal,
    kernel_from_json,
    kernel_to_json,
    residues,
    time_kernel,
    transfer,
)
from .predictor import (
    PredictorTransfer,
    build_predictor,
    causality_defect,
    eval_v_factor,
    find_gamma0,
    lemma_check,
    orthogonality_residual,
    predict,
    predictor_from_json,
    predictor_to_json,
    v_minus_one,
)
from .signals import (
    ALGORITHM_ID,
    GeneratorConfig,
    add_noise,
    class_norm,
    counterexample_pair,
    sample_bandlimited,
    sample_class_member,
)
from .spectral import (
    FrequencyGrid,
    Spectrum,
    TimeSeries,
    forward_transform,
    hermitian_symmetrize,
    inverse_transform,
    make_grid,
    norm,
    spectrum_l1,
    to_centered,
    to_natural,
)
from .tolerances import CALIBRATION

__version__ = "0.1.0"

__all__ = [
    "ALGORITHM_ID",
    "AnticausalKernel",
    "CALIBRATION",
    "DegeneracyClass",
    "FrequencyGrid",
    "GeneratorConfig",
    "PredictorTransfer",
    "Spectrum",
    "TimeSeries",
    "add_noise",
    "apply_anticausal",
    "build_predictor",
    "causality_defect",
    "class_norm",
    "counterexample_experiment",
    "counterexample_pair",
    "default_grid",
    "error_decomposition",
    "eval_v_factor",
    "find_gamma0",
    "forward_transform",
    "gamma_sweep",
    "hermitian_symmetrize",
    "inverse_transform",
    "kernel_from_json",
    "kernel_to_json",
    "lemma_check",
    "make_class_ensemble",
    "make_grid",
    "nonpredictability_demo",
    "norm",
    "orthogonality_residual",
    "predict",
    "prediction_error",
    "predictor_from_json",
    "predictor_to_json",
    "residues",
    "robustness_experiment",
    "sample_bandlimited",
    "sample_class_member",
    "spectrum_l1",
    "time_kernel",
    "to_centered",
    "to_natural",
    "transfer",
    "uniformity_check",
    "v_minus_one",
    "weight_h",
]
