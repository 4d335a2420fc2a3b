"""Numerical calibration constants.

Every tolerance used by the library and its verification suite lives in this
one table.  These are floating-point calibration values chosen for the
double-precision discretization, not derived quantities; changing the grid
scale or precision model would require recalibrating them together.
"""

CALIBRATION = {
    # spectral discretization
    "roundtrip_rel": 1e-9,          # inverse(forward(x)) vs x, relative L2
    "parseval_rel": 1e-8,           # time-domain vs frequency-domain energy
    "real_imag_rel": 1e-12,         # max |imag| / max |sample| for a real series
    "hermitian_rel": 1e-12,         # conjugate-symmetry defect, sup-normalized
    # rational kernels
    "residue_reconstruction_rel": 1e-10,   # partial fractions vs direct transfer
    "kernel_transfer_consistency": 1e-3,   # sampled kernel transform vs transfer,
                                           # sup over |omega| <= omega_max/2,
                                           # normalized by the peak gain
    "convolution_oracle_rel": 1e-6,        # fast path vs O(n^2) direct quadrature
    # predictor transfer
    "v_modulus_identity_rel": 1e-12,  # |V_j - 1| vs exp(-gamma Re(...))
    "lemma_iv_slack": 1e-9,           # slack on the weighted low-band bound
    "causality_defect_max": 1e-3,     # share of kernel energy at t < 0
    "orthogonality_residual_max": 1e-2,
    "v_overflow_clamp_log": 700.0,    # log-magnitude clamp for stored values
    # signal generation
    "noise_l1_rel": 1e-12,            # calibrated noise L1 norm accuracy
    "class_zero_floor": 1e-300,       # absolute floor on |X(0)| for the zero signal
    "class_dc_floor_rel": 1e-12,      # |X(0)| / max|X| above this exits the class;
                                      # a transform recomputed from time samples
                                      # carries ~1e-16 relative roundoff at the
                                      # degeneracy node, so the floor is relative
    "guard_rel": 1e-5,                # residual amplitude allowed in guard zones
                                      # (achieved ~1e-7 on spans T ~ 650)
    # experiments
    "partition_identity_rel": 1e-9,   # i1 + i2 vs total spectral error measure
    "parseval_bridge_rel": 1e-6,      # 2*pi*err_l2^2 vs rho=2 spectral measure
    "counterexample_identity_rel": 0.05,
    "robustness_slack": 0.05,
    "sweep_jitter": 0.05,             # tolerance on "nonincreasing" diagnostics
}
