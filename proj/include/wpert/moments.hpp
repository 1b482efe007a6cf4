#pragma once

#include <vector>

#include "wpert/distribution.hpp"
#include "wpert/perturbation.hpp"
#include "wpert/wavelet.hpp"

namespace wpert {

//! Moment bookkeeping for one order k: the closed-form base moment, the
//! wavelet-induced correction, their sum, and an independent quadrature of
//! x^k f_new as a cross-check. new_moment = base_moment + correction by
//! construction; the residual against direct_check is reported, not hidden.
struct MomentReport {
    int order = 0;
    double base_moment = 0.0;
    double correction = 0.0;
    double new_moment = 0.0;
    double direct_check = 0.0;
    double residual = 0.0;
};

//! Correction to E[X^k] for a single-wavelet perturbation of `base`:
//! amplitude * integral over [0,1] of quantile(t)^k psi_norm(t) dt, where
//! the amplitude matches the construction (gain * (b-a) on the direct path,
//! gain / sup|psi_norm| on the normalized path). The quantile argument is
//! clipped to [1e-12, 1-1e-12] for unbounded bases; the compactly supported
//! wavelet factor vanishes at the clipped ends.
double moment_correction_general(const BaseDistribution& base, const Wavelet& w,
                                 int k, double gain, double tol,
                                 bool normalized = true);

//! Uniform-base correction: gain * M_k of the support-normalized wavelet.
//! Exact for [0,1]-supported wavelets on the direct path.
double moment_correction_uniform(const Wavelet& w, int k, double gain,
                                 double tol = 1e-9);

//! Reports for k = 0..k_max (k_max <= 12), using the distribution's actual
//! per-segment amplitudes so the correction matches what cdf/pdf apply.
std::vector<MomentReport> moment_report(const PerturbedDistribution& pd,
                                        int k_max, double tol = 1e-8);

}  // namespace wpert
