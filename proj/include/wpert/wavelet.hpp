#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wpert/cascade.hpp"

namespace wpert {

enum class WaveletFamily { psi_u, beta, mexican_hat, daubechies, custom };

//! Construction parameters, kept for config round-trips and messages.
struct WaveletDesc {
    WaveletFamily family = WaveletFamily::custom;
    double alpha = 0.0;       // beta family
    double beta = 0.0;        // beta family
    double half_width = 0.0;  // mexican hat truncation
    int order = 0;            // daubechies
    std::string label;        // custom / derived wavelets

    std::string name() const;
};

//! A compactly supported zero-integral function on [support_lo, support_hi].
//!
//! Immutable value type; copies share the underlying state. The sup norm is
//! computed eagerly at construction (dense 4097-point scan plus golden
//! section refinement, or exactly where the family allows), so evaluation
//! and sup_abs() are safe for concurrent use.
class Wavelet {
  public:
    //! psi_U(x) = -x ln(x)/2 + (1-x) ln(1-x)/2 on [0, 1].
    static Wavelet psi_u();

    //! Negative derivative of the Beta(alpha, beta) density on [0, 1].
    //!
    //! Requires alpha > 1 and beta > 1 so the density vanishes at both ends
    //! and the integral is exactly zero. For a parameter in (1, 2) the
    //! derivative is unbounded at the matching endpoint and sup_abs() is
    //! +infinity; such wavelets act as zero perturbations on the normalized
    //! path.
    static Wavelet beta(double alpha, double beta);

    //! (1 - x^2) exp(-x^2/2) - c on [-half_width, half_width], half_width >= 3.
    //! c = exp(-half_width^2/2) restores an exactly zero integral (it equals
    //! the raw truncated integral divided by the support length).
    static Wavelet mexican_hat(double half_width = 5.0);

    //! Daubechies wavelet of the given order via the cascade tables.
    //! Order 1 (Haar) is evaluated as the exact step function instead of a
    //! table so its integrals and moments are not polluted by interpolation
    //! across the jump.
    static Wavelet daubechies(int order, int depth = 10);

    //! Arbitrary function on [lo, hi]; admissibility is the caller's problem
    //! until admissibility_check() says otherwise.
    static Wavelet custom(std::string label, std::function<double(double)> f,
                          double lo, double hi);

    //! 0 outside [support_lo, support_hi]; one-sided limits at the endpoints.
    double operator()(double x) const;

    double support_lo() const;
    double support_hi() const;
    double span() const;  // support_hi - support_lo

    //! max over the support of |psi|; may be +infinity (see beta()).
    double sup_abs() const;

    const WaveletDesc& desc() const;

    //! x -> psi((b-a) x + a) / (b-a) on [0, 1]. Returns *this unchanged when
    //! the support already is [0, 1], preserves the zero integral, and
    //! scales sup_abs by 1/(b-a).
    Wavelet support_normalized() const;

    //! Closed-form running integral where the family has one (beta: minus
    //! the density; tables: exact interpolant prefix). Others integrate
    //! numerically through CumulativeWavelet.
    bool has_exact_cumulative() const;
    double exact_cumulative(double x) const;

    const CascadeTable* table() const;

  private:
    struct Impl;
    explicit Wavelet(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

// family evaluators
double eval_psi_u(double x);
double eval_beta(double x, double alpha, double beta);
double eval_mexican_hat_truncated(double x, double half_width);
double eval_daubechies(double x, const CascadeTable& table);

//! Running integral Psi(x) = integral of psi from support_lo to min(x, hi).
//!
//! Keeps a 1025-knot value table and integrates locally between knots, so
//! lookups cost a short quadrature at most. A linear correction pins
//! Psi(support_hi) to exactly zero; the uncorrected boundary value is
//! reported through raw_boundary_residual(). Immutable after construction.
class CumulativeWavelet {
  public:
    explicit CumulativeWavelet(Wavelet source, double tolerance = 1e-10);

    double operator()(double x) const;
    const Wavelet& source() const { return source_; }
    double tolerance() const { return tolerance_; }

    //! |Psi(support_hi)| before the boundary correction.
    double raw_boundary_residual() const { return std::fabs(raw_end_); }

  private:
    Wavelet source_;
    double tolerance_;
    std::vector<double> knots_;
    std::vector<double> values_;  // uncorrected Psi at the knots
    double raw_end_ = 0.0;
    double slope_corr_ = 0.0;
    bool exact_ = false;
};

//! One-shot Psi(x); builds the knot cache per call, so loops should hold a
//! CumulativeWavelet instead.
double cumulative(const Wavelet& w, double x, double tol = 1e-10);

struct AdmissibilityReport {
    double zero_integral_residual = 0.0;  // |integral of psi|
    double boundary_residual = 0.0;       // |Psi(support_hi)|
    double sup_abs = 0.0;
    double tolerance = 0.0;
    bool passes = false;
};

//! Checks the zero-integral and boundary conditions a perturbing wavelet
//! must satisfy; passes iff both residuals are within tol.
AdmissibilityReport admissibility_check(const Wavelet& w, double tol);

//! M_k = integral of u^k psi(u) over the support.
double wavelet_moment(const Wavelet& w, int k, double tol = 1e-9);

//! sup over the support of |psi| (same value the wavelet caches).
double sup_abs(const Wavelet& w);

}  // namespace wpert
