#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "wpert/distribution.hpp"
#include "wpert/wavelet.hpp"

namespace wpert {

enum class PerturbMode { single, level2, level4 };

//! How the perturbation amplitude is scaled.
//!
//! direct     - the construction for a uniform base: the CDF gains
//!              gain * (b-a)^-1 * Psi((b-a) F + a) per segment, valid only
//!              while the slope term stays within [-1, 1].
//! normalized - the general construction: the same term further divided by
//!              max|psi|, valid for every admissible wavelet and base.
//! automatic  - direct wherever its amplitude condition holds (uniform base
//!              only), normalized otherwise.
enum class PerturbPath { automatic, direct, normalized };

struct PerturbationSpec {
    PerturbMode mode = PerturbMode::single;
    double gain = 1.0;  // in [0, 1]; 0 reproduces the base exactly
    PerturbPath path = PerturbPath::automatic;
    std::vector<Wavelet> wavelets;  // 1, 2 or 4, ordered low segment to high

    int segment_count() const;
};

//! Construction-condition checks evaluated on a grid over the effective
//! support (base quantiles at 1e-9 / 1-1e-9 when the support is unbounded).
struct ValidityReport {
    bool monotone = false;
    double boundary_lo_residual = 0.0;  // |F_new(lo)|
    double boundary_hi_residual = 0.0;  // |1 - F_new(hi)|
    double mass_residual = 0.0;         // |integral of f_new - 1|
    double bound_violation = 0.0;       // max over grid of (|eps| - F_base)+
    double min_density = 0.0;
    double eps_integral = 0.0;          // informational: integral of eps

    bool passes() const {
        return monotone && boundary_lo_residual <= 1e-8 &&
               boundary_hi_residual <= 1e-8 && mass_residual <= 1e-6 &&
               min_density >= -1e-9;
    }
};

//! Base distribution plus an additive wavelet perturbation of its CDF.
//!
//! Immutable after construction; cdf/pdf/quantile are pure. Construction
//! checks admissibility of every wavelet (tolerance 1e-6), the gain range,
//! and the per-segment amplitude condition for the direct path. On the
//! automatic path a segment whose direct amplitude condition fails is
//! routed through the normalized form instead of being rejected.
class PerturbedDistribution {
  public:
    PerturbedDistribution(BaseDistribution base, PerturbationSpec spec);

    //! Skips construction-time validation; for diagnosing invalid setups
    //! through validate().
    static PerturbedDistribution unchecked(BaseDistribution base,
                                           PerturbationSpec spec);

    double cdf(double x) const;
    double pdf(double x) const;

    //! inf{x : cdf(x) >= p}; |cdf(result) - p| <= tol where the CDF is
    //! strictly increasing. Throws std::domain_error outside [0, 1].
    double quantile(double p, double tol = 1e-10) const;

    //! Inverse-transform samples, deterministic in (n, seed): a counter
    //! based 64-bit generator feeds quantile(); output order is draw order.
    std::vector<double> sample(std::int64_t n, std::uint64_t seed) const;

    ValidityReport validate(int grid_points = 10001, double tol = 1e-8) const;

    const BaseDistribution& base() const { return base_; }
    const PerturbationSpec& spec() const { return spec_; }

    //! Effective support (quantile-clipped when unbounded).
    double effective_lo() const { return eff_lo_; }
    double effective_hi() const { return eff_hi_; }

    int segment_count() const { return m_; }
    //! Amplitude applied to the segment's normalized cumulative.
    double segment_amplitude(int j) const { return seg_[j].amplitude; }
    bool segment_normalized(int j) const { return seg_[j].normalized; }
    const Wavelet& segment_wavelet(int j) const { return seg_[j].normalized_wavelet; }
    const CumulativeWavelet& segment_cumulative(int j) const { return *seg_[j].cumulative; }

  private:
    struct Segment {
        Wavelet normalized_wavelet;
        std::shared_ptr<const CumulativeWavelet> cumulative;
        double amplitude = 0.0;
        bool normalized = false;
    };

    PerturbedDistribution(BaseDistribution base, PerturbationSpec spec, bool checked);
    double eps_of_u(double u) const;      // CDF perturbation at u = F_base(x)
    double density_factor(double u) const;  // f_new / f_base at u = F_base(x)

    BaseDistribution base_;
    PerturbationSpec spec_;
    int m_ = 1;
    std::vector<Segment> seg_;
    double eff_lo_ = 0.0, eff_hi_ = 1.0;
};

//! Perturbed uniform [0,1] CDF: x + gain (b-a)^-1 Psi((b-a) x + a).
//! Requires gain * sup|psi| <= 1. One-shot helper; loops should build a
//! PerturbedDistribution, which caches the cumulative.
double perturb_uniform_cdf(const Wavelet& w, double x, double gain);

//! Matching density 1 + gain psi((b-a) x + a) on [0, 1].
double perturb_uniform_pdf(const Wavelet& w, double x, double gain);

//! General-base CDF: F(x) + gain (b-a)^-1 Psi((b-a) F(x) + a) / max|psi|.
double perturb_general_cdf(const BaseDistribution& base, const Wavelet& w,
                           double x, double gain);

//! General-base density: f(x) (1 + gain psi((b-a) F(x) + a) / max|psi|).
double perturb_general_pdf(const BaseDistribution& base, const Wavelet& w,
                           double x, double gain);

//! Piecewise CDF over the dyadic segments of [0, 1] for a uniform base.
double multilevel_cdf(const PerturbationSpec& spec, double x);

}  // namespace wpert
