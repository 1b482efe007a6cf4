#pragma once

namespace wpert {

enum class DistKind { uniform, normal, exponential };

//! Unperturbed base distribution: CDF/PDF/quantile in closed form.
//!
//! Immutable value object; all evaluations are pure. The normal CDF goes
//! through erfc (relative accuracy well under 1e-12); its quantile is a
//! rational approximation polished by one Newton step.
class BaseDistribution {
  public:
    static BaseDistribution uniform(double lo, double hi);
    static BaseDistribution normal(double mu, double sigma);
    static BaseDistribution exponential(double rate);

    double cdf(double x) const;
    double pdf(double x) const;

    //! Generalized inverse; throws std::domain_error for p outside [0, 1].
    //! quantile(0) / quantile(1) are the support edges (possibly infinite).
    double quantile(double p) const;

    double support_lo() const;  // -inf for normal
    double support_hi() const;  // +inf for normal and exponential

    //! E[X^k] in closed form (k >= 0).
    double moment(int k) const;

    DistKind kind() const { return kind_; }
    //! uniform: {lo, hi}; normal: {mu, sigma}; exponential: {rate, unused}.
    double param1() const { return a_; }
    double param2() const { return b_; }

    bool is_uniform01() const {
        return kind_ == DistKind::uniform && a_ == 0.0 && b_ == 1.0;
    }

  private:
    BaseDistribution(DistKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
    DistKind kind_;
    double a_, b_;
};

//! Standard normal CDF and quantile, exposed for reuse in tests.
double std_normal_cdf(double z);
double std_normal_quantile(double p);

}  // namespace wpert
