#include "wpert/distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wpert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);
const double kInvSqrt2Pi = 0.3989422804014326779;

}  // namespace

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

// Acklam's rational approximation followed by one Newton step against the
// erfc-based CDF; the refinement brings the error to the last few ulps.
double std_normal_quantile(double p) {
    if (p <= 0.0) return -kInf;
    if (p >= 1.0) return kInf;

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
    if (pdf > 0.0) x -= (std_normal_cdf(x) - p) / pdf;
    return x;
}

BaseDistribution BaseDistribution::uniform(double lo, double hi) {
    if (!(lo < hi))
        throw std::invalid_argument("BaseDistribution::uniform: requires lo < hi");
    return {DistKind::uniform, lo, hi};
}

BaseDistribution BaseDistribution::normal(double mu, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("BaseDistribution::normal: requires sigma > 0");
    return {DistKind::normal, mu, sigma};
}

BaseDistribution BaseDistribution::exponential(double rate) {
    if (!(rate > 0.0))
        throw std::invalid_argument("BaseDistribution::exponential: requires rate > 0");
    return {DistKind::exponential, rate, 0.0};
}

double BaseDistribution::cdf(double x) const {
    switch (kind_) {
        case DistKind::uniform:
            if (x <= a_) return 0.0;
            if (x >= b_) return 1.0;
            return (x - a_) / (b_ - a_);
        case DistKind::normal:
            return std_normal_cdf((x - a_) / b_);
        case DistKind::exponential:
            if (x <= 0.0) return 0.0;
            return -std::expm1(-a_ * x);
    }
    return 0.0;
}

double BaseDistribution::pdf(double x) const {
    switch (kind_) {
        case DistKind::uniform:
            return (x < a_ || x > b_) ? 0.0 : 1.0 / (b_ - a_);
        case DistKind::normal: {
            const double z = (x - a_) / b_;
            return kInvSqrt2Pi * std::exp(-0.5 * z * z) / b_;
        }
        case DistKind::exponential:
            return x < 0.0 ? 0.0 : a_ * std::exp(-a_ * x);
    }
    return 0.0;
}

double BaseDistribution::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("BaseDistribution::quantile: p outside [0, 1]");
    switch (kind_) {
        case DistKind::uniform:
            return a_ + p * (b_ - a_);
        case DistKind::normal:
            return a_ + b_ * std_normal_quantile(p);
        case DistKind::exponential:
            if (p >= 1.0) return kInf;
            return -std::log1p(-p) / a_;
    }
    return 0.0;
}

double BaseDistribution::support_lo() const {
    switch (kind_) {
        case DistKind::uniform: return a_;
        case DistKind::normal: return -kInf;
        case DistKind::exponential: return 0.0;
    }
    return 0.0;
}

double BaseDistribution::support_hi() const {
    switch (kind_) {
        case DistKind::uniform: return b_;
        default: return kInf;
    }
}

double BaseDistribution::moment(int k) const {
    if (k < 0) throw std::invalid_argument("BaseDistribution::moment: requires k >= 0");
    if (k == 0) return 1.0;
    switch (kind_) {
        case DistKind::uniform: {
            // (hi^{k+1} - lo^{k+1}) / ((k+1)(hi - lo))
            double num = std::pow(b_, k + 1) - std::pow(a_, k + 1);
            return num / ((k + 1) * (b_ - a_));
        }
        case DistKind::normal: {
            // m_k = mu m_{k-1} + (k-1) sigma^2 m_{k-2}
            double m_prev = 1.0, m = a_;
            for (int i = 2; i <= k; ++i) {
                double next = a_ * m + (i - 1) * b_ * b_ * m_prev;
                m_prev = m;
                m = next;
            }
            return m;
        }
        case DistKind::exponential: {
            double m = 1.0;
            for (int i = 1; i <= k; ++i) m *= double(i) / a_;
            return m;
        }
    }
    return 0.0;
}

}  // namespace wpert
