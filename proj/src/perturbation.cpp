#include "wpert/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wpert/numerics.hpp"

namespace wpert {

namespace {

constexpr double kTailClip = 1e-9;       // effective-support quantile clip
constexpr double kAdmissTol = 1e-6;      // wavelet admissibility gate
constexpr double kMonotoneSlack = 1e-12;

// splitmix64: counter-based, so draw i is independent of draws before it
std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01_from_bits(std::uint64_t bits) {
    // strictly inside (0, 1)
    return (double(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

int PerturbationSpec::segment_count() const {
    switch (mode) {
        case PerturbMode::single: return 1;
        case PerturbMode::level2: return 2;
        case PerturbMode::level4: return 4;
    }
    return 1;
}

PerturbedDistribution::PerturbedDistribution(BaseDistribution base,
                                             PerturbationSpec spec)
    : PerturbedDistribution(std::move(base), std::move(spec), true) {}

PerturbedDistribution PerturbedDistribution::unchecked(BaseDistribution base,
                                                       PerturbationSpec spec) {
    return PerturbedDistribution(std::move(base), std::move(spec), false);
}

PerturbedDistribution::PerturbedDistribution(BaseDistribution base,
                                             PerturbationSpec spec, bool checked)
    : base_(std::move(base)), spec_(std::move(spec)) {
    m_ = spec_.segment_count();
    if (int(spec_.wavelets.size()) != m_) {
        std::ostringstream msg;
        msg << "PerturbedDistribution: mode needs " << m_ << " wavelet(s), got "
            << spec_.wavelets.size();
        throw std::invalid_argument(msg.str());
    }
    if (checked && !(spec_.gain >= 0.0 && spec_.gain <= 1.0))
        throw std::invalid_argument("PerturbedDistribution: gain must lie in [0, 1]");
    if (m_ > 1 && !base_.is_uniform01())
        throw std::invalid_argument(
            "PerturbedDistribution: multilevel perturbations are defined on the "
            "uniform [0,1] base only");

    const bool base_is_uniform = base_.kind() == DistKind::uniform;
    for (int j = 0; j < m_; ++j) {
        const Wavelet& w = spec_.wavelets[j];
        if (checked) {
            auto adm = admissibility_check(w, kAdmissTol);
            if (!adm.passes) {
                std::ostringstream msg;
                msg << "PerturbedDistribution: wavelet " << w.desc().name()
                    << " fails admissibility at 1e-6 (zero-integral residual "
                    << adm.zero_integral_residual << ", boundary residual "
                    << adm.boundary_residual << ")";
                throw std::invalid_argument(msg.str());
            }
        }

        Segment s{w.support_normalized(), nullptr, 0.0, false};
        const double sup_norm = s.normalized_wavelet.sup_abs();
        // direct-path slope amplitude: gain * sup|psi_raw| for a single
        // wavelet, gain * m * sup|psi_norm| per segment at deeper levels
        const double direct_slope = (m_ == 1)
                                        ? spec_.gain * w.sup_abs()
                                        : spec_.gain * m_ * sup_norm;
        const bool direct_ok = base_is_uniform && direct_slope <= 1.0;

        PerturbPath path = spec_.path;
        if (path == PerturbPath::automatic)
            path = direct_ok ? PerturbPath::direct : PerturbPath::normalized;

        if (path == PerturbPath::direct) {
            if (checked && !direct_ok) {
                std::ostringstream msg;
                msg << "PerturbedDistribution: direct path rejected for segment "
                    << j << " (" << w.desc().name() << "): amplitude "
                    << direct_slope << " exceeds 1"
                    << (base_is_uniform ? "" : " (base is not uniform)");
                throw std::invalid_argument(msg.str());
            }
            s.amplitude = (m_ == 1) ? spec_.gain * w.span() : spec_.gain;
            s.normalized = false;
        } else {
            s.amplitude = (sup_norm > 0.0 && std::isfinite(sup_norm))
                              ? spec_.gain / (m_ * sup_norm)
                              : 0.0;
            s.normalized = true;
        }
        s.cumulative = std::make_shared<CumulativeWavelet>(s.normalized_wavelet);
        seg_.push_back(std::move(s));
    }

    eff_lo_ = std::isfinite(base_.support_lo()) ? base_.support_lo()
                                                : base_.quantile(kTailClip);
    eff_hi_ = std::isfinite(base_.support_hi()) ? base_.support_hi()
                                                : base_.quantile(1.0 - kTailClip);
}

double PerturbedDistribution::eps_of_u(double u) const {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    int j = std::min(int(u * m_), m_ - 1);
    const Segment& s = seg_[j];
    if (s.amplitude == 0.0) return 0.0;
    return s.amplitude * (*s.cumulative)(u * m_ - j);
}

double PerturbedDistribution::density_factor(double u) const {
    if (u < 0.0 || u > 1.0) return 1.0;
    int j = std::min(int(u * m_), m_ - 1);
    const Segment& s = seg_[j];
    if (s.amplitude == 0.0) return 1.0;
    return 1.0 + s.amplitude * m_ * s.normalized_wavelet(u * m_ - j);
}

double PerturbedDistribution::cdf(double x) const {
    const double u = base_.cdf(x);
    return std::clamp(u + eps_of_u(u), 0.0, 1.0);
}

double PerturbedDistribution::pdf(double x) const {
    const double f = base_.pdf(x);
    if (f == 0.0) return 0.0;
    const double v = f * density_factor(base_.cdf(x));
    // roundoff guard where the density touches zero; genuinely negative
    // values (possible only through unchecked construction) pass through
    return (v < 0.0 && v > -1e-12 * f) ? 0.0 : v;
}

double PerturbedDistribution::quantile(double p, double tol) const {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("PerturbedDistribution::quantile: p outside [0, 1]");
    if (p == 0.0) return base_.quantile(0.0);
    if (p == 1.0) return base_.quantile(1.0);

    // |eps| <= min(F, 1-F) makes these provably bracketing
    double lo = base_.quantile(0.5 * p);
    double hi = base_.quantile(0.5 * (1.0 + p));
    return find_root_monotone([this, p](double x) { return cdf(x) - p; }, lo, hi,
                              tol);
}

std::vector<double> PerturbedDistribution::sample(std::int64_t n,
                                                  std::uint64_t seed) const {
    if (n < 1)
        throw std::invalid_argument("PerturbedDistribution::sample: requires n >= 1");
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        const double u = uniform01_from_bits(splitmix64(seed + std::uint64_t(i)));
        out[std::size_t(i)] = quantile(u, 1e-10);
    }
    return out;
}

ValidityReport PerturbedDistribution::validate(int grid_points, double tol) const {
    if (grid_points < 101)
        throw std::invalid_argument("validate: requires grid_points >= 101");
    if (!(tol > 0.0)) throw std::invalid_argument("validate: requires tol > 0");

    ValidityReport rep;
    const double lo = eff_lo_, hi = eff_hi_;
    const double step = (hi - lo) / (grid_points - 1);

    rep.monotone = true;
    rep.min_density = std::numeric_limits<double>::infinity();
    double prev = cdf(lo);
    rep.boundary_lo_residual = std::fabs(prev);
    for (int i = 0; i < grid_points; ++i) {
        const double x = (i == grid_points - 1) ? hi : lo + i * step;
        const double fx = cdf(x);
        if (fx < prev - kMonotoneSlack) rep.monotone = false;
        prev = fx;
        const double eps = fx - base_.cdf(x);
        rep.bound_violation =
            std::max(rep.bound_violation, std::fabs(eps) - base_.cdf(x));
        rep.min_density = std::min(rep.min_density, pdf(x));
    }
    rep.bound_violation = std::max(rep.bound_violation, 0.0);
    rep.boundary_hi_residual = std::fabs(1.0 - cdf(hi));

    // mass: integrate the density between knot images of each segment's
    // cumulative table, so every quadrature cell is smooth inside
    double mass = 0.0;
    const double cell_tol_scale = tol * 1e-2;
    const double u_lo = std::isfinite(base_.support_lo()) ? 0.0 : kTailClip;
    const double u_hi = std::isfinite(base_.support_hi()) ? 1.0 : 1.0 - kTailClip;
    for (int j = 0; j < m_; ++j) {
        const CascadeTable* tbl = seg_[j].normalized_wavelet.table();
        const std::size_t cells = tbl ? tbl->values.size() - 1 : 1024;
        double prev_x = 0.0;
        bool have_prev = false;
        for (std::size_t c = 0; c <= cells; ++c) {
            double u = (double(j) + double(c) / double(cells)) / m_;
            u = std::clamp(u, u_lo, u_hi);
            const double x = base_.quantile(u);
            if (have_prev && x > prev_x) {
                mass += integrate([this](double t) { return pdf(t); }, prev_x, x,
                                  cell_tol_scale / double(cells))
                            .value;
            }
            prev_x = x;
            have_prev = true;
        }
    }
    rep.mass_residual = std::fabs(mass - 1.0);

    rep.eps_integral =
        integrate([this](double x) { return cdf(x) - base_.cdf(x); }, lo, hi,
                  std::max(tol, 1e-9))
            .value;
    return rep;
}

// ---------------------------------------------------------------------------

double perturb_uniform_cdf(const Wavelet& w, double x, double gain) {
    if (gain * w.sup_abs() > 1.0) {
        std::ostringstream msg;
        msg << "perturb_uniform_cdf: amplitude condition violated, gain * sup|psi| = "
            << gain * w.sup_abs() << " > 1 for " << w.desc().name();
        throw std::invalid_argument(msg.str());
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = w.support_lo(), len = w.span();
    return x + gain / len * cumulative(w, len * x + a);
}

double perturb_uniform_pdf(const Wavelet& w, double x, double gain) {
    if (gain * w.sup_abs() > 1.0) {
        std::ostringstream msg;
        msg << "perturb_uniform_pdf: amplitude condition violated, gain * sup|psi| = "
            << gain * w.sup_abs() << " > 1 for " << w.desc().name();
        throw std::invalid_argument(msg.str());
    }
    if (x < 0.0 || x > 1.0) return 0.0;
    const double a = w.support_lo(), len = w.span();
    return 1.0 + gain * w(len * x + a);
}

double perturb_general_cdf(const BaseDistribution& base, const Wavelet& w,
                           double x, double gain) {
    const double u = base.cdf(x);
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double sup = w.sup_abs();
    if (!std::isfinite(sup) || sup <= 0.0) return u;
    const double a = w.support_lo(), len = w.span();
    return std::clamp(u + gain / len * cumulative(w, len * u + a) / sup, 0.0, 1.0);
}

double perturb_general_pdf(const BaseDistribution& base, const Wavelet& w,
                           double x, double gain) {
    const double f = base.pdf(x);
    if (f == 0.0) return 0.0;
    const double sup = w.sup_abs();
    if (!std::isfinite(sup) || sup <= 0.0) return f;
    const double a = w.support_lo(), len = w.span();
    const double u = base.cdf(x);
    return f * (1.0 + gain * w(len * u + a) / sup);
}

double multilevel_cdf(const PerturbationSpec& spec, double x) {
    PerturbedDistribution pd(BaseDistribution::uniform(0.0, 1.0), spec);
    return pd.cdf(x);
}

}  // namespace wpert
