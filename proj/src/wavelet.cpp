#include "wpert/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wpert/numerics.hpp"

namespace wpert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_beta_fn(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Beta(alpha, beta) density on [0, 1]
double beta_density(double x, double a, double b) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
                    log_beta_fn(a, b));
}

}  // namespace

std::string WaveletDesc::name() const {
    std::ostringstream os;
    switch (family) {
        case WaveletFamily::psi_u: os << "psi_u"; break;
        case WaveletFamily::beta: os << "beta(" << alpha << "," << beta << ")"; break;
        case WaveletFamily::mexican_hat: os << "mexican_hat(" << half_width << ")"; break;
        case WaveletFamily::daubechies: os << "db" << order; break;
        case WaveletFamily::custom: os << (label.empty() ? "custom" : label); break;
    }
    return os.str();
}

double eval_psi_u(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;  // t ln t -> 0 at both ends
    return -0.5 * x * std::log(x) + 0.5 * (1.0 - x) * std::log1p(-x);
}

double eval_beta(double x, double alpha, double beta) {
    if (!(alpha > 1.0) || !(beta > 1.0))
        throw std::invalid_argument(
            "eval_beta: requires alpha > 1 and beta > 1 "
            "(density derivative unbounded at an endpoint otherwise)");
    if (x < 0.0 || x > 1.0) return 0.0;
    if (x == 0.0) {
        if (alpha > 2.0) return 0.0;
        if (alpha == 2.0) return -std::exp(-log_beta_fn(alpha, beta));
        return -kInf;
    }
    if (x == 1.0) {
        if (beta > 2.0) return 0.0;
        if (beta == 2.0) return std::exp(-log_beta_fn(alpha, beta));
        return kInf;
    }
    const double g = beta_density(x, alpha, beta);
    return g * ((beta - 1.0) / (1.0 - x) - (alpha - 1.0) / x);
}

double eval_mexican_hat_truncated(double x, double half_width) {
    if (!(half_width >= 3.0))
        throw std::invalid_argument(
            "eval_mexican_hat_truncated: requires half_width >= 3");
    if (x < -half_width || x > half_width) return 0.0;
    // c equals the raw truncated integral 2w e^{-w^2/2} divided by 2w
    const double c = std::exp(-0.5 * half_width * half_width);
    return (1.0 - x * x) * std::exp(-0.5 * x * x) - c;
}

double eval_daubechies(double x, const CascadeTable& table) { return table(x); }

// ---------------------------------------------------------------------------

struct Wavelet::Impl {
    WaveletDesc desc;
    double lo = 0.0;
    double hi = 1.0;
    std::function<double(double)> eval;
    std::function<double(double)> exact_cum;  // may be empty
    std::shared_ptr<const CascadeTable> tbl;
    double sup = 0.0;
};

namespace {

// dense scan plus golden-section polish around the grid maximizer
double scan_sup_abs(const std::function<double(double)>& f, double lo, double hi) {
    constexpr int kGrid = 4097;
    const double h = (hi - lo) / (kGrid - 1);
    double best = 0.0, best_x = lo;
    for (int i = 0; i < kGrid; ++i) {
        const double x = (i == kGrid - 1) ? hi : lo + i * h;
        const double v = std::fabs(f(x));
        if (v > best) { best = v; best_x = x; }
    }
    double a = std::max(lo, best_x - h), b = std::min(hi, best_x + h);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = std::fabs(f(x1)), f2 = std::fabs(f(x2));
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = std::fabs(f(x2));
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = std::fabs(f(x1));
        }
    }
    return std::max({best, f1, f2});
}

}  // namespace

Wavelet::Wavelet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Wavelet Wavelet::psi_u() {
    auto impl = std::make_shared<Impl>();
    impl->desc.family = WaveletFamily::psi_u;
    impl->lo = 0.0;
    impl->hi = 1.0;
    impl->eval = [](double x) { return eval_psi_u(x); };
    impl->sup = scan_sup_abs(impl->eval, 0.0, 1.0);
    return Wavelet(std::move(impl));
}

Wavelet Wavelet::beta(double alpha, double beta) {
    if (!(alpha > 1.0) || !(beta > 1.0))
        throw std::invalid_argument(
            "Wavelet::beta: requires alpha > 1 and beta > 1");
    auto impl = std::make_shared<Impl>();
    impl->desc.family = WaveletFamily::beta;
    impl->desc.alpha = alpha;
    impl->desc.beta = beta;
    impl->lo = 0.0;
    impl->hi = 1.0;
    impl->eval = [alpha, beta](double x) { return eval_beta(x, alpha, beta); };
    // Psi(x) = -density(x): the density vanishes at both endpoints
    impl->exact_cum = [alpha, beta](double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return -beta_density(x, alpha, beta);
    };
    if (alpha < 2.0 || beta < 2.0)
        impl->sup = kInf;  // derivative blows up at an endpoint
    else
        impl->sup = scan_sup_abs(impl->eval, 0.0, 1.0);
    return Wavelet(std::move(impl));
}

Wavelet Wavelet::mexican_hat(double half_width) {
    if (!(half_width >= 3.0))
        throw std::invalid_argument("Wavelet::mexican_hat: requires half_width >= 3");
    auto impl = std::make_shared<Impl>();
    impl->desc.family = WaveletFamily::mexican_hat;
    impl->desc.half_width = half_width;
    impl->lo = -half_width;
    impl->hi = half_width;
    impl->eval = [half_width](double x) {
        return eval_mexican_hat_truncated(x, half_width);
    };
    impl->sup = scan_sup_abs(impl->eval, impl->lo, impl->hi);
    return Wavelet(std::move(impl));
}

Wavelet Wavelet::daubechies(int order, int depth) {
    auto impl = std::make_shared<Impl>();
    impl->desc.family = WaveletFamily::daubechies;
    impl->desc.order = order;
    if (order == 1) {
        // exact Haar step; a sampled table would smear the jump
        impl->lo = 0.0;
        impl->hi = 1.0;
        impl->eval = [](double x) {
            if (x < 0.0 || x > 1.0) return 0.0;
            return x < 0.5 ? 1.0 : -1.0;
        };
        impl->exact_cum = [](double x) {
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 0.0;
            return x < 0.5 ? x : 1.0 - x;
        };
        impl->sup = 1.0;
        return Wavelet(std::move(impl));
    }
    auto pair = cascade(daubechies_filter(order), depth);
    auto tbl = std::make_shared<CascadeTable>(std::move(pair.wavelet));
    impl->lo = tbl->support_lo;
    impl->hi = tbl->support_hi;
    impl->eval = [tbl](double x) { return (*tbl)(x); };
    impl->exact_cum = [tbl](double x) { return tbl->integral_to(x); };
    impl->sup = tbl->max_abs();
    impl->tbl = tbl;
    return Wavelet(std::move(impl));
}

Wavelet Wavelet::custom(std::string label, std::function<double(double)> f,
                        double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("Wavelet::custom: requires lo < hi");
    auto impl = std::make_shared<Impl>();
    impl->desc.family = WaveletFamily::custom;
    impl->desc.label = std::move(label);
    impl->lo = lo;
    impl->hi = hi;
    auto fn = std::move(f);
    impl->eval = [fn, lo, hi](double x) {
        if (x < lo || x > hi) return 0.0;
        return fn(x);
    };
    impl->sup = scan_sup_abs(impl->eval, lo, hi);
    return Wavelet(std::move(impl));
}

double Wavelet::operator()(double x) const {
    if (x < impl_->lo || x > impl_->hi) return 0.0;
    return impl_->eval(x);
}

double Wavelet::support_lo() const { return impl_->lo; }
double Wavelet::support_hi() const { return impl_->hi; }
double Wavelet::span() const { return impl_->hi - impl_->lo; }
double Wavelet::sup_abs() const { return impl_->sup; }
const WaveletDesc& Wavelet::desc() const { return impl_->desc; }
const CascadeTable* Wavelet::table() const { return impl_->tbl.get(); }

bool Wavelet::has_exact_cumulative() const {
    return static_cast<bool>(impl_->exact_cum);
}

double Wavelet::exact_cumulative(double x) const {
    return impl_->exact_cum(x);
}

Wavelet Wavelet::support_normalized() const {
    if (impl_->lo == 0.0 && impl_->hi == 1.0) return *this;
    const double a = impl_->lo;
    const double len = span();
    auto src = impl_;
    auto impl = std::make_shared<Impl>();
    impl->desc.family = WaveletFamily::custom;
    impl->desc.label = "normalized(" + impl_->desc.name() + ")";
    impl->lo = 0.0;
    impl->hi = 1.0;
    impl->eval = [src, a, len](double x) {
        if (x < 0.0 || x > 1.0) return 0.0;
        return src->eval(len * x + a) / len;
    };
    if (src->exact_cum)
        impl->exact_cum = [src, a, len](double x) {
            if (x <= 0.0 || x >= 1.0) return 0.0;
            return src->exact_cum(len * x + a) / (len * len);
        };
    impl->tbl = src->tbl;
    impl->sup = src->sup / len;  // exact under the affine change of variables
    return Wavelet(std::move(impl));
}

// ---------------------------------------------------------------------------

CumulativeWavelet::CumulativeWavelet(Wavelet source, double tolerance)
    : source_(std::move(source)), tolerance_(tolerance) {
    if (!(tolerance > 0.0))
        throw std::invalid_argument("CumulativeWavelet: requires tolerance > 0");
    const double lo = source_.support_lo();
    const double hi = source_.support_hi();
    constexpr int kCells = 1024;
    knots_.resize(kCells + 1);
    values_.resize(kCells + 1);
    for (int i = 0; i <= kCells; ++i)
        knots_[i] = lo + (hi - lo) * (double(i) / kCells);
    knots_.back() = hi;

    exact_ = source_.has_exact_cumulative();
    if (exact_) {
        for (int i = 0; i <= kCells; ++i)
            values_[i] = source_.exact_cumulative(knots_[i]);
        raw_end_ = source_.exact_cumulative(hi);
    } else {
        values_[0] = 0.0;
        const double cell_tol = tolerance_ / kCells;
        for (int i = 0; i < kCells; ++i) {
            auto r = integrate([this](double x) { return source_(x); },
                               knots_[i], knots_[i + 1], cell_tol);
            values_[i + 1] = values_[i] + r.value;
        }
        raw_end_ = values_.back();
    }
    // pin Psi(hi) to zero; the raw residual stays reported
    slope_corr_ = raw_end_ / (hi - lo);
}

double CumulativeWavelet::operator()(double x) const {
    const double lo = source_.support_lo();
    const double hi = source_.support_hi();
    if (x <= lo) return 0.0;
    if (x >= hi) return 0.0;
    double raw;
    if (exact_) {
        raw = source_.exact_cumulative(x);
    } else {
        const double h = (hi - lo) / double(knots_.size() - 1);
        auto i = static_cast<std::size_t>((x - lo) / h);
        if (i >= knots_.size() - 1) i = knots_.size() - 2;
        if (x == knots_[i]) {
            raw = values_[i];
        } else {
            auto r = integrate([this](double t) { return source_(t); },
                               knots_[i], x, std::max(tolerance_ * 1e-3, 1e-14));
            raw = values_[i] + r.value;
        }
    }
    return raw - slope_corr_ * (x - lo);
}

double cumulative(const Wavelet& w, double x, double tol) {
    return CumulativeWavelet(w, tol)(x);
}

// ---------------------------------------------------------------------------

AdmissibilityReport admissibility_check(const Wavelet& w, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("admissibility_check: requires tol > 0");
    AdmissibilityReport rep;
    rep.tolerance = tol;
    rep.sup_abs = w.sup_abs();

    if (const CascadeTable* t = w.table()) {
        rep.zero_integral_residual = std::fabs(t->integral_total());
    } else if (w.desc().family == WaveletFamily::beta) {
        rep.zero_integral_residual = 0.0;  // integral of a derivative of a
                                           // function vanishing at both ends
    } else {
        const double quad_tol = std::min(tol * 1e-2, 1e-10);
        rep.zero_integral_residual = std::fabs(
            integrate([&w](double x) { return w(x); }, w.support_lo(),
                      w.support_hi(), quad_tol)
                .value);
    }

    CumulativeWavelet cum(w, std::min(tol * 1e-2, 1e-10));
    rep.boundary_residual = cum.raw_boundary_residual();
    rep.passes = std::max(rep.zero_integral_residual, rep.boundary_residual) <= tol;
    return rep;
}

double wavelet_moment(const Wavelet& w, int k, double tol) {
    if (k < 0) throw std::invalid_argument("wavelet_moment: requires k >= 0");
    const WaveletDesc& d = w.desc();

    if (d.family == WaveletFamily::beta) {
        if (k == 0) return 0.0;
        // integrate by parts: psi = -g', boundary terms vanish, so
        // M_k = k * integral of u^{k-1} g(u); avoids the endpoint blow-up
        // of g' for parameters below 2
        const double a = d.alpha, b = d.beta;
        return double(k) * integrate(
                               [a, b, k](double u) {
                                   return std::pow(u, k - 1) * beta_density(u, a, b);
                               },
                               0.0, 1.0, tol)
                               .value;
    }
    if (const CascadeTable* t = w.table()) {
        // exact integral of u^k against the piecewise-linear table
        const double h = t->spacing();
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < t->values.size(); ++i) {
            const double x0 = t->support_lo + double(i) * h;
            const double x1 = x0 + h;
            const double v0 = t->values[i], v1 = t->values[i + 1];
            const double p1 = (std::pow(x1, k + 1) - std::pow(x0, k + 1)) / (k + 1);
            const double p2 = (std::pow(x1, k + 2) - std::pow(x0, k + 2)) / (k + 2);
            total += v0 * p1 + (v1 - v0) / h * (p2 - x0 * p1);
        }
        return total;
    }
    if (d.family == WaveletFamily::daubechies && d.order == 1) {
        // split at the jump so each piece is smooth
        auto f = [&w, k](double u) { return std::pow(u, double(k)) * w(u); };
        return integrate(f, 0.0, 0.5, tol / 2).value +
               integrate(f, 0.5, 1.0, tol / 2).value;
    }
    return integrate([&w, k](double u) { return std::pow(u, double(k)) * w(u); },
                     w.support_lo(), w.support_hi(), tol)
        .value;
}

double sup_abs(const Wavelet& w) { return w.sup_abs(); }

}  // namespace wpert
