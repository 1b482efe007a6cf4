#include "wpert/cascade.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace wpert {

double CascadeTable::operator()(double x) const {
    if (x <= support_lo || x >= support_hi) {
        if (x == support_lo) return values.front();
        if (x == support_hi) return values.back();
        return 0.0;
    }
    const double h = spacing();
    const double t = (x - support_lo) / h;
    auto i = static_cast<std::size_t>(t);
    if (i >= values.size() - 1) i = values.size() - 2;
    const double frac = t - double(i);
    return values[i] + frac * (values[i + 1] - values[i]);
}

double CascadeTable::integral_to(double x) const {
    if (x <= support_lo) return 0.0;
    if (x >= support_hi) return integral_prefix.back();
    const double h = spacing();
    const double t = (x - support_lo) / h;
    auto i = static_cast<std::size_t>(t);
    if (i >= values.size() - 1) i = values.size() - 2;
    const double frac = t - double(i);
    const double vx = values[i] + frac * (values[i + 1] - values[i]);
    // trapezoid over the partial cell is exact for a linear segment
    return integral_prefix[i] + 0.5 * (values[i] + vx) * frac * h;
}

double CascadeTable::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

const std::vector<double>& daubechies_filter(int order) {
    static const std::vector<double> db1 = {
        0.7071067811865476, 0.7071067811865476};
    static const std::vector<double> db2 = {
        0.48296291314469025, 0.836516303737469,
        0.22414386804185735, -0.12940952255092145};
    static const std::vector<double> db3 = {
        0.3326705529509569, 0.8068915093133388, 0.4598775021193313,
        -0.13501102001039084, -0.08544127388224149, 0.035226291882100656};
    static const std::vector<double> db4 = {
        0.23037781330885523, 0.7148465705525415, 0.6308807679295904,
        -0.02798376941698385, -0.18703481171888114, 0.030841381835986965,
        0.032883011666982945, -0.010597401784997278};
    switch (order) {
        case 1: return db1;
        case 2: return db2;
        case 3: return db3;
        case 4: return db4;
        default:
            throw std::invalid_argument(
                "daubechies_filter: built-in filters cover orders 1..4");
    }
}

namespace {

void fill_prefix(CascadeTable& t) {
    const double h = t.spacing();
    t.integral_prefix.assign(t.values.size(), 0.0);
    for (std::size_t i = 1; i < t.values.size(); ++i)
        t.integral_prefix[i] =
            t.integral_prefix[i - 1] + 0.5 * (t.values[i - 1] + t.values[i]) * h;
}

// phi at the integers of [0, N-1]: eigenvector of phi(j) = s2 sum h_k phi(2j-k)
// for eigenvalue 1, boundary values pinned to zero, sum normalized to 1.
std::vector<double> integer_values(const std::vector<double>& h) {
    const auto n = h.size();
    const double s2 = std::sqrt(2.0);
    std::vector<double> v(n, 1.0), nv(n, 0.0);
    v.front() = v.back() = 0.0;
    for (int it = 0; it < 400; ++it) {
        double sum = 0.0;
        for (std::size_t j = 1; j + 1 < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const std::ptrdiff_t idx = std::ptrdiff_t(2 * j) - std::ptrdiff_t(k);
                if (idx >= 0 && idx < std::ptrdiff_t(n)) acc += h[k] * v[idx];
            }
            nv[j] = s2 * acc;
            sum += nv[j];
        }
        for (std::size_t j = 1; j + 1 < n; ++j) v[j] = nv[j] / sum;
    }
    return v;
}

}  // namespace

CascadePair cascade(const std::vector<double>& scaling_filter, int depth) {
    const auto n = scaling_filter.size();
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("cascade: filter needs an even tap count >= 2");
    double sum = 0.0;
    for (double c : scaling_filter) sum += c;
    if (std::fabs(sum - std::sqrt(2.0)) > 1e-12)
        throw std::invalid_argument(
            "cascade: invalid filter, coefficients must sum to sqrt(2)");
    if (depth < 6 || depth > 16)
        throw std::invalid_argument("cascade: depth must lie in [6, 16]");

    const double s2 = std::sqrt(2.0);
    const auto support = double(n - 1);

    std::vector<double> phi;
    if (n == 2) {
        // Haar: the box is the fixed point; sample it right-continuously.
        phi = {1.0, 0.0};
    } else {
        phi = integer_values(scaling_filter);
    }

    // refine: values at spacing 2^-lev from values at spacing 2^-(lev-1)
    for (int lev = 1; lev <= depth; ++lev) {
        const auto m_old = phi.size();
        const auto m_new = 2 * (m_old - 1) + 1;
        const auto half = std::size_t(1) << (lev - 1);  // 1 / spacing of previous level
        std::vector<double> next(m_new, 0.0);
        for (std::size_t i = 0; i < m_old; ++i) next[2 * i] = phi[i];
        for (std::size_t i = 1; i < m_new; i += 2) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                // phi(2x - k) with 2x on the previous level's grid
                const std::ptrdiff_t idx =
                    std::ptrdiff_t(i) - std::ptrdiff_t(k * half);
                if (idx >= 0 && idx < std::ptrdiff_t(m_old))
                    acc += scaling_filter[k] * phi[idx];
            }
            next[i] = s2 * acc;
        }
        phi = std::move(next);
    }

    CascadePair out;
    out.scaling.support_lo = 0.0;
    out.scaling.support_hi = support;
    out.scaling.depth = depth;
    out.scaling.values = phi;
    fill_prefix(out.scaling);

    // psi(x) = s2 * sum g_k phi(2x - k), g_k = (-1)^k h_{N-1-k}
    const auto m = phi.size();
    const auto scale = std::size_t(1) << depth;
    std::vector<double> psi(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double g = ((k % 2 == 0) ? 1.0 : -1.0) * scaling_filter[n - 1 - k];
            const std::ptrdiff_t idx =
                2 * std::ptrdiff_t(i) - std::ptrdiff_t(k * scale);
            if (idx >= 0 && idx < std::ptrdiff_t(m)) acc += g * phi[idx];
        }
        psi[i] = s2 * acc;
    }
    out.wavelet.support_lo = 0.0;
    out.wavelet.support_hi = support;
    out.wavelet.depth = depth;
    out.wavelet.values = std::move(psi);
    fill_prefix(out.wavelet);
    return out;
}

}  // namespace wpert
