#include "wpert/numerics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wpert {

namespace {

constexpr int kMaxDepth = 60;

struct QuadState {
    const std::function<double(double)>& f;
    double span;  // hi - lo of the whole request
    double tol;
    std::int64_t evaluations = 0;
    double error = 0.0;

    double eval_interior(double x) {
        ++evaluations;
        double v = f(x);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "integrate: non-finite integrand value at x = " << x;
            throw std::runtime_error(msg.str());
        }
        return v;
    }
};

double simpson(double a, double fa, double fm, double fb, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(QuadState& st, double a, double fa, double m, double fm,
             double b, double fb, double whole, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.eval_interior(lm);
    const double frm = st.eval_interior(rm);
    const double left = simpson(a, fa, flm, fm, m);
    const double right = simpson(m, fm, frm, fb, b);
    const double delta = left + right - whole;

    const double local_tol = st.tol * ((b - a) / st.span);
    const double width_floor =
        8.0 * std::numeric_limits<double>::epsilon() *
        std::max({std::fabs(a), std::fabs(b), 1.0});
    if (std::fabs(delta) <= 15.0 * local_tol || (b - a) <= width_floor) {
        st.error += std::fabs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    if (depth >= kMaxDepth) {
        throw std::runtime_error(
            "integrate: bisection depth exceeded 60 without convergence");
    }
    return adapt(st, a, fa, lm, flm, m, fm, left, depth + 1) +
           adapt(st, m, fm, rm, frm, b, fb, right, depth + 1);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           double lo, double hi, double tol) {
    if (!(lo <= hi)) throw std::invalid_argument("integrate: requires lo <= hi");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: requires tol > 0");

    QuadState st{f, hi - lo, tol};
    auto eval_endpoint = [&st, &f](double x, double inward) {
        ++st.evaluations;
        double v = f(x);
        // One-sided limit fallback for endpoint singularities.
        if (!std::isfinite(v)) {
            double nudge = (st.span > 0.0 ? st.span : 1.0) * 1e-13;
            ++st.evaluations;
            v = f(x + inward * nudge);
        }
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "integrate: non-finite integrand value at x = " << x;
            throw std::runtime_error(msg.str());
        }
        return v;
    };

    if (lo == hi) {
        eval_endpoint(lo, 0.0);
        st.evaluations += 2;
        return {0.0, 0.0, st.evaluations};
    }

    const double fa = eval_endpoint(lo, 1.0);
    const double fb = eval_endpoint(hi, -1.0);
    const double m = 0.5 * (lo + hi);
    const double fm = st.eval_interior(m);
    const double whole = simpson(lo, fa, fm, fb, hi);
    const double value = adapt(st, lo, fa, m, fm, hi, fb, whole, 0);
    return {value, st.error, st.evaluations};
}

double find_root_monotone(const std::function<double(double)>& g,
                          double lo, double hi, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("find_root_monotone: requires tol > 0");
    if (!(lo <= hi))
        throw std::invalid_argument("find_root_monotone: requires lo <= hi");

    double ga = g(lo);
    double gb = g(hi);
    if (ga > 0.0) {
        if (ga <= tol) return lo;
        throw std::invalid_argument("find_root_monotone: g(lo) > 0, no bracket");
    }
    if (gb < 0.0) {
        if (-gb <= tol) return hi;
        throw std::invalid_argument("find_root_monotone: g(hi) < 0, no bracket");
    }

    const double span0 = hi - lo;
    double a = lo, b = hi;
    bool use_secant = false;
    for (int iter = 0; iter < 400; ++iter) {
        const double width = b - a;
        const double width_floor =
            8.0 * std::numeric_limits<double>::epsilon() *
            std::max({std::fabs(a), std::fabs(b), 1.0});
        if ((gb <= tol && -ga <= tol) || width <= tol * span0 ||
            width <= width_floor)
            break;

        double x;
        if (use_secant && gb > ga) {
            x = a - ga * width / (gb - ga);
            // keep the probe strictly interior so the bracket always shrinks
            const double margin = 0.01 * width;
            x = std::min(std::max(x, a + margin), b - margin);
        } else {
            x = a + 0.5 * width;
        }
        use_secant = !use_secant;

        const double gx = g(x);
        if (gx >= 0.0) {
            b = x;
            gb = gx;
        } else {
            a = x;
            ga = gx;
        }
    }
    return b;
}

}  // namespace wpert
