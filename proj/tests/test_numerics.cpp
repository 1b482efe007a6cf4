#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wpert/cascade.hpp"
#include "wpert/numerics.hpp"
#include "wpert/wavelet.hpp"

using namespace wpert;

namespace {

// closed-form antiderivative of psi_U, the oracle for its integrals:
// int_0^x -t ln t / 2 dt = -x^2 ln x / 4 + x^2 / 8, plus the mirrored term
double psi_u_antiderivative(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) x = 1.0;
    const double left = (x == 1.0) ? 0.125 : -x * x * std::log(x) / 4.0 + x * x / 8.0;
    const double y = 1.0 - x;
    const double right =
        -0.125 - ((y == 0.0) ? 0.0 : y * y * std::log(y) / 4.0 - y * y / 8.0);
    return left + right;
}

double psi_u_fn(double x) { return eval_psi_u(x); }

}  // namespace

TEST_CASE("integrate: polynomial exactness up to degree 3") {
    auto r = integrate([](double x) { return x; }, 0.0, 1.0, 1e-10);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.evaluations >= 3);
    CHECK(r.error_estimate >= 0.0);

    // cubic over an awkward interval, still exact for Simpson
    auto c = integrate([](double x) { return 2.0 * x * x * x - x * x + 3.0; },
                       -1.7, 2.9, 1e-10);
    auto F = [](double x) { return 0.5 * x * x * x * x - x * x * x / 3.0 + 3.0 * x; };
    CHECK(std::fabs(c.value - (F(2.9) - F(-1.7))) < 1e-12);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int rep = 0; rep < 25; ++rep) {
        const double a = coef(rng), b = coef(rng), c3 = coef(rng), d = coef(rng);
        const double lo = coef(rng), hi = lo + std::fabs(coef(rng)) + 0.1;
        auto q = integrate(
            [&](double x) { return a + b * x + c3 * x * x + d * x * x * x; }, lo,
            hi, 1e-12);
        auto prim = [&](double x) {
            return a * x + b * x * x / 2 + c3 * x * x * x / 3 + d * x * x * x * x / 4;
        };
        CHECK(std::fabs(q.value - (prim(hi) - prim(lo))) < 1e-11);
    }
}

TEST_CASE("integrate: psi_U against its antiderivative oracle") {
    auto whole = integrate(psi_u_fn, 0.0, 1.0, 1e-10);
    CHECK(std::fabs(whole.value) < 1e-9);

    auto half = integrate(psi_u_fn, 0.0, 0.5, 1e-10);
    CHECK(half.value == doctest::Approx(psi_u_antiderivative(0.5)).epsilon(1e-9));
    CHECK(half.value == doctest::Approx(0.0241434).epsilon(1e-5));

    for (double x : {0.1, 0.25, 0.333, 0.7, 0.9, 0.99}) {
        auto part = integrate(psi_u_fn, 0.0, x, 1e-11);
        CHECK(std::fabs(part.value - psi_u_antiderivative(x)) < 1e-9);
    }
}

TEST_CASE("integrate: argument and failure contracts") {
    CHECK_THROWS_AS(integrate(psi_u_fn, 1.0, 0.0, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(integrate(psi_u_fn, 0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0, 1e-9),
                    std::runtime_error);

    auto empty = integrate(psi_u_fn, 0.3, 0.3, 1e-9);
    CHECK(empty.value == 0.0);
    CHECK(empty.evaluations >= 3);
}

TEST_CASE("find_root_monotone: basic roots") {
    auto lin = find_root_monotone([](double x) { return x - 0.5; }, 0.0, 1.0, 1e-12);
    CHECK(lin == doctest::Approx(0.5).epsilon(1e-11));

    auto cub = find_root_monotone([](double x) { return x * x * x; }, -1.0, 1.0, 1e-10);
    CHECK(std::fabs(cub) < 1e-4);

    CHECK_THROWS_AS(
        find_root_monotone([](double x) { return x + 1.0; }, 0.0, 1.0, 1e-10),
        std::invalid_argument);
    CHECK_THROWS_AS(
        find_root_monotone([](double x) { return x - 5.0; }, 0.0, 1.0, 1e-10),
        std::invalid_argument);
}

TEST_CASE("find_root_monotone: leftmost point on flat segments") {
    // g is 0 on [0.4, 0.7], negative below, positive above
    auto g = [](double x) {
        if (x < 0.4) return x - 0.4;
        if (x > 0.7) return x - 0.7;
        return 0.0;
    };
    const double root = find_root_monotone(g, 0.0, 1.0, 1e-9);
    CHECK(root == doctest::Approx(0.4).epsilon(1e-6));
}

TEST_CASE("find_root_monotone: random monotone CDF-style functions") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    for (int rep = 0; rep < 50; ++rep) {
        const double p = unif(rng);
        // strictly increasing but with strongly varying slope
        auto g = [p](double x) { return x + 0.3 * std::sin(3.0 * x) - p; };
        const double r = find_root_monotone(g, -1.0, 2.5, 1e-11);
        CHECK(std::fabs(g(r)) < 1e-9);
    }
}

TEST_CASE("cascade: Haar fixed point") {
    auto pair = cascade(daubechies_filter(1), 8);
    const auto& w = pair.wavelet;
    CHECK(w.support_lo == 0.0);
    CHECK(w.support_hi == 1.0);
    const double h = w.spacing();
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        const double x = double(i) * h;
        if (x < 0.5) {
            CHECK(w.values[i] == doctest::Approx(1.0).epsilon(1e-9));
        } else if (x < 1.0) {
            CHECK(w.values[i] == doctest::Approx(-1.0).epsilon(1e-9));
        }
    }
    CHECK(w.values.back() == 0.0);
}

TEST_CASE("cascade: db4 support, endpoints, zero mean") {
    auto pair = cascade(daubechies_filter(4), 10);
    const auto& w = pair.wavelet;
    const auto& s = pair.scaling;
    CHECK(w.support_hi - w.support_lo == doctest::Approx(7.0));
    CHECK(w.values.front() == 0.0);
    CHECK(w.values.back() == 0.0);
    CHECK(s.values.front() == 0.0);
    CHECK(s.values.back() == 0.0);

    // independent trapezoid over the sampled values
    double trapz = 0.0;
    const double h = w.spacing();
    for (std::size_t i = 0; i + 1 < w.values.size(); ++i)
        trapz += 0.5 * (w.values[i] + w.values[i + 1]) * h;
    CHECK(std::fabs(trapz) < 1e-6);

    // scaling function integrates to one
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < s.values.size(); ++i)
        mass += 0.5 * (s.values[i] + s.values[i + 1]) * h;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cascade: zero mean for all built-in continuous filters") {
    for (int order : {2, 3, 4}) {
        auto pair = cascade(daubechies_filter(order), 10);
        CHECK(std::fabs(pair.wavelet.integral_total()) < 1e-6);
    }
}

TEST_CASE("cascade: filter and depth contracts") {
    CHECK_THROWS_AS(cascade({0.5, 0.5}, 10), std::invalid_argument);
    CHECK_THROWS_AS(cascade(daubechies_filter(4), 3), std::invalid_argument);
    CHECK_THROWS_AS(cascade(daubechies_filter(4), 20), std::invalid_argument);
    CHECK_THROWS_AS(daubechies_filter(9), std::invalid_argument);
}
