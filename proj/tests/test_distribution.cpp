#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wpert/distribution.hpp"

using namespace wpert;

TEST_CASE("cdf closed forms") {
    auto u = BaseDistribution::uniform(0, 1);
    CHECK(u.cdf(0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(u.cdf(-1.0) == 0.0);
    CHECK(u.cdf(2.0) == 1.0);

    auto n = BaseDistribution::normal(0, 1);
    CHECK(n.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(n.cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));

    auto e = BaseDistribution::exponential(2);
    CHECK(e.cdf(1.0) == doctest::Approx(0.8646647167633873).epsilon(1e-13));
    CHECK(e.cdf(-0.5) == 0.0);
}

TEST_CASE("pdf closed forms") {
    CHECK(BaseDistribution::uniform(0, 1).pdf(0.5) == 1.0);
    CHECK(BaseDistribution::uniform(0, 1).pdf(1.5) == 0.0);
    CHECK(BaseDistribution::uniform(2, 6).pdf(3.0) == doctest::Approx(0.25));
    CHECK(BaseDistribution::normal(0, 1).pdf(0.0) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-13));
    CHECK(BaseDistribution::exponential(2).pdf(0.0) == doctest::Approx(2.0));
    CHECK(BaseDistribution::exponential(2).pdf(-1.0) == 0.0);
}

TEST_CASE("quantile closed forms") {
    CHECK(BaseDistribution::uniform(0, 1).quantile(0.75) == doctest::Approx(0.75));
    CHECK(BaseDistribution::normal(0, 1).quantile(0.5) == doctest::Approx(0.0));
    auto e = BaseDistribution::exponential(2);
    CHECK(e.quantile(1.0 - std::exp(-2.0)) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(e.quantile(-0.1), std::domain_error);
    CHECK_THROWS_AS(e.quantile(1.5), std::domain_error);
    CHECK(std::isinf(BaseDistribution::normal(0, 1).quantile(0.0)));
    CHECK(std::isinf(BaseDistribution::normal(0, 1).quantile(1.0)));
}

TEST_CASE("round trip cdf(quantile(p)) over 1001 points") {
    const BaseDistribution dists[] = {BaseDistribution::uniform(0, 1),
                                      BaseDistribution::normal(0.3, 1.7),
                                      BaseDistribution::exponential(2)};
    for (const auto& d : dists) {
        for (int i = 0; i <= 1000; ++i) {
            const double p = 1e-6 + (1.0 - 2e-6) * double(i) / 1000.0;
            const double x = d.quantile(p);
            CHECK(std::fabs(d.cdf(x) - p) <= 1e-9);
        }
    }
    // and the reverse on the support interior
    auto n = BaseDistribution::normal(0, 1);
    for (int i = 1; i < 100; ++i) {
        const double x = -4.0 + 8.0 * double(i) / 100.0;
        CHECK(n.quantile(n.cdf(x)) == doctest::Approx(x).epsilon(1e-9));
    }
}

TEST_CASE("density is the cdf derivative") {
    const BaseDistribution dists[] = {BaseDistribution::uniform(0, 1),
                                      BaseDistribution::normal(0, 1),
                                      BaseDistribution::exponential(2)};
    const double h = 1e-5;
    for (const auto& d : dists) {
        const double lo = std::isfinite(d.support_lo()) ? d.support_lo() : -6.0;
        const double hi = std::isfinite(d.support_hi()) ? d.support_hi() : 6.0;
        for (int i = 1; i <= 101; ++i) {
            const double x = lo + (hi - lo) * double(i) / 103.0;
            const double fd = (d.cdf(x + h) - d.cdf(x - h)) / (2.0 * h);
            CHECK(std::fabs(fd - d.pdf(x)) < 1e-6);
        }
    }
}

TEST_CASE("moments in closed form") {
    auto u = BaseDistribution::uniform(0, 1);
    CHECK(u.moment(0) == 1.0);
    CHECK(u.moment(1) == doctest::Approx(0.5));
    CHECK(u.moment(2) == doctest::Approx(1.0 / 3.0));
    CHECK(u.moment(5) == doctest::Approx(1.0 / 6.0));

    auto n = BaseDistribution::normal(0, 1);
    CHECK(n.moment(1) == doctest::Approx(0.0));
    CHECK(n.moment(2) == doctest::Approx(1.0));
    CHECK(n.moment(3) == doctest::Approx(0.0));
    CHECK(n.moment(4) == doctest::Approx(3.0));

    auto n2 = BaseDistribution::normal(2, 3);
    CHECK(n2.moment(2) == doctest::Approx(4.0 + 9.0));  // mu^2 + sigma^2

    auto e = BaseDistribution::exponential(2);
    CHECK(e.moment(1) == doctest::Approx(0.5));
    CHECK(e.moment(3) == doctest::Approx(6.0 / 8.0));  // k! / rate^k
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(BaseDistribution::uniform(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(BaseDistribution::normal(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(BaseDistribution::exponential(-2), std::invalid_argument);
}

TEST_CASE("normal quantile accuracy in the tails") {
    auto n = BaseDistribution::normal(0, 1);
    // reference values from the complementary error function inverse
    CHECK(n.quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(n.quantile(1e-6) == doctest::Approx(-4.753424308822899).epsilon(1e-10));
    CHECK(n.quantile(0.5 + 1e-12) == doctest::Approx(0.0).epsilon(1e-9));
    for (double p : {1e-9, 1e-4, 0.02425, 0.3, 0.8, 0.97575, 1.0 - 1e-7}) {
        const double x = n.quantile(p);
        CHECK(std::fabs(n.cdf(x) - p) <= 1e-12 * std::max(1.0, std::fabs(p)));
    }
}
