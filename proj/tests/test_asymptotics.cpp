#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "painleve/asymptotics.hpp"
#include "painleve/error.hpp"

using namespace painleve;
using namespace painleve::asymptotics;

namespace {

// arg Gamma(1 + iy) from the Weierstrass product
double arg_gamma_1p(double y) {
    const double euler = 0.57721566490153286;
    double s = -euler * y;
    const int K = 200000;
    for (int k = 1; k <= K; ++k) s += y / k - std::atan(y / k);
    return s + y * y * y / (3.0 * K * K * 2.0);  // tail of sum (y/k)^3 / 3
}

double wrap(double x) { return phase_distance(x, 0.0, 2 * M_PI); }

}  // namespace

TEST_CASE("AS connection formulae") {
    const auto c = as_connection(0.5);
    CHECK(c.d2 == doctest::Approx(-std::log(0.75) / M_PI).epsilon(1e-15));
    const double want = 1.5 * c.d2 * std::log(2.0) - arg_gamma_1p(c.d2 / 2) + M_PI / 4 * (1 - 2);
    CHECK(wrap(c.theta0 - want) < 1e-10);
    // sgn k only moves theta0 by pi
    const auto m = as_connection(-0.5);
    CHECK(m.d2 == c.d2);
    CHECK(wrap(m.theta0 - c.theta0 - M_PI) < 1e-14);
    CHECK_THROWS_AS(as_connection(0.0), DomainError);
    CHECK_THROWS_AS(as_connection(1.0), DomainError);
}

TEST_CASE("singular connection formulae") {
    CHECK(std::fabs(singular_connection(std::sqrt(2.0)).beta) < 1e-15);
    CHECK(singular_connection(2.0).beta == doctest::Approx(std::log(3.0) / (2 * M_PI)).epsilon(1e-15));
    CHECK(wrap(singular_connection(2.0).phi - singular_connection(-2.0).phi - M_PI) < 1e-14);
    CHECK_THROWS_AS(singular_connection(0.5), DomainError);
}

TEST_CASE("quasi-AS connection at alpha = 0 reduces to AS") {
    for (double k : {0.2, 0.5, 0.8}) {
        const auto q = quasi_as_connection(k, 0.0);
        const auto a = as_connection(k);
        CHECK(q.d * q.d == doctest::Approx(a.d2).epsilon(1e-13));
        // the two phase conventions differ by a sign and a quarter turn
        CHECK(wrap(q.phi + a.theta0 + M_PI / 2) < 1e-12);
    }
    CHECK_THROWS_AS(quasi_as_connection(0.8, 0.3), DomainError);  // |k| >= cos(pi alpha)
    CHECK_THROWS_AS(quasi_as_connection(0.1, 0.5), DomainError);
}

TEST_CASE("Hastings-McLeod left asymptote") {
    CHECK(hm_leftasymptote(-8.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(hm_leftasymptote(-50.0) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("classify") {
    CHECK(classify(0.5, 0.0) == Regime::AS);
    CHECK(classify(-1.5, 0.0) == Regime::SINGULAR);
    CHECK(classify(0.3, 0.25) == Regime::QUASI_AS);
    CHECK_THROWS_AS(classify(1.0, 0.0), DomainError);
    try {
        (void)classify(-1.0, 0.0);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("Hastings-McLeod") != std::string::npos);
    }
}

TEST_CASE("B series coefficients") {
    for (double a : {0.1, 0.25, 0.4}) {
        const auto c = b_series(a, 5);
        REQUIRE(c.size() == 6);
        CHECK(c[0] == 1.0);
        CHECK(c[1] == doctest::Approx(2 - 2 * a * a).epsilon(1e-15));
        // a_2 = 20 a_1 - 2 alpha^2 (3 a_0^2 a_1)
        CHECK(c[2] == doctest::Approx((20 - 6 * a * a) * c[1]).epsilon(1e-14));
        const auto l = b_series(a, 5, BVariant::literal);
        CHECK(l[1] == c[1]);
        CHECK(l[2] != doctest::Approx(c[2]));
    }
    CHECK_THROWS((void)b_series(0.2, 21));
}

TEST_CASE("truncated B series: residual decays like z^-(3N+1)") {
    const double slope = b_residual_slope(0.25, 5, BVariant::convolution);
    CHECK(slope <= -16.0 + 0.2);
    const auto sel = b_series_select(0.25, 5);
    CHECK(sel.chosen == BVariant::convolution);
    CHECK(sel.convolution_pass);
    CHECK(sel.required_slope == doctest::Approx(-15.8));
    CHECK(sel.slope_convolution == doctest::Approx(slope));
    CHECK(to_string(sel.chosen) == "convolution");
}

TEST_CASE("oscillatory fit recovers synthetic parameters") {
    const double d = 0.3, th = 1.2;
    std::vector<double> z, w;
    for (double x = -60.0; x <= -25.0; x += 0.01) {
        const double a = std::fabs(x);
        z.push_back(x);
        w.push_back(std::pow(a, -0.25) * d * std::sin(2.0 / 3.0 * std::pow(a, 1.5) - 0.75 * d * d * std::log(a) - th));
    }
    const auto f = fit_oscillatory(z, w);
    CHECK(std::fabs(f.d - d) <= 1e-6);
    CHECK(phase_distance(f.theta0, th, 2 * M_PI) <= 1e-6);
    CHECK(f.residual_norm <= 1e-8);
}

TEST_CASE("singular fit recovers synthetic pole positions") {
    const double beta = 0.05, phi = 0.7;
    auto lhs = [&](double x) { return 2.0 / 3.0 * std::pow(x, 1.5) + beta * std::log(8 * std::pow(x, 1.5)) + phi; };
    std::vector<double> poles;
    for (int m = int(std::ceil(lhs(25.0) / M_PI)); m * M_PI < lhs(60.0); ++m) {
        boost::math::tools::eps_tolerance<double> tol(50);
        std::uintmax_t it = 100;
        const auto r =
            boost::math::tools::bisect([&](double x) { return lhs(x) - m * M_PI; }, 25.0, 60.0, tol, it);
        poles.push_back(-(r.first + r.second) / 2);
    }
    const auto f = fit_singular(poles, 60.0, 25.0);
    CHECK(f.n_poles == int(poles.size()));
    CHECK(std::fabs(f.beta - beta) <= 1e-8);
    CHECK(phase_distance(f.phi, phi, M_PI) <= 1e-8);
}

TEST_CASE("end-to-end AS and quasi-AS connections") {
    const auto r = connection_check(0.5, 0.0);
    CHECK(r.regime == Regime::AS);
    CHECK(r.pass);
    CHECK(r.err_a <= 3e-3);
    CHECK(r.err_b <= 2e-2);

    const auto q = connection_check(0.3, 0.25);
    CHECK(q.regime == Regime::QUASI_AS);
    CHECK(q.b_variant == "convolution");
    CHECK(q.pass);
    CHECK(q.to_json().find("\"QUASI_AS\"") != std::string::npos);
}

TEST_CASE("singular regime: beta from the pole lattice") {
    const auto r = connection_check(1.5, 0.0);
    CHECK(r.regime == Regime::SINGULAR);
    CHECK(r.n_points > 20);
    CHECK(r.err_a <= 3e-3);
}
