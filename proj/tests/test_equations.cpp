#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "painleve/equations.hpp"
#include "painleve/error.hpp"
#include "painleve/solver.hpp"

using namespace painleve;
using namespace painleve::equations;
using P = Param;

TEST_CASE("P_II residual examples") {
    const ParamSet a0{{P::alpha, 0.0}}, a1{{P::alpha, 1.0}};
    for (double z : {-3.0, 0.0, 0.7, 12.0}) CHECK(residual(EquationId::PII, a0, z, 0, 0, 0) == 0.0);
    for (double z : {-3.0, 0.7, 2.0, 12.0})
        CHECK(std::fabs(residual(EquationId::PII, a1, z, -1 / z, 1 / (z * z), -2 / (z * z * z))) < 1e-14);
}

TEST_CASE("P34 residual at p = z/2") {
    const ParamSet a0{{P::alpha, 0.0}};
    for (double z : {-3.0, 0.7, 2.0, 12.0}) CHECK(std::fabs(residual(EquationId::P34, a0, z, z / 2, 0.5, 0.0)) < 1e-14);
    CHECK_THROWS_AS(residual(EquationId::P34, a0, 0.0, 0.0, 0.5, 0.0), SingularInput);
}

TEST_CASE("S_II residual examples") {
    CHECK(sigma_residual(EquationId::SII, {{P::beta, 0.0}}, 1.3, 0, 0, 0) == 0.0);
    for (double z : {-2.0, 0.5, 3.0})
        CHECK(std::fabs(sigma_residual(EquationId::SII, {{P::beta, 0.5}}, z, -z * z / 8, -z / 4, -0.25)) < 1e-14);
}

TEST_CASE("rhs examples and residual consistency") {
    auto r = rhs(EquationId::PI, {}, {0.0, 0.0, 0.0});
    CHECK(r.first == 0.0);
    CHECK(r.second == 0.0);
    r = rhs(EquationId::PII, {{P::alpha, 0.0}}, {1.0, 1.0, 0.0});
    CHECK(r.first == 0.0);
    CHECK(r.second == 3.0);
}

// The Painleve equations written out independently of the library.
TEST_CASE("residuals agree with hand-written equations") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.3, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double z = pos(rng), w = pos(rng) + 1.5, dw = u(rng), d2 = u(rng);
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng) - 3.0;
        auto close = [](double x, double y) { return std::fabs(x - y) <= 1e-12 * (1 + std::fabs(y)); };

        CHECK(close(residual(EquationId::PI, {}, z, w, dw, d2), d2 - 6 * w * w - z));
        CHECK(close(residual(EquationId::PII, {{P::alpha, a}}, z, w, dw, d2), d2 - 2 * w * w * w - z * w - a));
        CHECK(close(residual(EquationId::PIII6, {{P::alpha, a}, {P::beta, b}, {P::gamma, c}, {P::delta, d}}, z, w, dw, d2),
                    d2 - (dw * dw / w - dw / z + (a * w * w + b) / z + c * w * w * w + d / w)));
        CHECK(close(residual(EquationId::PIV, {{P::alpha, a}, {P::beta, b}}, z, w, dw, d2),
                    d2 - (dw * dw / (2 * w) + 1.5 * w * w * w + 4 * z * w * w + 2 * (z * z - a) * w + b / w)));
        const double pv = (1 / (2 * w) + 1 / (w - 1)) * dw * dw - dw / z + (w - 1) * (w - 1) / (z * z) * (a * w + b / w) +
                          c * w / z + d * w * (w + 1) / (w - 1);
        CHECK(close(residual(EquationId::PV, {{P::alpha, a}, {P::beta, b}, {P::gamma, c}, {P::delta, d}}, z, w, dw, d2),
                    d2 - pv));
        const double zz = z + 2.5;  // keep z away from 0, 1 and w
        const double pvi = 0.5 * (1 / w + 1 / (w - 1) + 1 / (w - zz)) * dw * dw - (1 / zz + 1 / (zz - 1) + 1 / (w - zz)) * dw +
                           w * (w - 1) * (w - zz) / (zz * zz * (zz - 1) * (zz - 1)) *
                               (a + b * zz / (w * w) + c * (zz - 1) / ((w - 1) * (w - 1)) +
                                d * zz * (zz - 1) / ((w - zz) * (w - zz)));
        CHECK(close(residual(EquationId::PVI, {{P::alpha, a}, {P::beta, b}, {P::gamma, c}, {P::delta, d}}, zz, w, dw, d2),
                    d2 - pvi));
        const double s = u(rng);
        CHECK(close(sigma_residual(EquationId::SII, {{P::beta, b}}, z, s, dw, d2),
                    d2 * d2 + 4 * dw * dw * dw + 2 * dw * (z * dw - s) - b * b / 4));
    }
}

TEST_CASE("schema validation names the field") {
    CHECK_THROWS_AS(validate(EquationId::PII, {}), ParameterError);
    CHECK_THROWS_AS(validate(EquationId::PII, {{P::alpha, 0.0}, {P::beta, 1.0}}), ParameterError);
    CHECK_THROWS_AS(validate(EquationId::PIII6, {{P::alpha, 1}, {P::beta, 1}, {P::gamma, 0}, {P::delta, -1}}),
                    ParameterError);
    try {
        validate(EquationId::PII, {{P::alpha, 0.0}, {P::beta, 1.0}});
    } catch (const ParameterError& e) {
        CHECK(std::string(e.what()).find("beta") != std::string::npos);
    }
    CHECK(equation_from_string("PIII6") == EquationId::PIII6);
    CHECK_THROWS_AS(equation_from_string("PXI"), ParameterError);
}

TEST_CASE("P_III and P_V case analysis") {
    CHECK(classify_piii(1, -1, 1, -1) == PIIICase::P3_6);
    CHECK(classify_piii(1, -1, 0, 0) == PIIICase::P3_8);
    CHECK(classify_piii(0, -1, 0, -1) == PIIICase::QUADRATURE);
    CHECK(classify_piii(1, -1, 0, -1) == PIIICase::P3_7);
    CHECK(classify_piii(1, -1, 1, 0) == PIIICase::P3_7);
    CHECK(classify_pv(1, 1, 1, -1) == PVCase::GENERIC);
    CHECK(classify_pv(1, 1, 1, 0) == PVCase::DEGENERATE);
    CHECK(classify_pv(1, 1, 0, 0) == PVCase::QUADRATURE);

    // every sign pattern lands in exactly the printed case
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int g = -1; g <= 1; ++g)
                for (int d = -1; d <= 1; ++d) {
                    PIIICase want;
                    if (g * d != 0) want = PIIICase::P3_6;
                    else if ((g == 0 && a * d != 0) || (d == 0 && b * g != 0)) want = PIIICase::P3_7;
                    else if (g == 0 && d == 0 && a * b != 0) want = PIIICase::P3_8;
                    else want = PIIICase::QUADRATURE;
                    CHECK(classify_piii(a, b, g, d) == want);
                }
}

TEST_CASE("normalize_piii: canonical input is left alone") {
    const auto n = normalize_piii(0.7, -0.3, 1, -1);
    CHECK(n.canonical == EquationId::PIII6);
    CHECK(n.scale.lambda_w == 1.0);
    CHECK(n.scale.mu_z == 1.0);
    CHECK_THROWS_AS(normalize_piii(0, -1, 0, -1), ParameterError);
}

namespace {

// integrate the original equation, push its step samples (w'' from the original
// equation) through the scaling, and evaluate the canonical residual
double closure(EquationId eq, const ParamSet& p, const Normalized& n, double z0, double w0, double dw0, double z1) {
    const auto t = solver::integrate(eq, p, z0, w0, dw0, z1, {});
    double worst = 0.0;
    for (const auto& smp : t.samples) {
        const auto s = n.scale.apply({smp.z, smp.w, smp.dw});
        const double d2 = second_derivative(eq, p, smp.z, smp.w, smp.dw) * n.scale.mu_z * n.scale.mu_z / n.scale.lambda_w;
        worst = std::max(worst, std::fabs(residual(n.canonical, n.params, s.z, s.w, s.dw, d2)));
    }
    return worst;
}

}  // namespace

TEST_CASE("normalize_piii: (alpha, beta, 4, -4) closes on a trajectory") {
    const ParamSet p{{P::alpha, 0.6}, {P::beta, -0.2}, {P::gamma, 4.0}, {P::delta, -4.0}};
    const auto n = normalize_piii(p);
    CHECK(n.params.get(P::gamma) == doctest::Approx(1.0));
    CHECK(n.params.get(P::delta) == doctest::Approx(-1.0));
    CHECK(closure(EquationId::PIII6, p, n, 1.0, 0.8, 0.1, 2.0) <= 1e-9);
}

TEST_CASE("normalize_pv: delta = -2 goes to -1/2") {
    const ParamSet p{{P::alpha, 0.3}, {P::beta, -0.4}, {P::gamma, 0.5}, {P::delta, -2.0}};
    const auto n = normalize_pv(p);
    CHECK(n.canonical == EquationId::PV);
    CHECK(n.params.get(P::delta) == -0.5);
    CHECK(closure(EquationId::PV, p, n, 1.0, 0.4, 0.1, 1.8) <= 1e-9);
}

TEST_CASE("complex evaluation") {
    const ParamSet a{{P::alpha, 0.3}};
    const std::complex<double> z{0.5, 0.7}, w{0.2, -0.1}, dw{1.0, 0.3};
    const auto f = second_derivative(EquationId::PII, a, z, w, dw);
    CHECK(std::abs(f - (2.0 * w * w * w + z * w + 0.3)) < 1e-14);
    CHECK_THROWS_AS(second_derivative(EquationId::PV, a, z, w, dw), DomainError);
}
