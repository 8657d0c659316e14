#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "painleve/equations.hpp"
#include "painleve/error.hpp"
#include "painleve/hamiltonian.hpp"
#include "painleve/solver.hpp"

using namespace painleve;
using namespace painleve::hamiltonian;
using equations::EquationId;
using equations::Param;

TEST_CASE("h2_value examples") {
    for (double z : {-2.0, 0.0, 1.5}) {
        CHECK(h2_value({z, 0.0, 0.0, -0.5}) == 0.0);
        CHECK(h2_value({z, 0.0, z / 2, 0.0}) == doctest::Approx(-z * z / 8).epsilon(1e-15));
    }
}

TEST_CASE("h2_rhs examples") {
    auto r = h2_rhs({0.0, 0.0, 0.0, -0.5});
    CHECK(r.first == 0.0);
    CHECK(r.second == 0.0);
    r = h2_rhs({1.0, 0.0, 0.5, 0.0});
    CHECK(r.first == 0.0);
    CHECK(r.second == 0.5);
}

TEST_CASE("q = 0 maps to p = z/2, a P34(0) solution") {
    for (double z : {-3.0, 0.5, 2.0}) {
        const double p = p_from_q(z, 0.0, 0.0);
        CHECK(p == z / 2);
        CHECK(dp_from_q(z, 0.0, 0.0, 0.0) == 0.5);
        CHECK(std::fabs(equations::residual(EquationId::P34, {{Param::alpha, 0.0}}, z, p, 0.5, 0.0)) < 1e-15);
    }
    CHECK_THROWS_AS(q_from_p(1.0, 0.0, 0.3, 0.0), SingularInput);
}

TEST_CASE("sigma = -z^2/8 gives q = 0, p = z/2") {
    for (double z : {-1.0, 0.7, 3.0}) {
        const auto [q, p] = qp_from_sigma(z, -z * z / 8, -z / 4, -0.25, 0.0);
        CHECK(std::fabs(q) < 1e-15);
        CHECK(p == doctest::Approx(z / 2));
    }
    CHECK_THROWS_AS(qp_from_sigma(1.0, 0.0, 0.0, 0.1, 0.0), SingularInput);
}

TEST_CASE("q -> p -> q along a P_II(0.3) trajectory") {
    const double a = 0.3;
    const auto t = solver::integrate(EquationId::PII, {{Param::alpha, a}}, 0.0, 0.2, -0.1, 2.0, {});
    for (const auto& s : t.samples) {
        const double p = p_from_q(s.z, s.w, s.dw);
        const double dp = dp_from_q(s.z, s.w, s.dw, a);
        CHECK(std::fabs(q_from_p(s.z, p, dp, a) - s.w) < 1e-10);
        const double d2p = dp * dp / (2 * p) + 2 * p * p - s.z * p - (a + 0.5) * (a + 0.5) / (2 * p);
        CHECK(std::fabs(dq_from_p(s.z, p, dp, d2p, a) - s.dw) < 1e-9);
    }
}

TEST_CASE("Hamiltonian system and P_II agree; H is sigma") {
    const double a = 0.3, z0 = 0.0, z1 = 2.0, q0 = 0.2, dq0 = -0.1;
    const auto t = solver::integrate(EquationId::PII, {{Param::alpha, a}}, z0, q0, dq0, z1, {});
    const auto grid = numeric::linspace_step(z0 + 0.25, z1, 0.25);
    // (q, p, sigma) with sigma' = dH/dz = -p/2
    solver::SystemRhs f = [&](double z, const solver::State& y, solver::State& dy) {
        const auto [dq, dp] = h2_rhs({z, y[0], y[1], a});
        dy[0] = dq;
        dy[1] = dp;
        dy[2] = -y[1] / 2;
    };
    const double p0 = p_from_q(z0, q0, dq0);
    const auto sol = solver::integrate_system(f, z0, {q0, p0, h2_value({z0, q0, p0, a})}, z1, {}, grid);
    for (std::size_t i = 0; i < sol.z.size(); ++i) {
        const auto v = t.eval(sol.z[i]);
        CHECK(std::fabs(sol.y[i][0] - v[0]) < 1e-8);
        CHECK(std::fabs(h2_value({sol.z[i], sol.y[i][0], sol.y[i][1], a}) - sol.y[i][2]) < 1e-9);
    }
}
