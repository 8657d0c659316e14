#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "painleve/asymptotics.hpp"
#include "painleve/equations.hpp"
#include "painleve/error.hpp"
#include "painleve/hamiltonian.hpp"
#include "painleve/solver.hpp"
#include "painleve/specialfn.hpp"
#include "painleve/specialsol.hpp"
#include "painleve/transforms.hpp"

using namespace painleve;
using equations::EquationId;
using equations::Param;

namespace {

constexpr int kCases = 1000;
constexpr std::uint64_t kSeed = 20240611;

double uniform(std::mt19937_64& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }

// random parameters that pass the schema and case conditions
equations::ParamSet random_params(EquationId eq, std::mt19937_64& g) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        equations::ParamSet p;
        for (Param f : equations::schema(eq)) p.set(f, uniform(g, 0.0, 1.0) < 0.2 ? 0.0 : uniform(g, -2.0, 2.0));
        try {
            equations::validate(eq, p);
            return p;
        } catch (const ParameterError&) {
        }
    }
    FAIL("no admissible parameters for " << equations::to_string(eq));
    return {};
}

}  // namespace

TEST_CASE("Airy Wronskian Ai Bi' - Ai' Bi = 1/pi") {
    std::mt19937_64 g(kSeed);
    for (int i = 0; i < kCases; ++i) {
        const double x = uniform(g, -30.0, 30.0);
        const auto a = specialfn::airy(x);
        const double scale = std::fabs(a.ai * a.bi_deriv) + std::fabs(a.ai_deriv * a.bi);
        CHECK(std::fabs(a.ai * a.bi_deriv - a.ai_deriv * a.bi - 1 / M_PI) <= 1e-12 * std::max(scale, 1 / M_PI));
    }
}

TEST_CASE("modified Bessel Wronskian I0 K1 + I1 K0 = 1/x") {
    std::mt19937_64 g(kSeed + 1);
    for (int i = 0; i < kCases; ++i) {
        const double x = std::exp(uniform(g, std::log(0.01), std::log(100.0)));
        const auto b = specialfn::bessel_mod(x);
        CHECK(std::fabs((b.i0 * b.k1 + b.i1 * b.k0) * x - 1.0) <= 1e-12);
    }
}

TEST_CASE("log_gamma reflection Gamma(z) Gamma(1-z) = pi / sin(pi z)") {
    std::mt19937_64 g(kSeed + 2);
    for (int i = 0; i < kCases; ++i) {
        const std::complex<double> z{uniform(g, -4.0, 5.0), uniform(g, -3.0, 3.0)};
        if (std::fabs(z.imag()) < 1e-3 && std::fabs(z.real() - std::round(z.real())) < 1e-3) continue;
        const auto lhs = std::exp(specialfn::log_gamma(z) + specialfn::log_gamma(1.0 - z)) * std::sin(M_PI * z) / M_PI;
        CHECK(std::abs(lhs - 1.0) <= 1e-11);
    }
}

TEST_CASE("residual at the right-hand side vanishes for every equation") {
    std::mt19937_64 g(kSeed + 3);
    int checked = 0;
    for (int i = 0; i < kCases; ++i) {
        for (EquationId eq : equations::all_equations()) {
            if (equations::is_sigma(eq)) continue;
            const auto p = random_params(eq, g);
            const double z = uniform(g, 1.2, 4.0), w = uniform(g, 0.1, 0.9) * (eq == EquationId::PVI ? 1.0 : 2.0);
            const double dw = uniform(g, -2.0, 2.0);
            const auto [d1, d2] = equations::rhs(eq, p, {z, w, dw});
            CHECK(d1 == dw);
            CHECK(std::fabs(equations::residual(eq, p, z, w, dw, d2)) <= 1e-13 * (1 + std::fabs(d2)));
            ++checked;
        }
    }
    CHECK(checked >= kCases * 10);
}

TEST_CASE("sigma forms: residual at either branch vanishes") {
    std::mt19937_64 g(kSeed + 4);
    int checked = 0;
    for (int i = 0; i < kCases; ++i) {
        for (EquationId eq : equations::all_equations()) {
            if (!equations::is_sigma(eq)) continue;
            const auto p = random_params(eq, g);
            const double z = uniform(g, 1.2, 4.0), s = uniform(g, -2.0, 2.0), ds = uniform(g, -2.0, 2.0);
            for (int branch : {-1, 1}) {
                try {
                    const double d2 = equations::sigma_second_derivative(eq, p, z, s, ds, branch);
                    const double scale = 1 + d2 * d2 + std::fabs(ds * ds * ds) + std::fabs(s * ds * z) + std::fabs(s * s);
                    CHECK(std::fabs(equations::sigma_residual(eq, p, z, s, ds, d2)) <= 1e-11 * scale);
                    ++checked;
                } catch (const DomainError&) {
                } catch (const SingularInput&) {
                }
            }
        }
    }
    CHECK(checked > kCases);
}

TEST_CASE("q -> p -> q and the sigma form round trip") {
    std::mt19937_64 g(kSeed + 5);
    for (int i = 0; i < kCases; ++i) {
        const double z = uniform(g, -4.0, 4.0), q = uniform(g, -2.0, 2.0), dq = uniform(g, -2.0, 2.0);
        const double a = uniform(g, -1.0, 1.0);
        const double p = hamiltonian::p_from_q(z, q, dq);
        if (std::fabs(p) < 1e-2) continue;
        const double dp = hamiltonian::dp_from_q(z, q, dq, a);
        CHECK(std::fabs(hamiltonian::q_from_p(z, p, dp, a) - q) <= 1e-10 * (1 + std::fabs(q)));

        // sigma = H, sigma' = -p/2, sigma'' = -p'/2, and S_II holds with beta = alpha + 1/2
        const double s = hamiltonian::h2_value({z, q, p, a}), ds = -p / 2, d2s = -dp / 2;
        const double scale = 1 + d2s * d2s + std::fabs(ds * ds * ds) + std::fabs(ds * (z * ds - s));
        CHECK(std::fabs(equations::sigma_residual(EquationId::SII, {{Param::beta, a + 0.5}}, z, s, ds, d2s)) <=
              1e-12 * scale);
        const auto [q2, p2] = hamiltonian::qp_from_sigma(z, s, ds, d2s, a);
        CHECK(std::fabs(q2 - q) <= 1e-9 * (1 + std::fabs(q)));
        CHECK(std::fabs(p2 - p) <= 1e-12 * (1 + std::fabs(p)));
    }
}

TEST_CASE("Yablonskii-Vorob'ev roots come in conjugate pairs") {
    std::map<int, std::vector<std::complex<double>>> roots;
    for (int n = 1; n <= 10; ++n) roots[n] = specialsol::yv_roots(n);
    std::mt19937_64 g(kSeed + 6);
    for (int i = 0; i < kCases; ++i) {
        const int n = std::uniform_int_distribution<int>(1, 10)(g);
        const auto& r = roots[n];
        REQUIRE(r.size() == std::size_t(n * (n + 1) / 2));
        const auto x = r[std::uniform_int_distribution<std::size_t>(0, r.size() - 1)(g)];
        double best = 1e9;
        for (const auto& y : r) best = std::min(best, std::abs(y - std::conj(x)));
        CHECK(best <= 1e-9 * (1 + std::abs(x)));
    }
}

TEST_CASE("trajectory JSON round trip is bit-exact") {
    std::mt19937_64 g(kSeed + 7);
    solver::Trajectory t;
    t.params = {{Param::alpha, uniform(g, -1.0, 1.0)}};
    for (int i = 0; i < kCases; ++i) {
        const double e = uniform(g, -300.0, 300.0);
        t.samples.push_back({double(i) + uniform(g, 0.0, 0.5), uniform(g, -1.0, 1.0) * std::pow(10.0, e / 10),
                             std::nextafter(uniform(g, -1.0, 1.0), 2.0)});
    }
    t.poles.push_back({uniform(g, 0.0, 1.0), 1, -1.0, 1e-12});
    const auto r = solver::trajectory_from_json(solver::to_json(t));
    REQUIRE(r.samples.size() == t.samples.size());
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
        CHECK(r.samples[i].z == t.samples[i].z);
        CHECK(r.samples[i].w == t.samples[i].w);
        CHECK(r.samples[i].dw == t.samples[i].dw);
    }
    CHECK(r.params == t.params);
    CHECK(r.poles[0].z0 == t.poles[0].z0);
}

TEST_CASE("d^2 is even in k and theta0 shifts by pi") {
    std::mt19937_64 g(kSeed + 8);
    for (int i = 0; i < kCases; ++i) {
        const double k = uniform(g, 1e-3, 0.999);
        const auto a = asymptotics::as_connection(k), b = asymptotics::as_connection(-k);
        CHECK(a.d2 == b.d2);
        CHECK(a.d2 > 0.0);
        CHECK(asymptotics::phase_distance(b.theta0 - a.theta0, M_PI, 2 * M_PI) <= 1e-12);
    }
}

TEST_CASE("pointwise P_II -> P34 -> P_II") {
    std::mt19937_64 g(kSeed + 9);
    int checked = 0;
    for (int i = 0; i < kCases; ++i) {
        const double z = uniform(g, 0.5, 3.0), w = uniform(g, -1.0, 1.0), dw = uniform(g, -1.0, 1.0);
        const double a = uniform(g, -1.0, 1.0);
        if (std::fabs(dw + w * w + z / 2) < 0.05) continue;  // p = 0
        transforms::Curve c;
        c.eq = transforms::Eq::PII;
        c.params = {{"alpha", a}};
        c.s = {z};
        c.state = {{w, dw, 0.0}};
        const auto m = transforms::apply(transforms::TransformId::P2_TO_P34, {{c}, "point"});
        const double scale = 1 + std::pow(std::fabs(m.y[0][0]), 3) + std::pow(m.y[0][1], 2) / std::fabs(m.y[0][0]);
        CHECK(std::fabs(transforms::residual(transforms::Eq::P34, m.target_params, m.t[0], m.y[0])) <= 1e-12 * scale);
        transforms::Curve d;
        d.eq = transforms::Eq::P34;
        d.params = m.target_params;
        d.s = m.t;
        d.state = {{m.y[0][0], m.y[0][1], m.y[0][2]}};
        const auto back = transforms::apply(transforms::TransformId::P34_TO_P2, {{d}, "image"});
        CHECK(std::fabs(back.y[0][0] - w) <= 1e-10);
        CHECK(std::fabs(back.y[0][1] - dw) <= 1e-10);
        ++checked;
    }
    CHECK(checked > kCases / 2);
}
