#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "painleve/error.hpp"
#include "painleve/numeric.hpp"
#include "painleve/transforms.hpp"

using namespace painleve;
using namespace painleve::transforms;

TEST_CASE("registry lists twelve transforms and names round trip") {
    CHECK(all_transforms().size() == 12);
    for (auto id : all_transforms()) {
        CHECK(transform_from_string(to_string(id)) == id);
        CHECK(info(id).id == id);
        CHECK(!info(id).map.empty());
    }
    CHECK_THROWS_AS(transform_from_string("P2_TO_P7"), ParameterError);
    CHECK(info(TransformId::P2_TO_P34).source == Eq::PII);
    CHECK(info(TransformId::P2_TO_P34).target == Eq::P34);
    CHECK(order(Eq::MJ34) == 3);
    CHECK(order(Eq::CSG) == 2);
}

TEST_CASE("every seeded source verifies") {
    for (auto id : all_transforms()) {
        const auto r = verify(id, seeded_source(id), 1e-6);
        INFO(to_string(id), " residual ", r.max_residual, " defect ", r.source_defect, " ", r.reason);
        CHECK(r.pass);
        CHECK(r.points > 10);
        CHECK(r.reason.empty());
    }
}

TEST_CASE("q = 0 maps to p = z/2 and back") {
    const auto r = verify(TransformId::P2_TO_P34, zero_p2(0.5, 5.0, 0.05), 1e-12);
    CHECK(r.pass);
    CHECK(r.max_residual <= 1e-12);
    CHECK(r.target_params.at("alpha") == 0.0);
    const auto m = apply(TransformId::P2_TO_P34, zero_p2(0.5, 5.0, 0.05));
    for (std::size_t i = 0; i < m.t.size(); ++i) {
        CHECK(m.y[i][0] == doctest::Approx(m.t[i] / 2).epsilon(1e-15));
        CHECK(m.y[i][1] == doctest::Approx(0.5).epsilon(1e-15));
    }
    const auto back = apply(TransformId::P34_TO_P2, linear_p34(0.5, 5.0, 0.05));
    for (const auto& y : back.y) CHECK(std::fabs(y[0]) <= 1e-12);
    CHECK(verify(TransformId::P34_TO_P2, linear_p34(0.5, 5.0, 0.05), 1e-10).pass);
}

TEST_CASE("negative controls") {
    // zero data labelled P_II(0.7) is not a solution
    auto src = zero_p2(0.5, 5.0, 0.05);
    src.parts[0].params["alpha"] = 0.7;
    const auto r = verify(TransformId::P2_TO_P34, src, 1e-6);
    CHECK_FALSE(r.pass);
    CHECK(r.source_defect > 1e-3);

    // the right image checked against the wrong target parameter
    const auto w = verify(TransformId::P2_TO_P34, zero_p2(0.5, 5.0, 0.05), 1e-6, {}, Params{{"alpha", 0.3}});
    CHECK_FALSE(w.pass);

    // samples of a genuine solution with noise on w
    auto noisy = seeded_source(TransformId::P2_TO_P34);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1e-4);
    for (auto& st : noisy.parts[0].state) st[0] += g(rng);
    CHECK_FALSE(verify(TransformId::P2_TO_P34, noisy, 1e-6).pass);
}

TEST_CASE("domain failures become failed reports with a reason") {
    // P3_TO_CSG needs beta = 2n + 2, gamma = 1, delta = -1
    auto src = seeded_source(TransformId::P3_TO_CSG);
    src.parts[0].params["beta"] = 5.0;
    const auto r = verify(TransformId::P3_TO_CSG, src, 1e-6);
    CHECK_FALSE(r.pass);
    CHECK(!r.reason.empty());

    // INCE_XX needs u > 0 for the square root
    auto ince = integrate_source(Eq::INCE_XX, {}, 0.0, {-1.0, 0.0, 0.0}, 0.3, 0.01);
    const auto ri = verify(TransformId::INCEXX_TO_P2, ince, 1e-6);
    CHECK_FALSE(ri.pass);
    CHECK(!ri.reason.empty());
    CHECK_THROWS_AS(apply(TransformId::INCEXX_TO_P2, ince), DomainError);

    // wrong source equation
    CHECK_THROWS_AS(apply(TransformId::P34_TO_P2, zero_p2(0.5, 1.0, 0.1)), ParameterError);
}

TEST_CASE("P_II -> P34 -> P_II returns the original samples") {
    const auto src = seeded_source(TransformId::P2_TO_P34);
    const auto m = apply(TransformId::P2_TO_P34, src);
    Curve c;
    c.eq = Eq::P34;
    c.params = m.target_params;
    c.s = m.t;
    for (const auto& y : m.y) c.state.push_back({y[0], y[1], y[2]});
    const auto back = apply(TransformId::P34_TO_P2, Source{{c}, "image"});
    const auto& orig = src.parts[0];
    REQUIRE(back.t.size() == orig.s.size());
    for (std::size_t i = 0; i < orig.s.size(); ++i) {
        CHECK(back.t[i] == doctest::Approx(orig.s[i]).epsilon(1e-14));
        CHECK(std::fabs(back.y[i][0] - orig.state[i][0]) <= 1e-9);
        CHECK(std::fabs(back.y[i][1] - orig.state[i][1]) <= 1e-9);
    }
    CHECK(back.target_params.at("alpha") == doctest::Approx(orig.params.at("alpha")).epsilon(1e-14));
}

TEST_CASE("image derivatives agree with finite differences of image values") {
    for (auto id : {TransformId::TZITZEICA_TO_P3D7, TransformId::INCEXX_TO_P2, TransformId::MJ34_TO_P34EQ}) {
        const auto m = apply(id, seeded_source(id));
        std::vector<double> y(m.t.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = m.y[i][0];
        const auto d1 = numeric::differentiate(m.t, y, 1);
        double worst = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
            worst = std::max(worst, std::fabs(d1[i] - m.y[i][1]) / (1 + std::fabs(m.y[i][1])));
        INFO(to_string(id), " ", worst);
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("first integrals are constant along third-order solutions") {
    SUBCASE("MJ267") {
        // y'' at x = 0 from the first integral with K = 0.5, y = 1, y' = 0
        const double d2 = 0.5 + 0.5 - 1.5;
        const auto s = integrate_source(Eq::MJ267, {{"kappa", 1.0}, {"mu", 1.0}}, 0.0, {1.0, 0.0, d2}, 0.5, 0.005);
        const auto r = first_integral(TransformId::MJ267_TO_P4, s.parts[0]);
        CHECK(r.pass);
        REQUIRE(r.invariants.size() == 1);
        CHECK(r.invariants[0].value == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.invariants[0].max_drift <= 1e-7);
    }
    SUBCASE("MJ34 and MJ36") {
        for (auto [id, eq] : {std::pair{TransformId::MJ34_TO_P34EQ, Eq::MJ34}, std::pair{TransformId::MJ36_TO_P34EQ, Eq::MJ36}}) {
            const auto s = integrate_source(eq, {{"kappa", 1.0}}, 0.0, {1.0, 0.5, 0.2}, 0.5, 0.005);
            const auto r = first_integral(id, s.parts[0]);
            INFO(to_string(id));
            CHECK(r.pass);
            CHECK(r.invariants.size() == 2);
            for (const auto& t : r.invariants) CHECK(t.max_drift <= 1e-7);

            auto noisy = s.parts[0];
            for (std::size_t i = 0; i < noisy.s.size(); ++i) noisy.state[i][2] += 1e-3 * std::sin(7 * noisy.s[i]);
            CHECK_FALSE(first_integral(id, noisy).pass);
        }
    }
    CHECK_THROWS_AS(first_integral(TransformId::P2_TO_P34, seeded_source(TransformId::P2_TO_P34).parts[0]),
                    ParameterError);
    CHECK_THROWS_AS(first_integral(TransformId::MJ36_TO_P34EQ, seeded_source(TransformId::MJ34_TO_P34EQ).parts[0]),
                    ParameterError);
}

TEST_CASE("report JSON carries the verdict") {
    const auto r = verify(TransformId::P2_TO_P34, zero_p2(0.5, 5.0, 0.05), 1e-10);
    const auto j = r.to_json();
    CHECK(j.find("\"P2_TO_P34\"") != std::string::npos);
    CHECK(j.find("\"pass\": true") != std::string::npos);
}
