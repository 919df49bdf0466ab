#include <cmath>

#include "doctest.h"
#include "sushchansky/growth.hpp"

using namespace sushchansky;

namespace {

const SushchanskySystem& lex3() {
    static SushchanskySystem sys(OrderType::lex(3));
    return sys;
}

}  // namespace

TEST_CASE("ball sizes of the two-generator group") {
    const auto& sys = lex3();
    auto g = preset(sys, PresetName::G_lambda);
    GrowthReport r = ball_sizes(g, 3);
    CHECK(r.gamma[0] == 1);
    CHECK(r.gamma[1] == 5);  // 1, A, A^-1, B, B^-1 all distinct
    CHECK_FALSE(r.partial);
    CHECK(r.gamma[2] > r.gamma[1]);

    // gamma is nondecreasing and bounded by branching
    size_t sym = 4;
    for (size_t n = 1; n < r.gamma.size(); ++n) {
        CHECK(r.gamma[n] >= r.gamma[n - 1]);
        CHECK(r.gamma[n] <= r.gamma[n - 1] * (sym + 1));
    }
}

TEST_CASE("ball sizes of the three-generator subgroup") {
    const auto& sys = lex3();
    GrowthReport r = ball_sizes(preset(sys, PresetName::H), 2);
    CHECK(r.gamma[0] == 1);
    CHECK(r.gamma[1] == 7);  // identity plus six distinct generator letters
}

TEST_CASE("ball enumeration is deterministic and matches pairwise equality") {
    const auto& sys = lex3();
    auto g = preset(sys, PresetName::G_lambda);
    GrowthReport first = ball_sizes(g, 3);
    GrowthReport second = ball_sizes(g, 3);
    CHECK(first.gamma == second.gamma);

    // brute force: enumerate all words up to length 3 and count distinct
    // elements by exhaustive pairwise equality through the action
    std::vector<Element> sym{sys.A(), sys.A().inverse(), sys.B(), sys.B().inverse()};
    std::vector<Element> words{Element::identity(3)};
    std::vector<Element> frontier = words;
    for (int n = 1; n <= 3; ++n) {
        std::vector<Element> next;
        for (const auto& w : frontier)
            for (const auto& s : sym) next.push_back((w * s).compacted());
        words.insert(words.end(), next.begin(), next.end());
        frontier = std::move(next);
        std::vector<Element> distinct;
        for (const auto& w : words) {
            bool found = false;
            for (const auto& d : distinct)
                if (d == w) found = true;
            if (!found) distinct.push_back(w);
        }
        CHECK(first.gamma[static_cast<size_t>(n)] == distinct.size());
    }
}

TEST_CASE("a finite group exhausts and the ball goes flat") {
    const auto& sys = lex3();
    GroupPreset cyclic{"sigma", {sys.sigma()}};
    GrowthReport r = ball_sizes(cyclic, 5);
    CHECK(r.gamma == std::vector<size_t>{1, 3, 3, 3, 3, 3});
    CHECK_FALSE(r.partial);
}

TEST_CASE("budget truncation is explicit") {
    const auto& sys = lex3();
    BallBudget tiny;
    tiny.max_elements = 10;
    GrowthReport r = ball_sizes(preset(sys, PresetName::H), 6, tiny);
    CHECK(r.partial);
    CHECK(r.radius_achieved < 6);
}

TEST_CASE("torsion table") {
    const auto& sys = lex3();
    GrowthReport r = torsion_table(preset(sys, PresetName::H), 2, 2187);
    CHECK(r.pi[0] == 1);
    CHECK(r.pi[1] == 3);
    CHECK(r.cap_exceeded.empty());
    for (size_t n = 1; n < r.pi.size(); ++n) CHECK(r.pi[n] >= r.pi[n - 1]);
    // every order is a power of three
    for (long long v : r.pi) {
        while (v % 3 == 0) v /= 3;
        CHECK(v == 1);
    }
}

TEST_CASE("eta is the positive root in (0,1)") {
    CHECK_THROWS(eta(2));
    auto f = [](int r, double x) {
        return std::pow(x, r) + std::pow(x, r - 1) + std::pow(x, r - 2) - 2.0;
    };
    double e3 = eta(3);
    CHECK(e3 > 0.0);
    CHECK(e3 < 1.0);
    CHECK(std::abs(f(3, e3)) < 1e-12);
    CHECK(e3 == doctest::Approx(0.81054).epsilon(1e-4));

    double e9 = eta(9);
    CHECK(e9 > 0.9);
    CHECK(e9 < 0.99);
    CHECK(std::abs(f(9, e9)) < 1e-12);

    // independent route: Newton iteration from 0.9
    for (int r = 3; r <= 12; ++r) {
        double x = 0.9;
        for (int it = 0; it < 200; ++it) {
            double fr = f(r, x);
            double dfr = r * std::pow(x, r - 1) + (r - 1) * std::pow(x, r - 2) +
                         (r - 2) * std::pow(x, r - 3);
            x -= fr / dfr;
        }
        CHECK(eta(r) == doctest::Approx(x).epsilon(1e-10));
    }

    // monotone in r, always below one
    double prev = 0.0;
    for (int r = 3; r <= 16; ++r) {
        double e = eta(r);
        CHECK(e > prev);
        CHECK(e < 1.0);
        prev = e;
    }
}

TEST_CASE("growth exponents") {
    Exponents e = exponents(3, 9);
    CHECK(e.alpha == doctest::Approx(std::log(3.0) / (std::log(3.0) + std::log(2.0))).epsilon(1e-12));
    CHECK(e.alpha == doctest::Approx(0.6131471927654584).epsilon(1e-9));
    CHECK(e.beta < 1.0);
    CHECK(e.alpha < e.beta);
    CHECK(e.alpha > 0.0);
    CHECK(e.torsion_exponent == doctest::Approx(std::log(3.0) / std::log(1.0 / e.eta_r)).epsilon(1e-12));
    CHECK(e.torsion_exponent > 0.0);
}

TEST_CASE("growth estimate inequalities at level 2") {
    const auto& sys = lex3();
    GrowthEstimateReport rep = check_growth_estimate(sys, 2, 4);
    CHECK(rep.expansion_C == 3);
    CHECK(rep.all_ok);
    REQUIRE(rep.rows.size() == 5);
    CHECK(rep.rows[0].gamma_G == 1);
    CHECK(rep.rows[0].injection_ok);  // 1 <= N * 1
    for (const auto& row : rep.rows) {
        CHECK(row.injection_ok);
        CHECK(row.h_le_l);
        CHECK(row.l_le_g);
    }
    // the level-2 sections of the generators produce exactly q_1, r_1, sigma
    CHECK(rep.rows[1].gamma_P == 7);
    CHECK(rep.rows[1].gamma_H == 7);
}

TEST_CASE("no infinite orders in small balls of the torsion presets") {
    const auto& sys = lex3();
    for (auto name : {PresetName::G_lambda, PresetName::H, PresetName::L}) {
        auto layers = ball_layers(preset(sys, name).generators, 3, BallBudget{}, nullptr);
        for (const auto& layer : layers)
            for (const auto& e : layer) CHECK_FALSE(order_of(e, 2187).infinite());
    }
}
