#include <random>

#include "doctest.h"
#include "sushchansky/construction.hpp"
#include "sushchansky/tableau.hpp"

using namespace sushchansky;

namespace {

const SushchanskySystem& lex3() {
    static SushchanskySystem sys(OrderType::lex(3));
    return sys;
}

Element random_product(const SushchanskySystem& sys, std::mt19937& rng, int len) {
    std::vector<Element> gens{sys.A(), sys.A().inverse(), sys.B(), sys.B().inverse()};
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    Element e = Element::identity(sys.p());
    for (int i = 0; i < len; ++i) e = (e * gens[pick(rng)]).compacted();
    return e;
}

}  // namespace

TEST_CASE("identity tableau and inverses") {
    auto [ta, tb] = sushchansky_tableaux(lex3().lambda(), 4);
    Tableau id(3, 4);
    CHECK(id.is_zero());
    CHECK(tab_multiply(id, ta) == ta);
    CHECK(tab_multiply(ta, tab_inverse(ta)) == id);
    CHECK(tab_multiply(tb, tab_inverse(tb)) == id);
    CHECK_THROWS(tab_multiply(ta, Tableau(3, 5)));  // depth mismatch
}

TEST_CASE("squaring the first generator tableau") {
    auto [ta, tb] = sushchansky_tableaux(lex3().lambda(), 3);
    Tableau sq = tab_multiply(ta, ta);
    CHECK(sq.value(1, {}) == 2);
    // second coordinate x_1 + (x_1 + 1) = 2 x_1 + 1
    CHECK(sq.value(2, {0}) == 1);
    CHECK(sq.value(2, {1}) == 0);
    CHECK(sq.value(2, {2}) == 2);
    for (const Word& pt : all_words(3, 2)) CHECK(sq.value(3, pt) == 0);
}

TEST_CASE("tableau action on words") {
    auto [ta, tb] = sushchansky_tableaux(lex3().lambda(), 4);
    Tableau id(3, 4);
    CHECK(tab_act(id, parse_word("012", 3)) == parse_word("012", 3));
    CHECK(tab_act(ta, parse_word("12", 3)) == parse_word("20", 3));
    // b_3(2,1) = 1 shifts the third letter
    for (Letter x = 0; x < 3; ++x) {
        Word w{2, 1, x};
        Word img = tab_act(tb, w);
        CHECK(img[0] == 2);
        CHECK(img[1] == 1);
        CHECK(img[2] == (x + 1) % 3);
    }
    CHECK_THROWS(tab_act(ta, parse_word("00000", 3)));  // longer than depth
}

TEST_CASE("defining values of the generator tableaux") {
    CHECK_THROWS(sushchansky_tableaux(lex3().lambda(), 2));
    auto [ta, tb] = sushchansky_tableaux(lex3().lambda(), 6);

    CHECK(ta.value(1, {}) == 1);
    for (Letter x = 0; x < 3; ++x) CHECK(ta.value(2, {x}) == x);
    for (const Word& pt : all_words(3, 2)) CHECK(ta.value(3, pt) == 0);

    CHECK(tb.value(1, {}) == 0);
    for (Letter x = 0; x < 3; ++x) CHECK(tb.value(2, {x}) == 0);
    CHECK(tb.value(3, {2, 1}) == 1);
    for (const Word& pt : all_words(3, 2))
        if (pt != Word{2, 1}) CHECK(tb.value(3, pt) == 0);

    // spine values come from u and v: b_{j+3}(0^{j+1}, 1) = u_j, b_{j+3}(1, 0^j, 1) = v_j
    const UVWords& uv = lex3().uv();
    CHECK(tb.value(4, {0, 0, 1}) == uv.u[0]);  // u_1 = 0 for lex
    CHECK(tb.value(4, {1, 0, 1}) == uv.v[0]);  // v_1 = 1
    CHECK(tb.value(5, {0, 0, 0, 1}) == uv.u[1]);
    CHECK(tb.value(5, {1, 0, 0, 1}) == uv.v[1]);
    CHECK(tb.value(6, {0, 0, 0, 0, 1}) == uv.u[2]);
    CHECK(tb.value(6, {1, 0, 0, 0, 1}) == uv.v[2]);
}

TEST_CASE("tableaux act exactly like the automaton generators") {
    const auto& sys = lex3();
    auto [ta, tb] = sushchansky_tableaux(sys.lambda(), 6);
    for (int n = 1; n <= 6; ++n)
        for (const Word& w : all_words(3, n)) {
            CHECK(tab_act(ta, w) == sys.A().apply(w));
            CHECK(tab_act(tb, w) == sys.B().apply(w));
        }
}

TEST_CASE("reading tableaux off elements") {
    const auto& sys = lex3();
    CHECK(tableau_from_element(Element::identity(3), 5).is_zero());

    auto [ta, tb] = sushchansky_tableaux(sys.lambda(), 6);
    CHECK(tableau_from_element(sys.A(), 6) == ta);
    CHECK(tableau_from_element(sys.B(), 6) == tb);

    // elements outside the sigma-Sylow subgroup are rejected
    Perm swap01(std::vector<Letter>{1, 0, 2});
    CHECK_THROWS(tableau_from_element(Element::rooted(swap01), 3));
}

TEST_CASE("tableau reading is a homomorphism") {
    const auto& sys = lex3();
    std::mt19937 rng(31);
    for (int i = 0; i < 12; ++i) {
        Element g = random_product(sys, rng, 1 + static_cast<int>(rng() % 5));
        Element h = random_product(sys, rng, 1 + static_cast<int>(rng() % 5));
        Tableau prod = tableau_from_element((g * h).compacted(), 5);
        Tableau split = tab_multiply(tableau_from_element(g, 5), tableau_from_element(h, 5));
        CHECK(prod == split);
    }
}

TEST_CASE("tableau multiplication is associative") {
    const auto& sys = lex3();
    std::mt19937 rng(37);
    for (int i = 0; i < 8; ++i) {
        Tableau a = tableau_from_element(random_product(sys, rng, 2), 5);
        Tableau b = tableau_from_element(random_product(sys, rng, 3), 5);
        Tableau c = tableau_from_element(random_product(sys, rng, 2), 5);
        CHECK(tab_multiply(tab_multiply(a, b), c) == tab_multiply(a, tab_multiply(b, c)));
    }
}

TEST_CASE("tableau json round trip") {
    auto [ta, tb] = sushchansky_tableaux(lex3().lambda(), 4);
    CHECK(Tableau::from_json(tb.to_json()) == tb);
    CHECK(Tableau::from_json(ta.to_json()) == ta);
}
