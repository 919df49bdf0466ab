#include <set>

#include "doctest.h"
#include "sushchansky/alphabet.hpp"

using namespace sushchansky;

TEST_CASE("alphabet rejects non-prime and even sizes") {
    CHECK_THROWS(Alphabet(4));
    CHECK_THROWS(Alphabet(2));
    CHECK_THROWS(Alphabet(1));
    CHECK_NOTHROW(Alphabet(3));
    CHECK_NOTHROW(Alphabet(7));
}

TEST_CASE("field arithmetic over F_p") {
    Alphabet f5(5);
    CHECK(f5.add(3, 4) == 2);
    CHECK(f5.neg(2) == 3);
    CHECK(f5.neg(0) == 0);
    CHECK(f5.inv(2) == 3);
    CHECK(f5.inv(4) == 4);
    CHECK_THROWS(f5.inv(0));
    for (int a = 1; a < 5; ++a) CHECK(f5.mul(a, f5.inv(a)) == 1);
    CHECK(f5.reduce(-7) == 3);
}

TEST_CASE("sigma powers") {
    Alphabet f3(3);
    CHECK(sigma_power(f3, 0).is_identity());
    Perm s = sigma_power(f3, 1);
    CHECK(s(0) == 1);
    CHECK(s(1) == 2);
    CHECK(s(2) == 0);
    CHECK(sigma_power(f3, 4) == s);          // modular reduction
    CHECK(sigma_power(f3, -1) == sigma_power(f3, 2));
    CHECK(s.sigma_exponent() == 1);
    CHECK(Perm(std::vector<Letter>{0, 2, 1}).sigma_exponent() == -1);
}

TEST_CASE("composition is left to right") {
    Alphabet f3(3);
    Perm s = sigma_power(f3, 1);
    CHECK(perm_compose(s, sigma_power(f3, 2)).is_identity());  // sigma o sigma^{p-1}
    CHECK(perm_compose(s, s) == sigma_power(f3, 2));
    CHECK(perm_compose(Perm::identity(3), s) == s);
    Perm swap01(std::vector<Letter>{1, 0, 2});
    CHECK(perm_compose(s, swap01)(0) == 0);  // swap01(s(0)) = swap01(1) = 0
    CHECK_THROWS(perm_compose(s, Perm::identity(5)));
}

TEST_CASE("orders of sigma powers") {
    for (int p : {3, 5, 7}) {
        Alphabet fp(p);
        for (int k = 0; k < p; ++k) {
            int expected = k == 0 ? 1 : p;  // p prime, so every nonzero shift has order p
            CHECK(perm_order(sigma_power(fp, k)) == expected);
        }
    }
}

TEST_CASE("permutations of three letters close into a group of size 6") {
    std::set<std::vector<Letter>> all;
    std::vector<Perm> gens{Perm(std::vector<Letter>{1, 0, 2}), Perm(std::vector<Letter>{1, 2, 0})};
    std::vector<Perm> frontier{Perm::identity(3)};
    all.insert(frontier[0].images());
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& g : frontier)
            for (const auto& h : gens) {
                Perm prod = perm_compose(g, h);
                if (all.insert(prod.images()).second) next.push_back(prod);
            }
        frontier = std::move(next);
    }
    CHECK(all.size() == 6);
    for (const auto& images : all) {
        Perm g{std::vector<Letter>(images)};
        CHECK(perm_compose(g, g.inverse()).is_identity());
    }
}

TEST_CASE("word helpers") {
    CHECK(parse_word("0120", 3) == Word{0, 1, 2, 0});
    CHECK_THROWS(parse_word("03", 3));
    CHECK(word_str(Word{2, 1}) == "21");
    auto words = all_words(3, 2);
    CHECK(words.size() == 9);
    CHECK(words.front() == Word{0, 0});
    CHECK(words.back() == Word{2, 2});
}
