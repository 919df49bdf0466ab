#include <random>
#include <set>

#include "doctest.h"
#include "sushchansky/construction.hpp"
#include "sushchansky/mealy.hpp"

using namespace sushchansky;

namespace {

const SushchanskySystem& lex3() {
    static SushchanskySystem sys(OrderType::lex(3));
    return sys;
}

std::vector<Element> symmetric_generators(const SushchanskySystem& sys) {
    return {sys.A(), sys.A().inverse(), sys.B(), sys.B().inverse()};
}

Element random_product(const SushchanskySystem& sys, std::mt19937& rng, int len) {
    auto gens = symmetric_generators(sys);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    Element e = Element::identity(sys.p());
    for (int i = 0; i < len; ++i) e = (e * gens[pick(rng)]).compacted();
    return e;
}

}  // namespace

TEST_CASE("action of the generators on words") {
    const auto& sys = lex3();
    CHECK(Element::identity(3).apply(parse_word("0120", 3)) == parse_word("0120", 3));

    // rooted sigma shifts only the first letter
    Element s = sys.sigma();
    CHECK(s.apply(parse_word("12", 3)) == parse_word("22", 3));

    // A = (1, s, s^2)s: second letter picks up the first
    CHECK(sys.A().apply(parse_word("12", 3)) == parse_word("20", 3));
}

TEST_CASE("wreath decompositions of the named elements") {
    const auto& sys = lex3();
    auto da = decompose(sys.A());
    CHECK(da.root_perm == sigma_power(Alphabet(3), 1));
    CHECK(da.sections[0].is_trivial());
    CHECK(da.sections[1] == sys.sigma());
    CHECK(da.sections[2] == sys.sigma(2));

    // q_1 = (q_2, s^{u_1}, 1) with u_1 = 0 for the lexicographic order
    auto dq = decompose(sys.q(1));
    CHECK(dq.root_perm.is_identity());
    CHECK(dq.sections[0] == sys.q(2));
    CHECK(dq.sections[1].is_trivial());
    CHECK(dq.sections[2].is_trivial());

    auto did = decompose(Element::identity(3));
    CHECK(did.root_perm.is_identity());
    for (const auto& s : did.sections) CHECK(s.is_trivial());

    // wrap: section 0 of q_{p^2} is q_1
    CHECK(decompose(sys.q(9)).sections[0] == sys.q(1));
}

TEST_CASE("recompose undoes decompose") {
    const auto& sys = lex3();
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        Element g = random_product(sys, rng, 1 + static_cast<int>(rng() % 5));
        auto d = decompose(g);
        CHECK(recompose(d.root_perm, d.sections) == g);
    }
}

TEST_CASE("products follow the wreath multiplication rule") {
    const auto& sys = lex3();
    Element q1 = sys.q(1), r1 = sys.r(1);

    CHECK((sys.A() * sys.A().inverse()).is_trivial());

    // q_1 r_1 = (q_2 r_2, s^{u_1 + v_1}, 1); lex has u_1 = 0, v_1 = 1
    auto d = decompose((q1 * r1).compacted());
    CHECK(d.root_perm.is_identity());
    CHECK(d.sections[0] == (sys.q(2) * sys.r(2)).compacted());
    CHECK(d.sections[1] == sys.sigma());
    CHECK(d.sections[2].is_trivial());

    CHECK((q1 * r1).compacted() == (r1 * q1).compacted());

    CHECK_THROWS(sys.A() * Element::identity(5));
}

TEST_CASE("product sections match the formula on random pairs") {
    const auto& sys = lex3();
    std::mt19937 rng(11);
    for (int i = 0; i < 25; ++i) {
        Element g = random_product(sys, rng, 1 + static_cast<int>(rng() % 4));
        Element h = random_product(sys, rng, 1 + static_cast<int>(rng() % 4));
        Element gh = g * h;
        CHECK(gh.root() == perm_compose(g.root(), h.root()));
        for (int x = 0; x < 3; ++x) {
            Element expected = (g.section(x) * h.section(g.root()(x))).compacted();
            CHECK(gh.section(x).compacted() == expected);
        }
    }
}

TEST_CASE("inverses") {
    const auto& sys = lex3();
    CHECK(Element::identity(3).inverse().is_trivial());
    CHECK(sys.sigma().inverse() == sys.sigma(2));

    // order of A is p: the triple product of A with itself collapses
    CHECK((sys.A() * sys.A() * sys.A()).is_trivial());
    CHECK(sys.A().inverse() == (sys.A() * sys.A()).compacted());

    std::mt19937 rng(13);
    for (int i = 0; i < 10; ++i) {
        Element g = random_product(sys, rng, 1 + static_cast<int>(rng() % 5));
        CHECK((g * g.inverse()).is_trivial());
    }
}

TEST_CASE("minimization of the union automaton hits the closed-form counts") {
    SushchanskySystem lex(OrderType::lex(3));
    CHECK(lex.uv().t == 3);
    CHECK(lex.automaton().states.size() == 26);              // 2p^2 + p + 5 raw
    CHECK(lex.automaton_minimized().states.size() == 20);    // p^2 + 2p + 5

    SushchanskySystem swapped(OrderType::lex_swapped(3));
    CHECK(swapped.uv().t == 9);
    CHECK(swapped.automaton_minimized().states.size() == 26);  // 2p^2 + p + 5
}

TEST_CASE("minimization collapses identity-behaving states") {
    MealyMachine m;
    m.p = 3;
    // two states that both behave as the identity, plus a sigma state
    m.add_state(Perm::identity(3), {1, 1, 1});
    m.add_state(Perm::identity(3), {0, 0, 0});
    MealyMachine q = minimize(m);
    CHECK(q.states.size() == 1);
    CHECK(q.identity_state() == 0);

    MealyMachine q2 = minimize(q);
    CHECK(q2.states.size() == q.states.size());  // idempotent
}

TEST_CASE("minimize is idempotent and separates non-bisimilar states") {
    const auto& sys = lex3();
    MealyMachine once = sys.automaton_minimized();
    MealyMachine twice = minimize(once);
    CHECK(once.states.size() == twice.states.size());
    // pairwise non-bisimilar: all canonical forms of states differ
    auto shared = std::make_shared<const MealyMachine>(once);
    std::set<std::vector<int32_t>> enc;
    for (size_t s = 0; s < once.states.size(); ++s)
        enc.insert(Element(shared, static_cast<int>(s)).canonical().encoding);
    CHECK(enc.size() == once.states.size());
}

TEST_CASE("equality is exact and matches action comparison") {
    const auto& sys = lex3();
    CHECK((sys.q(1) * sys.r(1)).compacted() == (sys.r(1) * sys.q(1)).compacted());
    CHECK_FALSE(sys.A() == Element::identity(3));
    CHECK(sys.B().pow(3).is_trivial());

    std::mt19937 rng(17);
    for (int i = 0; i < 15; ++i) {
        Element g = random_product(sys, rng, 1 + static_cast<int>(rng() % 5));
        Element h = random_product(sys, rng, 1 + static_cast<int>(rng() % 5));
        bool same_action = true;
        for (int n = 1; n <= 7 && same_action; ++n)
            for (const Word& w : all_words(3, n))
                if (g.apply(w) != h.apply(w)) {
                    same_action = false;
                    break;
                }
        CHECK((g == h) == same_action);
    }
}

TEST_CASE("canonical form acts exactly like the raw machine") {
    const auto& sys = lex3();
    std::mt19937 rng(19);
    for (int i = 0; i < 10; ++i) {
        Element g = random_product(sys, rng, 1 + static_cast<int>(rng() % 5));
        Element c = g.compacted();
        for (int n = 1; n <= 6; ++n)
            for (const Word& w : all_words(3, n)) CHECK(g.apply(w) == c.apply(w));
    }
}

TEST_CASE("orders of the basic elements") {
    const auto& sys = lex3();
    long long cap = 2187;
    CHECK(order_of(Element::identity(3), cap).value == 1);
    CHECK(order_of(sys.A(), cap).value == 3);
    CHECK(order_of(sys.B(), cap).value == 3);
    CHECK_THROWS(order_of(sys.A(), 0));

    // every nontrivial product q_i^a r_j^b has order exactly p
    for (int i = 1; i <= sys.uv().t; ++i)
        for (int j = 1; j <= 9; ++j)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    if (a == 0 && b == 0) continue;
                    Element g = (sys.q(i).pow(a) * sys.r(j).pow(b)).compacted();
                    OrderResult r = order_of(g, cap);
                    CHECK(r.finite());
                    CHECK(r.value == 3);
                }
}

TEST_CASE("recursive order agrees with brute force on small products") {
    const auto& sys = lex3();
    std::mt19937 rng(23);
    for (int i = 0; i < 12; ++i) {
        Element g = random_product(sys, rng, 1 + static_cast<int>(rng() % 3));
        auto brute = order_brute_force(g, 81);
        OrderResult rec = order_of(g, 81);
        if (brute) {
            CHECK(rec.finite());
            CHECK(rec.value == *brute);
        } else {
            CHECK_FALSE(rec.finite());
        }
    }
}

TEST_CASE("the infinite-order element of K is recognized") {
    const auto& sys = lex3();
    // g = q_1 q_2 q_3 s^2 satisfies g^3 = (g, *, *)
    Element g = (sys.q(1) * sys.q(2) * sys.q(3) * sys.sigma(2)).compacted();
    CHECK(g.pow(3).section(0).compacted() == g);
    CHECK(order_of(g, 1000000).infinite());
}

TEST_CASE("nucleus closure of the trivial group") {
    auto result = nucleus_closure({Element::identity(3)}, 10);
    REQUIRE(result.has_value());
    CHECK(result->size() == 1);
    CHECK((*result)[0].is_trivial());
}

TEST_CASE("nucleus closure of the full state set stays within budget") {
    const auto& sys = lex3();
    GroupPreset closure = preset(sys, PresetName::Closure);
    auto result = nucleus_closure(closure.generators, 10000);
    REQUIRE(result.has_value());
    CHECK(result->size() > 20);

    // closed under restriction and inversion, and contains the generators
    std::set<std::vector<int32_t>> member;
    for (const auto& e : *result) member.insert(e.canonical().encoding);
    for (const auto& e : *result) {
        for (int x = 0; x < 3; ++x)
            CHECK(member.count(e.section(x).canonical().encoding) == 1);
        CHECK(member.count(e.inverse().canonical().encoding) == 1);
    }
    for (const auto& g : closure.generators) CHECK(member.count(g.canonical().encoding) == 1);
}

TEST_CASE("a non-contracting machine exhausts the nucleus budget") {
    // p = 3 version of the two-state exchange machine: a = (a, b, 1)s, b = (b, a, 1)
    auto m = std::make_shared<MealyMachine>();
    m->p = 3;
    Alphabet f3(3);
    m->add_state(Perm::identity(3), {0, 0, 0});
    m->add_state(sigma_power(f3, 1), {1, 2, 0});   // a
    m->add_state(Perm::identity(3), {2, 1, 0});    // b
    Element a(m, 1), b(m, 2);
    CHECK_FALSE(nucleus_closure({a, b}, 2000).has_value());
}

TEST_CASE("boundedness of the union automaton and test doubles") {
    const auto& sys = lex3();
    CHECK(is_bounded(sys.automaton()));
    CHECK(is_bounded(sys.automaton_minimized()));
    CHECK(is_bounded(SushchanskySystem(OrderType::lex_swapped(3)).automaton()));

    // the machine of A alone: A feeds rooted sigma powers, so the nontrivial
    // part is acyclic
    CHECK(is_bounded(sys.A().compacted().machine()));
    CHECK(is_bounded(Element::rooted(sigma_power(Alphabet(3), 1)).machine()));

    // a = (a, b, 1)s, b = (b, a, 1)s: the states sit on two linked cycles
    MealyMachine bad;
    bad.p = 3;
    Alphabet f3(3);
    bad.add_state(Perm::identity(3), {0, 0, 0});
    bad.add_state(sigma_power(f3, 1), {1, 2, 0});
    bad.add_state(sigma_power(f3, 1), {2, 1, 0});
    CHECK_FALSE(is_bounded(bad));
}

TEST_CASE("dot export is deterministic and well formed") {
    const auto& sys = lex3();
    std::string one = export_dot(Element::identity(3).canonical().states.empty()
                                     ? sys.automaton()
                                     : Element::identity(3).compacted().machine());
    CHECK(one.find("digraph") == 0);
    CHECK(std::count(one.begin(), one.end(), '[') >= 1);

    std::string dot = export_dot(sys.automaton_minimized(), sys.minimized_state_names());
    CHECK(dot == export_dot(sys.automaton_minimized(), sys.minimized_state_names()));
    // one node line per state
    size_t nodes = 0;
    for (size_t pos = dot.find("label="); pos != std::string::npos; pos = dot.find("label=", pos + 1))
        ++nodes;
    CHECK(nodes >= 20);
    CHECK(dot.back() == '\n');
    CHECK(dot.find("}") != std::string::npos);
}

TEST_CASE("machine json round trips") {
    const auto& sys = lex3();
    std::string text = machine_to_json(sys.automaton_minimized());
    MealyMachine back = machine_from_json(text);
    CHECK(back.states.size() == sys.automaton_minimized().states.size());
    auto shared = std::make_shared<const MealyMachine>(back);
    for (size_t s = 0; s < back.states.size(); ++s) {
        Element e(shared, static_cast<int>(s));
        Element orig(std::make_shared<const MealyMachine>(sys.automaton_minimized()),
                     static_cast<int>(s));
        CHECK(e == orig);
    }
    CHECK_THROWS(machine_from_json("{\"p\":3,\"states\":[{\"out\":[0,1,2],\"next\":[5,0,0]}]}"));
}
