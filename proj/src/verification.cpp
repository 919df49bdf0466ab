#include "sushchansky/verification.hpp"

#include <algorithm>
#include <stdexcept>

#include "sushchansky/analysis.hpp"
#include "sushchansky/growth.hpp"
#include "sushchansky/tableau.hpp"

namespace sushchansky {

namespace {

void add(std::vector<CheckResult>& out, std::string name, std::string claim, bool pass,
         std::string detail = "") {
    out.push_back(CheckResult{std::move(name), std::move(claim), pass, std::move(detail)});
}

std::vector<CheckResult> suite_abelian(const SushchanskySystem& sys) {
    std::vector<CheckResult> out;
    int p2 = sys.p() * sys.p();
    std::vector<Element> gens;
    for (int i = 1; i <= sys.uv().t; ++i) gens.push_back(sys.q(i));
    for (int i = 1; i <= p2; ++i) gens.push_back(sys.r(i));
    bool commute = true;
    for (size_t i = 0; i < gens.size() && commute; ++i)
        for (size_t j = i + 1; j < gens.size() && commute; ++j)
            commute = (gens[i] * gens[j]).compacted() == (gens[j] * gens[i]).compacted();
    add(out, "pairwise-commute", "the q_i and r_j all commute with each other", commute);
    bool powers = true;
    for (const auto& g : gens) powers = powers && g.pow(sys.p()).is_trivial();
    add(out, "p-th-powers", "every q_i and r_j has trivial p-th power", powers);
    return out;
}

std::vector<CheckResult> suite_orders(const SushchanskySystem& sys) {
    std::vector<CheckResult> out;
    long long cap = 1;
    for (int i = 0; i < 7; ++i) cap *= sys.p();
    OrderResult a = order_of(sys.A(), cap);
    add(out, "order-A", "the generator A has order p", a.finite() && a.value == sys.p(),
        a.finite() ? "order " + std::to_string(a.value) : "not finite under cap");
    OrderResult b = order_of(sys.B(), cap);
    add(out, "order-B", "the generator B has order p", b.finite() && b.value == sys.p(),
        b.finite() ? "order " + std::to_string(b.value) : "not finite under cap");
    bool qr = true;
    for (int i = 1; i <= sys.p() * sys.p(); ++i) {
        OrderResult oq = order_of(sys.q(i), cap);
        OrderResult orr = order_of(sys.r(i), cap);
        qr = qr && oq.finite() && oq.value == sys.p() && orr.finite() && orr.value == sys.p();
    }
    add(out, "order-qr", "every q_i and r_i has order p", qr);
    return out;
}

std::vector<CheckResult> suite_orbit_tree(const SushchanskySystem& sys) {
    std::vector<CheckResult> out;
    int p = sys.p();
    GroupPreset g = preset(sys, PresetName::G_lambda);
    Word origin = parse_word("00", p);
    auto orb = orbit_of(g.generators, origin);
    bool contains = true;
    for (const char* w : {"00", "10", "21"})
        contains = contains && std::find(orb.begin(), orb.end(), parse_word(w, p)) != orb.end();
    add(out, "orbit-00", "the level-2 orbit of 00 has size p and contains 00, 10, 21",
        orb.size() == static_cast<size_t>(p) && contains,
        "size " + std::to_string(orb.size()));

    OrbitTree tree = orbit_tree(g.generators, 5);
    bool shape_ok = tree.levels[0].size() == 1 &&
                    tree.levels[0][0].size == static_cast<size_t>(p);
    size_t expected_v = static_cast<size_t>(p);  // spine orbit size p^{n-1} at level n
    for (size_t n = 2; n <= 5; ++n) {
        const auto& level = tree.levels[n - 1];
        size_t v_orbits = 0, w_orbits = 0;
        for (const auto& node : level) {
            if (node.representative == Word(n, 0)) {
                shape_ok = shape_ok && node.size == expected_v;
                ++v_orbits;
            } else {
                shape_ok = shape_ok && node.size == static_cast<size_t>(p);
                ++w_orbits;
            }
        }
        size_t total = 1;
        for (size_t i = 0; i < n; ++i) total *= static_cast<size_t>(p);
        shape_ok = shape_ok && v_orbits == 1 &&
                   w_orbits == (total - expected_v) / static_cast<size_t>(p);
        expected_v *= static_cast<size_t>(p);
    }
    add(out, "orbit-shape",
        "each level splits into one spine orbit of full size and size-p orbits elsewhere",
        shape_ok);

    bool t_trans = is_level_transitive({sys.A_on_T(), sys.B_on_T()}, 4);
    add(out, "t-transitive", "the simplified action is level transitive to depth 4", t_trans);
    bool x_not = !is_level_transitive(g.generators, 2);
    add(out, "xstar-not-transitive", "the original action is not transitive on level 2", x_not);
    return out;
}

std::vector<CheckResult> suite_branch(const SushchanskySystem& sys) {
    std::vector<CheckResult> out;
    int p2 = sys.p() * sys.p();
    bool all = true;
    std::string bad;
    for (int k = 1; k <= p2; ++k)
        for (const auto& id : branch_witnesses(sys, k))
            if (!id.ok) {
                all = false;
                bad = id.description;
            }
    add(out, "branch-identities",
        "the three level-1 commutator identities hold for every index k", all, bad);

    bool kp = true;
    for (auto target : {std::vector<KLetter>{{KLetter::Kind::Sigma, 1, 1}},
                        std::vector<KLetter>{{KLetter::Kind::Q, 1, 1}},
                        std::vector<KLetter>{{KLetter::Kind::R, 1, 1}}}) {
        KpWitness w = kp_branch_witness(sys, target);
        kp = kp && w.shape_ok && w.power_ok;
    }
    add(out, "kp-witness",
        "the self-replication lift w satisfies w^p = (target^p, 1, ..., 1) for sigma, q_1, r_1",
        kp);
    return out;
}

std::vector<CheckResult> suite_ggroup(const SushchanskySystem& sys) {
    std::vector<CheckResult> out;
    GGroupSpec spec = h_group_spec(sys);
    ConditionReport rep = check_ggroup_conditions(spec);
    add(out, "conditions", "the H spec satisfies the transitivity and kill/survive conditions",
        rep.ok, rep.failure);
    if (rep.ok) {
        auto gens = build_ggroup(spec);
        bool match = gens.size() == 3 && gens[0] == sys.sigma() && gens[1] == sys.q(1) &&
                     gens[2] == sys.r(1);
        add(out, "generators-match",
            "the directed construction reproduces sigma, q_1, r_1 exactly", match);
    }
    GGroupSpec broken = spec;
    broken.root_generators = {Perm::identity(sys.p())};
    bool rejected = !check_ggroup_conditions(broken).ok;
    add(out, "mutant-rejected", "a spec with intransitive root part is rejected", rejected,
        check_ggroup_conditions(broken).failure);
    auto r = check_homogeneous(spec);
    add(out, "homogeneous", "the homomorphism sequence is r'-homogeneous for some r' <= p^2",
        r.has_value() && *r <= sys.p() * sys.p(),
        r ? "r' = " + std::to_string(*r) : "no window works");
    return out;
}

std::vector<CheckResult> suite_infinite_order(const SushchanskySystem& sys) {
    std::vector<CheckResult> out;
    WitnessCertificate cert = infinite_order_witness(sys);
    add(out, "certificate", "the explicit element's power recursion closes back on itself",
        cert.ok, cert.description);
    OrderResult r = order_of(cert.g, 1000000);
    add(out, "order-infinite", "the order computation reports infinite order for the witness",
        r.infinite());
    return out;
}

std::vector<CheckResult> suite_tableau_agreement(const SushchanskySystem& sys) {
    std::vector<CheckResult> out;
    int depth = 6;
    auto [ta, tb] = sushchansky_tableaux(sys.lambda(), depth);
    auto agree = [&](const Tableau& t, const Element& g) {
        for (int n = 1; n <= depth; ++n)
            for (const Word& w : all_words(sys.p(), n))
                if (tab_act(t, w) != g.apply(w)) return false;
        return true;
    };
    add(out, "A-agrees", "the tableau of A acts exactly as the automaton A to depth 6",
        agree(ta, sys.A()));
    add(out, "B-agrees", "the tableau of B acts exactly as the automaton B to depth 6",
        agree(tb, sys.B()));
    bool readback = tableau_from_element(sys.B(), depth) == tb &&
                    tableau_from_element(sys.A(), depth) == ta;
    add(out, "readback", "reading tableaux off the automaton recovers the defining values",
        readback);
    Element prod = (sys.A() * sys.B()).compacted();
    bool hom = tableau_from_element(prod, depth) ==
               tab_multiply(tableau_from_element(sys.A(), depth),
                            tableau_from_element(sys.B(), depth));
    add(out, "homomorphism", "tableau multiplication matches automaton multiplication on A*B",
        hom);
    return out;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    return {"abelian",        "orders", "orbit-tree",        "branch",
            "ggroup",         "infinite-order", "tableau-agreement", "all"};
}

std::vector<CheckResult> verify_suite(const SushchanskySystem& sys, const std::string& suite) {
    if (suite == "abelian") return suite_abelian(sys);
    if (suite == "orders") return suite_orders(sys);
    if (suite == "orbit-tree") return suite_orbit_tree(sys);
    if (suite == "branch") return suite_branch(sys);
    if (suite == "ggroup") return suite_ggroup(sys);
    if (suite == "infinite-order") return suite_infinite_order(sys);
    if (suite == "tableau-agreement") return suite_tableau_agreement(sys);
    if (suite == "all") {
        std::vector<CheckResult> out;
        for (const auto& name : verify_suite_names()) {
            if (name == "all") continue;
            auto part = verify_suite(sys, name);
            for (auto& c : part) c.name = name + "/" + c.name;
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw std::invalid_argument("unknown verification suite: " + suite);
}

}  // namespace sushchansky
