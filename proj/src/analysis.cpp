#include "sushchansky/analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace sushchansky {

// ---------------------------------------------------------------------------
// orbits

namespace {

size_t word_index(const Word& w, int p) {
    size_t idx = 0;
    for (Letter x : w) idx = idx * static_cast<size_t>(p) + static_cast<size_t>(x);
    return idx;
}

Word word_at(size_t idx, int n, int p) {
    Word w(static_cast<size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        w[static_cast<size_t>(i)] = static_cast<Letter>(idx % static_cast<size_t>(p));
        idx /= static_cast<size_t>(p);
    }
    return w;
}

std::vector<Element> with_inverses(const std::vector<Element>& generators) {
    std::vector<Element> out;
    for (const auto& g : generators) {
        out.push_back(g);
        out.push_back(g.inverse());
    }
    return out;
}

}  // namespace

std::vector<Word> orbit_of(const std::vector<Element>& generators, const Word& v) {
    auto gens = with_inverses(generators);
    std::set<Word> seen{v};
    std::vector<Word> frontier{v};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const Word& w : frontier)
            for (const auto& g : gens) {
                Word img = g.apply(w);
                if (seen.insert(img).second) next.push_back(img);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

OrbitTree orbit_tree(const std::vector<Element>& generators, int depth) {
    if (generators.empty()) throw std::invalid_argument("orbit tree needs generators");
    int p = generators[0].p();
    auto gens = with_inverses(generators);
    OrbitTree tree;
    tree.p = p;
    std::vector<int> prev_orbit_of;  // orbit index per vertex at the previous level
    size_t prev_count = 1;
    for (int n = 1; n <= depth; ++n) {
        size_t count = 1;
        for (int i = 0; i < n; ++i) count *= static_cast<size_t>(p);
        std::vector<int> orbit_idx(count, -1);
        std::vector<OrbitNode> nodes;
        for (size_t start = 0; start < count; ++start) {
            if (orbit_idx[start] >= 0) continue;
            int id = static_cast<int>(nodes.size());
            OrbitNode node;
            node.representative = word_at(start, n, p);
            if (n == 1)
                node.parent = -1;
            else
                node.parent = prev_orbit_of[start / static_cast<size_t>(p)];
            std::vector<size_t> frontier{start};
            orbit_idx[start] = id;
            size_t size = 1;
            while (!frontier.empty()) {
                size_t cur = frontier.back();
                frontier.pop_back();
                Word w = word_at(cur, n, p);
                for (const auto& g : gens) {
                    size_t img = word_index(g.apply(w), p);
                    if (orbit_idx[img] < 0) {
                        orbit_idx[img] = id;
                        frontier.push_back(img);
                        ++size;
                    }
                }
            }
            node.size = size;
            nodes.push_back(std::move(node));
        }
        tree.levels.push_back(std::move(nodes));
        prev_orbit_of = std::move(orbit_idx);
        prev_count = count;
    }
    (void)prev_count;
    return tree;
}

bool is_level_transitive(const std::vector<Element>& generators, int depth) {
    OrbitTree tree = orbit_tree(generators, depth);
    for (const auto& level : tree.levels)
        if (level.size() != 1) return false;
    return true;
}

namespace {

std::string shape_of(const OrbitTree& tree, int level, int node) {
    std::vector<std::string> kids;
    if (level + 1 < static_cast<int>(tree.levels.size()))
        for (size_t j = 0; j < tree.levels[static_cast<size_t>(level) + 1].size(); ++j)
            if (tree.levels[static_cast<size_t>(level) + 1][j].parent == node)
                kids.push_back(shape_of(tree, level + 1, static_cast<int>(j)));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + std::to_string(tree.levels[static_cast<size_t>(level)][static_cast<size_t>(node)].size);
    for (const auto& k : kids) s += k;
    return s + ")";
}

}  // namespace

std::string orbit_tree_shape(const OrbitTree& tree) {
    if (tree.levels.empty()) return "()";
    std::vector<std::string> tops;
    for (size_t i = 0; i < tree.levels[0].size(); ++i)
        tops.push_back(shape_of(tree, 0, static_cast<int>(i)));
    std::sort(tops.begin(), tops.end());
    std::string s = "(root";
    for (const auto& t : tops) s += t;
    return s + ")";
}

std::string orbit_tree_json(const OrbitTree& tree) {
    nlohmann::ordered_json j;
    j["p"] = tree.p;
    j["levels"] = nlohmann::ordered_json::array();
    for (const auto& level : tree.levels) {
        nlohmann::ordered_json l = nlohmann::ordered_json::array();
        for (const auto& node : level) {
            nlohmann::ordered_json o;
            o["size"] = node.size;
            o["representative"] = word_str(node.representative);
            o["parent"] = node.parent;
            l.push_back(std::move(o));
        }
        j["levels"].push_back(std::move(l));
    }
    return j.dump(2) + "\n";
}

std::string orbit_tree_dot(const OrbitTree& tree) {
    std::ostringstream os;
    os << "digraph orbits {\n  rankdir=TB;\n  root [label=\"root\"];\n";
    for (size_t n = 0; n < tree.levels.size(); ++n)
        for (size_t i = 0; i < tree.levels[n].size(); ++i) {
            const auto& node = tree.levels[n][i];
            os << "  o" << n + 1 << "_" << i << " [label=\"" << word_str(node.representative)
               << " (" << node.size << ")\"];\n";
            if (n == 0)
                os << "  root -> o1_" << i << ";\n";
            else
                os << "  o" << n << "_" << node.parent << " -> o" << n + 1 << "_" << i << ";\n";
        }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// infinite-order witness

WitnessCertificate infinite_order_witness(const SushchanskySystem& sys) {
    const UVWords& uv = sys.uv();
    int p = sys.p();
    int p2 = p * p;
    WitnessCertificate cert;
    if (uv.t == p) {
        // g = q_1 q_2 ... q_t sigma^{p-1}; then g^p = (g, *, ..., *)
        Element g = sys.q(1);
        std::string desc = "q1";
        for (int i = 2; i <= uv.t; ++i) {
            g = g * sys.q(i);
            desc += " q" + std::to_string(i);
        }
        g = (g * sys.sigma(p - 1)).compacted();
        cert.g = g;
        cert.description = desc + " s^" + std::to_string(p - 1);
        Element fixed = g.pow(p).section(0).compacted();
        cert.ok = fixed == g;
        cert.steps.push_back(std::string("section(g^p, 0) == g: ") + (cert.ok ? "yes" : "no"));
        return cert;
    }

    // t = p^2: pick the least cyclic distance d not attained between zeros of u
    std::vector<int> zeros;
    for (int i = 0; i < p2; ++i)
        if (uv.u[static_cast<size_t>(i)] == 0) zeros.push_back(i);
    std::set<int> attained;
    for (int z1 : zeros)
        for (int z2 : zeros)
            if (z1 != z2) attained.insert(((z2 - z1) % p2 + p2) % p2);
    int d = -1;
    for (int cand = 1; cand < p2; ++cand)
        if (!attained.count(cand)) {
            d = cand;
            break;
        }
    if (d < 0) throw std::logic_error("no unattained zero distance; u has too many zeros");
    cert.distance_d = d;

    auto u_at = [&](int i) { return uv.u[static_cast<size_t>(((i - 1) % p2 + p2) % p2)]; };
    auto g_at = [&](int i) {
        return (sys.q(i) * sys.q(d + i) * sys.sigma(u_at(i - 1) + u_at(d + i - 1))).compacted();
    };
    cert.g = g_at(1);
    cert.description = "q1 q" + std::to_string(d + 1) + " s^" +
                       std::to_string((u_at(0) + u_at(d)) % p);
    cert.ok = true;
    for (int i = 1; i <= p2; ++i) {
        Element gi = g_at(i);
        Element next = g_at(i + 1);
        int e = (u_at(i - 1) + u_at(d + i - 1)) % p;
        bool root_moves = e % p != 0;
        Element sec = gi.pow(p).section(0).compacted();
        bool step_ok = root_moves && sec == next;
        cert.steps.push_back("step " + std::to_string(i) + ": root is a p-cycle and section(g_" +
                             std::to_string(i) + "^p, 0) == g_" + std::to_string(i + 1) + ": " +
                             (step_ok ? "yes" : "no"));
        cert.ok = cert.ok && step_ok;
    }
    return cert;
}

// ---------------------------------------------------------------------------
// branch witnesses

std::vector<BranchIdentity> branch_witnesses(const SushchanskySystem& sys, int k) {
    int p = sys.p();
    int p2 = p * p;
    Alphabet fp(p);
    const UVWords& uv = sys.uv();
    Letter uk = uv.u[static_cast<size_t>(((k - 1) % p2 + p2) % p2)];
    Letter vk = uv.v[static_cast<size_t>(((k - 1) % p2 + p2) % p2)];

    // conjugating element: (sigma, 1, ..., 1, x_{k+1}^{1/e}) built from the
    // generator with nonzero exit exponent e at index k
    Element carrier = uk != 0 ? sys.q(k) : sys.r(k);
    Letter e = uk != 0 ? uk : vk;
    if (e == 0) throw std::logic_error("both u_k and v_k vanish; lambda is invalid");
    Element tool = conjugate(carrier, sys.sigma(-1)).pow(fp.inv(e)).compacted();

    Element trivial = Element::identity(p);
    auto first_section_identity = [&](const Element& lhs, const Element& inner) {
        // lhs should equal (inner, 1, ..., 1)
        if (!(lhs.section(0).compacted() == inner)) return false;
        for (int x = 1; x < p; ++x)
            if (!lhs.section(x).is_trivial()) return false;
        return lhs.root().is_identity();
    };

    std::vector<BranchIdentity> out;
    std::string tool_name = uk != 0 ? "(q_k^{s^-1})^{1/u_k}" : "(r_k^{s^-1})^{1/v_k}";
    {
        BranchIdentity id1;
        id1.description = "[q_" + std::to_string(k) + ", r_" + std::to_string(k) +
                          "] = ([q_" + std::to_string(k + 1) + ", r_" + std::to_string(k + 1) +
                          "], 1, ..., 1)";
        Element lhs = commutator(sys.q(k), sys.r(k));
        Element inner = commutator(sys.q(k + 1), sys.r(k + 1));
        id1.ok = first_section_identity(lhs, inner);
        out.push_back(std::move(id1));
    }
    {
        BranchIdentity id2;
        id2.description = "[q_" + std::to_string(k) + ", " + tool_name + "] = ([q_" +
                          std::to_string(k + 1) + ", s], 1, ..., 1)";
        Element lhs = commutator(sys.q(k), tool);
        Element inner = commutator(sys.q(k + 1), sys.sigma());
        id2.ok = first_section_identity(lhs, inner);
        out.push_back(std::move(id2));
    }
    {
        BranchIdentity id3;
        id3.description = "[r_" + std::to_string(k) + ", " + tool_name + "] = ([r_" +
                          std::to_string(k + 1) + ", s], 1, ..., 1)";
        Element lhs = commutator(sys.r(k), tool);
        Element inner = commutator(sys.r(k + 1), sys.sigma());
        id3.ok = first_section_identity(lhs, inner);
        out.push_back(std::move(id3));
    }
    (void)trivial;
    return out;
}

// ---------------------------------------------------------------------------
// K^p branch witness

KpWitness kp_branch_witness(const SushchanskySystem& sys, const std::vector<KLetter>& word) {
    int p = sys.p();
    int p2 = p * p;
    Alphabet fp(p);
    const UVWords& uv = sys.uv();

    // first index with nonzero u; its conjugate sigma q_m sigma^{-1} = (sigma^{u_m}, 1, ..., 1, q_{m+1})
    int m = -1;
    for (int i = 1; i <= p2; ++i)
        if (uv.u[static_cast<size_t>(i - 1)] != 0) {
            m = i;
            break;
        }
    if (m < 0) throw std::logic_error("u is identically zero; lambda is invalid");
    Element sigma_lift =
        conjugate(sys.q(m), sys.sigma(-1)).pow(fp.inv(uv.u[static_cast<size_t>(m - 1)])).compacted();

    auto letter_element = [&](const KLetter& l) -> Element {
        switch (l.kind) {
            case KLetter::Kind::Q: return sys.q(l.index).pow(l.exponent);
            case KLetter::Kind::R: return sys.r(l.index).pow(l.exponent);
            case KLetter::Kind::Sigma: return sys.sigma(l.exponent);
        }
        throw std::logic_error("unreachable");
    };
    auto letter_lift = [&](const KLetter& l) -> Element {
        switch (l.kind) {
            case KLetter::Kind::Q: return sys.q(l.index - 1).pow(l.exponent);
            case KLetter::Kind::R: return sys.r(l.index - 1).pow(l.exponent);
            case KLetter::Kind::Sigma: return sigma_lift.pow(l.exponent);
        }
        throw std::logic_error("unreachable");
    };

    KpWitness wit;
    Element target = Element::identity(p);
    Element lift = Element::identity(p);
    for (const auto& l : word) {
        target = (target * letter_element(l)).compacted();
        lift = (lift * letter_lift(l)).compacted();
    }
    wit.target = target;
    wit.lift = lift;

    // shape: (target, sigma^i, 1, ..., 1, q-power) with trivial root
    wit.shape_ok = lift.root().is_identity() && lift.section(0).compacted() == target &&
                   lift.section(1).root().sigma_exponent() >= 0;
    for (int x = 1; x < p; ++x) {
        Element sec = lift.section(x).compacted();
        if (x == 1) {
            // a rooted sigma power: all subsections trivial
            for (int y = 0; y < p; ++y) wit.shape_ok = wit.shape_ok && sec.section(y).is_trivial();
        } else if (x < p - 1) {
            wit.shape_ok = wit.shape_ok && sec.is_trivial();
        } else {
            // power of q_{m+1}
            bool is_q_power = false;
            for (int j = 0; j < p; ++j)
                if (sec == sys.q(m + 1).pow(j)) is_q_power = true;
            wit.shape_ok = wit.shape_ok && is_q_power;
        }
    }

    Element wp = lift.pow(p);
    wit.lift_p = wp;
    bool power_ok = wp.root().is_identity() && wp.section(0).compacted() == target.pow(p);
    for (int x = 1; x < p; ++x) power_ok = power_ok && wp.section(x).is_trivial();
    wit.power_ok = power_ok;
    return wit;
}

// ---------------------------------------------------------------------------
// directed groups from homomorphism sequences

FiniteGroupTable zp_squared(int p) {
    FiniteGroupTable g;
    g.size = p * p;
    g.table.resize(static_cast<size_t>(g.size) * static_cast<size_t>(g.size));
    for (int a = 0; a < g.size; ++a)
        for (int b = 0; b < g.size; ++b) {
            int k = (a / p + b / p) % p;
            int l = (a % p + b % p) % p;
            g.table[static_cast<size_t>(a) * static_cast<size_t>(g.size) + static_cast<size_t>(b)] =
                k * p + l;
        }
    g.generators = {p, 1};  // (1,0) and (0,1)
    return g;
}

namespace {

bool transitive_on_letters(const std::vector<Perm>& perms, int p) {
    if (perms.empty()) return p == 1;
    std::vector<bool> seen(static_cast<size_t>(p), false);
    std::vector<Letter> frontier{0};
    seen[0] = true;
    int count = 1;
    while (!frontier.empty()) {
        Letter x = frontier.back();
        frontier.pop_back();
        for (const auto& g : perms) {
            for (Letter y : {g(x), g.inverse()(x)})
                if (!seen[static_cast<size_t>(y)]) {
                    seen[static_cast<size_t>(y)] = true;
                    frontier.push_back(y);
                    ++count;
                }
        }
    }
    return count == p;
}

}  // namespace

ConditionReport check_ggroup_conditions(const GGroupSpec& spec) {
    ConditionReport rep;
    int period = static_cast<int>(spec.homs.size());
    if (period == 0 || spec.directed.size == 0) {
        rep.ok = false;
        rep.failure = "empty homomorphism sequence or directed part";
        return rep;
    }
    for (const auto& row : spec.homs)
        if (static_cast<int>(row.size()) != spec.directed.size)
            throw std::invalid_argument("homomorphism table row does not cover D");
    // each w_i must be a homomorphism
    for (int i = 0; i < period; ++i)
        for (int a = 0; a < spec.directed.size; ++a)
            for (int b = 0; b < spec.directed.size; ++b) {
                Perm lhs = spec.homs[static_cast<size_t>(i)][static_cast<size_t>(spec.directed.mul(a, b))];
                Perm rhs = perm_compose(spec.homs[static_cast<size_t>(i)][static_cast<size_t>(a)],
                                        spec.homs[static_cast<size_t>(i)][static_cast<size_t>(b)]);
                if (!(lhs == rhs))
                    throw std::invalid_argument("w_" + std::to_string(i + 1) +
                                                " is not a homomorphism of D");
            }

    if (!transitive_on_letters(spec.root_generators, spec.p)) {
        rep.ok = false;
        rep.failure = "condition (i): the root part does not act transitively on X";
        return rep;
    }
    for (int i = 0; i < period; ++i) {
        std::vector<Perm> image;
        for (int d = 0; d < spec.directed.size; ++d)
            image.push_back(spec.homs[static_cast<size_t>(i)][static_cast<size_t>(d)]);
        if (!transitive_on_letters(image, spec.p)) {
            rep.ok = false;
            rep.failure = "condition (i): w_" + std::to_string(i + 1) +
                          "(D) does not act transitively on X";
            return rep;
        }
    }
    for (int d = 0; d < spec.directed.size; ++d) {
        bool killed = false, alive = false;
        for (int i = 0; i < period; ++i) {
            if (spec.homs[static_cast<size_t>(i)][static_cast<size_t>(d)].is_identity())
                killed = true;
            else
                alive = true;
        }
        if (!killed) {
            rep.ok = false;
            rep.failure = "condition (ii): element " + std::to_string(d) +
                          " of D is never sent to the identity within a period";
            return rep;
        }
        if (d != 0 && !alive) {
            rep.ok = false;
            rep.failure = "condition (iii): nontrivial element " + std::to_string(d) +
                          " of D is sent to the identity by every homomorphism";
            return rep;
        }
    }
    return rep;
}

std::vector<Element> build_ggroup(const GGroupSpec& spec) {
    ConditionReport rep = check_ggroup_conditions(spec);
    if (!rep.ok) throw std::invalid_argument("not a valid directed-group spec: " + rep.failure);
    int p = spec.p;
    int period = static_cast<int>(spec.homs.size());

    std::vector<Element> gens;
    for (const auto& perm : spec.root_generators) gens.push_back(Element::rooted(perm));

    for (int d : spec.directed.generators) {
        // spine machine: state i routes 0 -> state i+1 (mod period) and
        // 1 -> rooted w_{i+1}(d)
        auto m = std::make_shared<MealyMachine>();
        m->p = p;
        m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
        std::map<std::vector<Letter>, int> rooted_idx;
        for (int i = 0; i < period; ++i)
            m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
        for (int i = 0; i < period; ++i) {
            int s = 1 + i;
            m->states[static_cast<size_t>(s)].next[0] = 1 + (i + 1) % period;
            const Perm& w = spec.homs[static_cast<size_t>(i)][static_cast<size_t>(d)];
            if (!w.is_identity()) {
                auto [it, inserted] = rooted_idx.try_emplace(w.images(), 0);
                if (inserted)
                    it->second = m->add_state(w, std::vector<int>(static_cast<size_t>(p), 0));
                m->states[static_cast<size_t>(s)].next[1] = it->second;
            }
        }
        gens.push_back(Element(std::shared_ptr<const MealyMachine>(std::move(m)), 1).compacted());
    }
    return gens;
}

GGroupSpec h_group_spec(const SushchanskySystem& sys) {
    int p = sys.p();
    Alphabet fp(p);
    GGroupSpec spec;
    spec.p = p;
    spec.root_generators = {sigma_power(fp, 1)};
    spec.directed = zp_squared(p);
    const UVWords& uv = sys.uv();
    for (size_t i = 0; i < uv.u.size(); ++i) {
        std::vector<Perm> row;
        for (int d = 0; d < spec.directed.size; ++d) {
            int k = d / p, l = d % p;
            row.push_back(sigma_power(fp, k * uv.u[i] + l * uv.v[i]));
        }
        spec.homs.push_back(std::move(row));
    }
    return spec;
}

std::optional<int> check_homogeneous(const GGroupSpec& spec) {
    int period = static_cast<int>(spec.homs.size());
    auto window_kills_all = [&](int start, int len) {
        for (int d = 0; d < spec.directed.size; ++d) {
            bool killed = false;
            for (int j = 0; j < len && !killed; ++j)
                killed = spec.homs[static_cast<size_t>((start + j) % period)][static_cast<size_t>(d)]
                             .is_identity();
            if (!killed) return false;
        }
        return true;
    };
    for (int len = 1; len <= 2 * period; ++len) {
        bool all = true;
        for (int start = 0; start < period && all; ++start) all = window_kills_all(start, len);
        if (all) return len;
    }
    return std::nullopt;
}

}  // namespace sushchansky
