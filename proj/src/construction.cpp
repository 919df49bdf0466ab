#include "sushchansky/construction.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace sushchansky {

OrderType::OrderType(int p_in, std::vector<std::pair<int, int>> pairs_in, std::string label_in)
    : p(p_in), pairs(std::move(pairs_in)), label(std::move(label_in)) {
    Alphabet alphabet(p);  // validates primality
    size_t expect = static_cast<size_t>(p) * static_cast<size_t>(p);
    if (pairs.size() != expect)
        throw std::invalid_argument("order type needs exactly p^2 pairs, got " +
                                    std::to_string(pairs.size()));
    std::vector<bool> seen(expect, false);
    for (size_t i = 0; i < pairs.size(); ++i) {
        auto [a, b] = pairs[i];
        if (a < 0 || a >= p || b < 0 || b >= p)
            throw std::invalid_argument("pair index " + std::to_string(i + 1) +
                                        " is out of F_p x F_p");
        size_t code = static_cast<size_t>(a) * static_cast<size_t>(p) + static_cast<size_t>(b);
        if (seen[code])
            throw std::invalid_argument("pair index " + std::to_string(i + 1) + " duplicates (" +
                                        std::to_string(a) + "," + std::to_string(b) + ")");
        seen[code] = true;
    }
}

OrderType OrderType::lex(int p) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) pairs.emplace_back(a, b);
    return OrderType(p, std::move(pairs), "lex");
}

OrderType OrderType::lex_swapped(int p) {
    auto base = lex(p);
    std::swap(base.pairs[1], base.pairs[static_cast<size_t>(p)]);  // (0,1) <-> (1,0)
    return OrderType(p, std::move(base.pairs), "lex-swapped");
}

OrderType OrderType::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int p = j.at("p").get<int>();
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : j.at("pairs")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("pair index " + std::to_string(pairs.size() + 1) +
                                        " is not a two-element array");
        pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return OrderType(p, std::move(pairs));
}

std::string OrderType::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["pairs"] = nlohmann::ordered_json::array();
    for (auto [a, b] : pairs) j["pairs"].push_back({a, b});
    return j.dump(2) + "\n";
}

const std::pair<int, int>& OrderType::pair(int i) const {
    int n = static_cast<int>(pairs.size());
    int idx = ((i - 1) % n + n) % n;
    return pairs[static_cast<size_t>(idx)];
}

UVWords derive_uv(const OrderType& lambda) {
    Alphabet fp(lambda.p);
    UVWords uv;
    for (auto [a, b] : lambda.pairs) {
        uv.u.push_back(b == 0 ? 0 : 1);
        uv.v.push_back(b == 0 ? 1 : fp.neg(fp.div(a, b)));
    }
    // minimal cyclic period; divisors of p^2 are 1, p, p^2
    int n = static_cast<int>(uv.u.size());
    auto periodic = [&](int d) {
        for (int i = 0; i < n; ++i)
            if (uv.u[static_cast<size_t>(i)] != uv.u[static_cast<size_t>((i + d) % n)]) return false;
        return true;
    };
    uv.t = n;
    for (int d : {1, lambda.p})
        if (periodic(d)) {
            uv.t = d;
            break;
        }
    return uv;
}

namespace {

// Raw state layout of the union automaton:
//   0        identity
//   1..p-1   sigma^k
//   p        A
//   p+1      B
//   p+2..p+4 the level-1 states of B routing to q_1 / r_1 / sigma
//   p+5..          q_1..q_{p^2}
//   p+5+p^2..      r_1..r_{p^2}
std::shared_ptr<MealyMachine> build_union_automaton(const OrderType& lambda, const UVWords& uv,
                                                    std::vector<std::string>* names) {
    int p = lambda.p;
    int p2 = p * p;
    auto m = std::make_shared<MealyMachine>();
    m->p = p;
    Alphabet fp(p);
    auto sigma_state = [&](Letter k) { return k % p == 0 ? 0 : k % p; };

    m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
    names->push_back("1");
    for (int k = 1; k < p; ++k) {
        m->add_state(sigma_power(fp, k), std::vector<int>(static_cast<size_t>(p), 0));
        names->push_back(k == 1 ? "s" : "s^" + std::to_string(k));
    }

    {
        std::vector<int> next(static_cast<size_t>(p));
        for (int x = 0; x < p; ++x) next[static_cast<size_t>(x)] = sigma_state(x);
        m->add_state(sigma_power(fp, 1), std::move(next));
        names->push_back("A");
    }

    int idx_B = static_cast<int>(m->states.size());
    m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
    names->push_back("B");
    int idx_b0 = m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
    names->push_back("B|0");
    int idx_b1 = m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
    names->push_back("B|1");
    int idx_b2 = m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
    names->push_back("B|2");

    int idx_q = static_cast<int>(m->states.size());
    for (int i = 1; i <= p2; ++i) {
        std::vector<int> next(static_cast<size_t>(p), 0);
        next[0] = idx_q + i % p2;  // q_{i+1}, wrapping
        next[1] = sigma_state(uv.u[static_cast<size_t>(i - 1)]);
        m->add_state(Perm::identity(p), std::move(next));
        names->push_back("q" + std::to_string(i));
    }
    int idx_r = static_cast<int>(m->states.size());
    for (int i = 1; i <= p2; ++i) {
        std::vector<int> next(static_cast<size_t>(p), 0);
        next[0] = idx_r + i % p2;
        next[1] = sigma_state(uv.v[static_cast<size_t>(i - 1)]);
        m->add_state(Perm::identity(p), std::move(next));
        names->push_back("r" + std::to_string(i));
    }

    m->states[static_cast<size_t>(idx_B)].next[0] = idx_b0;
    m->states[static_cast<size_t>(idx_B)].next[1] = idx_b1;
    m->states[static_cast<size_t>(idx_B)].next[2] = idx_b2;
    m->states[static_cast<size_t>(idx_b0)].next[0] = idx_q;
    m->states[static_cast<size_t>(idx_b1)].next[0] = idx_r;
    m->states[static_cast<size_t>(idx_b2)].next[1] = sigma_state(1);
    return m;
}

// T-action machine: identity, sigma powers, B = (q_1, r_1, sigma, 1, ...), q/r cycles.
std::shared_ptr<MealyMachine> build_t_machine(const OrderType& lambda, const UVWords& uv) {
    int p = lambda.p;
    int p2 = p * p;
    auto m = std::make_shared<MealyMachine>();
    m->p = p;
    Alphabet fp(p);
    auto sigma_state = [&](Letter k) { return k % p == 0 ? 0 : k % p; };

    m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
    for (int k = 1; k < p; ++k)
        m->add_state(sigma_power(fp, k), std::vector<int>(static_cast<size_t>(p), 0));

    int idx_B = m->add_state(Perm::identity(p), std::vector<int>(static_cast<size_t>(p), 0));
    int idx_q = static_cast<int>(m->states.size());
    for (int i = 1; i <= p2; ++i) {
        std::vector<int> next(static_cast<size_t>(p), 0);
        next[0] = idx_q + i % p2;
        next[1] = sigma_state(uv.u[static_cast<size_t>(i - 1)]);
        m->add_state(Perm::identity(p), std::move(next));
    }
    int idx_r = static_cast<int>(m->states.size());
    for (int i = 1; i <= p2; ++i) {
        std::vector<int> next(static_cast<size_t>(p), 0);
        next[0] = idx_r + i % p2;
        next[1] = sigma_state(uv.v[static_cast<size_t>(i - 1)]);
        m->add_state(Perm::identity(p), std::move(next));
    }
    m->states[static_cast<size_t>(idx_B)].next[0] = idx_q;
    m->states[static_cast<size_t>(idx_B)].next[1] = idx_r;
    m->states[static_cast<size_t>(idx_B)].next[2] = sigma_state(1);
    return m;
}

}  // namespace

SushchanskySystem::SushchanskySystem(OrderType lambda)
    : lambda_(std::move(lambda)), uv_(derive_uv(lambda_)) {
    auv_ = build_union_automaton(lambda_, uv_, &names_);
    auv_min_ = std::make_shared<const MealyMachine>(minimize(*auv_));
    t_machine_ = build_t_machine(lambda_, uv_);
    int p = lambda_.p;
    idx_A_ = p;
    idx_B_ = p + 1;
    idx_q1_ = p + 5;
    idx_r1_ = p + 5 + p * p;
    t_idx_B_ = p;
    t_idx_q1_ = p + 1;
    t_idx_r1_ = p + 1 + p * p;
}

Element SushchanskySystem::make(int state) const { return Element(auv_, state); }
Element SushchanskySystem::make_t(int state) const { return Element(t_machine_, state); }

Element SushchanskySystem::A() const { return make(idx_A_); }
Element SushchanskySystem::B() const { return make(idx_B_); }
Element SushchanskySystem::identity() const { return make(0); }

Element SushchanskySystem::q(int i) const {
    int p2 = p() * p();
    int idx = ((i - 1) % p2 + p2) % p2;
    return make(idx_q1_ + idx);
}

Element SushchanskySystem::r(int i) const {
    int p2 = p() * p();
    int idx = ((i - 1) % p2 + p2) % p2;
    return make(idx_r1_ + idx);
}

Element SushchanskySystem::sigma(long long k) const {
    int c = static_cast<int>((k % p() + p()) % p());
    return make(c == 0 ? 0 : c);
}

Element SushchanskySystem::A_on_T() const { return make_t(1); }
Element SushchanskySystem::B_on_T() const { return make_t(t_idx_B_); }

std::vector<std::string> SushchanskySystem::minimized_state_names() const {
    std::vector<std::string> out(auv_min_->states.size());
    std::vector<bool> taken(auv_min_->states.size(), false);
    for (size_t raw = 0; raw < auv_->states.size(); ++raw) {
        Element e(auv_, static_cast<int>(raw));
        for (size_t s = 0; s < auv_min_->states.size(); ++s) {
            if (taken[s]) continue;
            if (Element(auv_min_, static_cast<int>(s)) == e) {
                out[s] = names_[raw];
                taken[s] = true;
                break;
            }
        }
    }
    return out;
}

GroupPreset preset(const SushchanskySystem& sys, PresetName name, int k, ActionKind kind) {
    GroupPreset g;
    Element a = (kind == ActionKind::XStar) ? sys.A() : sys.A_on_T();
    Element b = (kind == ActionKind::XStar) ? sys.B() : sys.B_on_T();
    int p2 = sys.p() * sys.p();
    switch (name) {
        case PresetName::G_lambda:
            g.name = "G_lambda";
            g.generators = {a, b};
            break;
        case PresetName::Closure: {
            g.name = "closure";
            const MealyMachine& m = sys.automaton_minimized();
            int trivial = m.identity_state();
            auto shared = std::make_shared<const MealyMachine>(m);
            for (size_t s = 0; s < m.states.size(); ++s)
                if (static_cast<int>(s) != trivial)
                    g.generators.emplace_back(shared, static_cast<int>(s));
            break;
        }
        case PresetName::K: {
            g.name = "K";
            for (int i = 1; i <= sys.uv().t; ++i) g.generators.push_back(sys.q(i));
            for (int i = 1; i <= p2; ++i) g.generators.push_back(sys.r(i));
            g.generators.push_back(sys.sigma());
            break;
        }
        case PresetName::H:
            g.name = "H";
            g.generators = {sys.q(1), sys.r(1), sys.sigma()};
            break;
        case PresetName::H_k: {
            if (k < 1 || k > p2)
                throw std::invalid_argument("H_k needs 1 <= k <= p^2");
            g.name = "H_" + std::to_string(k);
            g.generators = {sys.q(k), sys.r(k), sys.sigma()};
            break;
        }
        case PresetName::L: {
            g.name = "L";
            int p = sys.p();
            Element conj1 = (a * b * a.pow(p - 1)).compacted();
            Element conj2 = (a.pow(2) * b * a.pow(p - 2)).compacted();
            g.generators = {b, conj1, conj2};
            break;
        }
    }
    return g;
}

PresetName parse_preset_name(const std::string& name, int* k_out) {
    if (k_out) *k_out = 1;
    if (name == "G_lambda" || name == "G") return PresetName::G_lambda;
    if (name == "closure") return PresetName::Closure;
    if (name == "K") return PresetName::K;
    if (name == "H") return PresetName::H;
    if (name == "L") return PresetName::L;
    if (name.rfind("H_", 0) == 0) {
        int k = std::stoi(name.substr(2));
        if (k_out) *k_out = k;
        return PresetName::H_k;
    }
    throw std::invalid_argument("unknown group preset: " + name);
}

}  // namespace sushchansky
