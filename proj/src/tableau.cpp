#include "sushchansky/tableau.hpp"

#include <stdexcept>

#include "json.hpp"
#include "sushchansky/construction.hpp"

namespace sushchansky {

Tableau::Tableau(int p, int depth) : p_(p), depth_(depth) {
    if (depth < 1) throw std::invalid_argument("tableau depth must be >= 1");
    Alphabet check(p);
    size_t size = 1;
    for (int i = 1; i <= depth; ++i) {
        tables_.emplace_back(size, 0);
        size *= static_cast<size_t>(p);
    }
}

size_t Tableau::flat_index(int coord, const Word& point) const {
    if (coord < 1 || coord > depth_)
        throw std::invalid_argument("tableau coordinate out of range");
    if (static_cast<int>(point.size()) != coord - 1)
        throw std::invalid_argument("tableau point arity mismatch");
    size_t idx = 0;
    for (Letter x : point) {
        if (x < 0 || x >= p_) throw std::invalid_argument("tableau point letter out of range");
        idx = idx * static_cast<size_t>(p_) + static_cast<size_t>(x);
    }
    return idx;
}

Letter Tableau::value(int coord, const Word& point) const {
    return tables_[static_cast<size_t>(coord - 1)][flat_index(coord, point)];
}

void Tableau::set_value(int coord, const Word& point, Letter v) {
    tables_[static_cast<size_t>(coord - 1)][flat_index(coord, point)] =
        ((v % p_) + p_) % p_;
}

bool Tableau::is_zero() const {
    for (const auto& t : tables_)
        for (Letter v : t)
            if (v != 0) return false;
    return true;
}

std::string Tableau::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p_;
    j["depth"] = depth_;
    j["tables"] = tables_;
    return j.dump(2) + "\n";
}

Tableau Tableau::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Tableau t(j.at("p").get<int>(), j.at("depth").get<int>());
    auto tables = j.at("tables").get<std::vector<std::vector<Letter>>>();
    if (tables.size() != t.tables_.size()) throw std::invalid_argument("table count mismatch");
    for (size_t i = 0; i < tables.size(); ++i) {
        if (tables[i].size() != t.tables_[i].size())
            throw std::invalid_argument("table size mismatch at coordinate " + std::to_string(i + 1));
        for (Letter v : tables[i])
            if (v < 0 || v >= t.p_) throw std::invalid_argument("table value out of F_p");
    }
    t.tables_ = std::move(tables);
    return t;
}

Word tab_act(const Tableau& t, const Word& w) {
    if (static_cast<int>(w.size()) > t.depth())
        throw std::invalid_argument("word longer than tableau depth");
    Alphabet fp(t.p());
    Word out;
    out.reserve(w.size());
    Word prefix;
    for (size_t i = 0; i < w.size(); ++i) {
        out.push_back(fp.add(w[i], t.value(static_cast<int>(i) + 1, prefix)));
        prefix.push_back(w[i]);
    }
    return out;
}

Tableau tab_multiply(const Tableau& a, const Tableau& b) {
    if (a.p() != b.p() || a.depth() != b.depth())
        throw std::invalid_argument("tableau depth or alphabet mismatch");
    Alphabet fp(a.p());
    Tableau c(a.p(), a.depth());
    for (int coord = 1; coord <= a.depth(); ++coord) {
        for (const Word& x : all_words(a.p(), coord - 1)) {
            // shifted point: (x_1 + a_1, x_2 + a_2(x_1), ...)
            Word y;
            y.reserve(x.size());
            Word prefix;
            for (size_t j = 0; j < x.size(); ++j) {
                y.push_back(fp.add(x[j], a.value(static_cast<int>(j) + 1, prefix)));
                prefix.push_back(x[j]);
            }
            c.set_value(coord, x, fp.add(a.value(coord, x), b.value(coord, y)));
        }
    }
    return c;
}

Tableau tab_inverse(const Tableau& a) {
    Alphabet fp(a.p());
    Tableau b(a.p(), a.depth());
    for (int coord = 1; coord <= a.depth(); ++coord) {
        for (const Word& y : all_words(a.p(), coord - 1)) {
            // unique x with (x_1 + a_1, x_2 + a_2(x_1), ...) = y, solved triangularly
            Word x;
            Word prefix;
            for (size_t j = 0; j < y.size(); ++j) {
                x.push_back(fp.sub(y[j], a.value(static_cast<int>(j) + 1, prefix)));
                prefix.push_back(x.back());
            }
            b.set_value(coord, y, fp.neg(a.value(coord, x)));
        }
    }
    return b;
}

std::pair<Tableau, Tableau> sushchansky_tableaux(const OrderType& lambda, int depth) {
    if (depth < 3) throw std::invalid_argument("generator tableaux need depth >= 3");
    int p = lambda.p;
    Alphabet fp(p);
    UVWords uv = derive_uv(lambda);

    Tableau a(p, depth);
    a.set_value(1, {}, 1);
    for (Letter x = 0; x < p; ++x) a.set_value(2, {x}, x);  // a_2(x_1) = x_1

    // B moves letter j+3 of the spine words 0^{j+1} 1 * and 1 0^j 1 * by u_j / v_j,
    // and letter 3 of 2 1 * by one; everything else stays put. These are the value
    // tables matching the wreath recursion q_j = (q_{j+1}, sigma^{u_j}, 1, ..., 1).
    Tableau b(p, depth);
    if (depth >= 3) b.set_value(3, {2, 1}, 1);
    for (int coord = 4; coord <= depth; ++coord) {
        int j = coord - 3;  // pair index, wraps modulo p^2 inside OrderType::pair
        int wrapped = ((j - 1) % (p * p)) + 1;
        Word zeros_one(static_cast<size_t>(coord - 1), 0);
        zeros_one.back() = 1;
        b.set_value(coord, zeros_one, uv.u[static_cast<size_t>(wrapped - 1)]);
        Word one_zeros_one = zeros_one;
        one_zeros_one.front() = 1;
        b.set_value(coord, one_zeros_one, uv.v[static_cast<size_t>(wrapped - 1)]);
    }
    return {std::move(a), std::move(b)};
}

Tableau tableau_from_element(const Element& g, int depth) {
    int p = g.p();
    // every reachable output must be a power of sigma
    for (const auto& st : g.canonical().states)
        if (st.out.sigma_exponent() < 0)
            throw std::invalid_argument(
                "element is not in the sigma-Sylow subgroup: output " + st.out.str());
    Tableau t(p, depth);
    for (int coord = 1; coord <= depth; ++coord) {
        for (const Word& prefix : all_words(p, coord - 1)) {
            Word probe = prefix;
            probe.push_back(0);
            Word image = g.apply(probe);
            t.set_value(coord, prefix, image.back());
        }
    }
    return t;
}

}  // namespace sushchansky
