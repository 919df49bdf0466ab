#include "sushchansky/growth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace sushchansky {

std::vector<std::vector<Element>> ball_layers(const std::vector<Element>& generators, int n_max,
                                              const BallBudget& budget, bool* truncated) {
    if (generators.empty()) throw std::invalid_argument("ball enumeration needs generators");
    auto started = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - started;
        return dt.count() > budget.max_seconds;
    };
    if (truncated) *truncated = false;

    std::vector<Element> sym;
    {
        std::unordered_set<Element, ElementHash> dedup;
        for (const auto& g : generators)
            for (Element e : {g.compacted(), g.inverse().compacted()})
                if (dedup.insert(e).second) sym.push_back(e);
    }
    std::sort(sym.begin(), sym.end());

    int p = generators[0].p();
    std::unordered_set<Element, ElementHash> seen;
    std::vector<std::vector<Element>> layers;
    layers.push_back({Element::identity(p)});
    seen.insert(layers[0][0]);

    for (int n = 1; n <= n_max; ++n) {
        std::vector<Element> next;
        for (const auto& e : layers.back()) {
            for (const auto& s : sym) {
                if (seen.size() > budget.max_elements || out_of_time()) {
                    if (truncated) *truncated = true;
                    return layers;
                }
                Element prod = (e * s).compacted();
                if (seen.insert(prod).second) next.push_back(prod);
            }
        }
        if (next.empty()) break;  // the whole group was exhausted
        std::sort(next.begin(), next.end());
        layers.push_back(std::move(next));
    }
    return layers;
}

namespace {

GrowthReport report_from_layers(const std::string& name,
                                const std::vector<std::vector<Element>>& layers, int n_max,
                                bool truncated) {
    GrowthReport report;
    report.preset = name;
    size_t total = 0;
    for (const auto& layer : layers) {
        total += layer.size();
        report.gamma.push_back(total);
    }
    // a ball that stopped growing is complete at every larger radius
    while (!truncated && static_cast<int>(report.gamma.size()) <= n_max)
        report.gamma.push_back(total);
    report.partial = truncated;
    report.radius_achieved = static_cast<int>(report.gamma.size()) - 1;

    // informational: log gamma(n)/n strictly decreasing over the computed radii
    report.subexponential_signal = report.gamma.size() >= 3;
    for (size_t n = 2; n < report.gamma.size() && report.subexponential_signal; ++n) {
        double prev = std::log(static_cast<double>(report.gamma[n - 1])) / static_cast<double>(n - 1);
        double cur = std::log(static_cast<double>(report.gamma[n])) / static_cast<double>(n);
        if (cur >= prev) report.subexponential_signal = false;
    }
    return report;
}

}  // namespace

GrowthReport ball_sizes(const GroupPreset& preset, int n_max, const BallBudget& budget) {
    bool truncated = false;
    auto layers = ball_layers(preset.generators, n_max, budget, &truncated);
    return report_from_layers(preset.name, layers, n_max, truncated);
}

GrowthReport torsion_table(const GroupPreset& preset, int n_max, long long cap,
                           const BallBudget& budget) {
    bool truncated = false;
    auto layers = ball_layers(preset.generators, n_max, budget, &truncated);
    GrowthReport report = report_from_layers(preset.name, layers, n_max, truncated);
    long long running = 1;
    for (size_t n = 0; n < layers.size(); ++n) {
        for (const auto& e : layers[n]) {
            OrderResult r = order_of(e, cap);
            if (r.infinite())
                throw std::runtime_error("element of infinite order in torsion preset " +
                                         preset.name + " at radius " + std::to_string(n));
            if (r.kind == OrderResult::Kind::ExceedsCap)
                report.cap_exceeded.push_back("radius " + std::to_string(n) +
                                              ": order exceeds cap " + std::to_string(cap));
            else
                running = std::max(running, r.value);
        }
        report.pi.push_back(running);
    }
    while (report.pi.size() < report.gamma.size()) report.pi.push_back(running);
    return report;
}

double eta(int r) {
    if (r < 3) throw std::invalid_argument("eta needs r >= 3");
    auto f = [r](double x) {
        return std::pow(x, r) + std::pow(x, r - 1) + std::pow(x, r - 2) - 2.0;
    };
    double lo = 0.0, hi = 1.0;  // f(0) = -2 < 0 < 1 = f(1)
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Exponents exponents(int p, int r) {
    Exponents e;
    e.r = r;
    e.eta_r = eta(r);
    e.alpha = std::log(static_cast<double>(p)) /
              (std::log(static_cast<double>(p)) + std::log(2.0));
    e.beta = std::log(static_cast<double>(p)) /
             (std::log(static_cast<double>(p)) - std::log(e.eta_r));
    e.torsion_exponent = std::log(static_cast<double>(p)) / std::log(1.0 / e.eta_r);
    return e;
}

namespace {

constexpr size_t kSaturated = std::numeric_limits<size_t>::max() / 2;

size_t saturating_mul(size_t a, size_t b) {
    if (a != 0 && b > kSaturated / a) return kSaturated;
    return a * b;
}

size_t saturating_pow(size_t base, int exp) {
    size_t acc = 1;
    for (int i = 0; i < exp; ++i) acc = saturating_mul(acc, base);
    return acc;
}

std::vector<int32_t> level_action_key(const Element& g, int k) {
    std::vector<int32_t> key;
    for (const Word& w : all_words(g.p(), k)) {
        Word img = g.apply(w);
        int32_t code = 0;
        for (Letter x : img) code = code * g.p() + x;
        key.push_back(code);
    }
    return key;
}

}  // namespace

GrowthEstimateReport check_growth_estimate(const SushchanskySystem& sys, int level_k, int n_max) {
    GrowthEstimateReport report;
    report.level_k = level_k;
    int p = sys.p();
    int pk = 1;
    for (int i = 0; i < level_k; ++i) pk *= p;

    GroupPreset g_preset = preset(sys, PresetName::G_lambda);
    GroupPreset h_preset = preset(sys, PresetName::H);
    GroupPreset l_preset = preset(sys, PresetName::L);

    // P = group generated by the level-k restrictions of the G generators
    std::vector<Element> p_gens;
    {
        std::unordered_set<Element, ElementHash> dedup;
        for (const auto& g : g_preset.generators)
            for (const Word& w : all_words(p, level_k)) {
                Element sec = g;
                for (Letter x : w) sec = sec.section(x);
                sec = sec.compacted();
                if (!sec.is_trivial() && dedup.insert(sec).second) p_gens.push_back(sec);
            }
    }
    std::sort(p_gens.begin(), p_gens.end());

    // every L generator is a word of length <= C in the symmetric G generators:
    // A^j B A^{-j} costs 2 min(j, p-j) + 1 letters, j = 1, 2
    report.expansion_C = 2 * std::min(2, p - 2) + 1;

    BallBudget budget;
    budget.max_seconds = 600.0;
    bool truncated = false;
    auto g_layers = ball_layers(g_preset.generators, report.expansion_C * n_max, budget, &truncated);
    auto p_layers = ball_layers(p_gens, n_max, budget, &truncated);
    auto h_layers = ball_layers(h_preset.generators, n_max, budget, &truncated);
    auto l_layers = ball_layers(l_preset.generators, n_max, budget, &truncated);

    auto cumulative = [](const std::vector<std::vector<Element>>& layers, int n) {
        size_t total = 0;
        for (size_t i = 0; i < layers.size() && static_cast<int>(i) <= n; ++i)
            total += layers[i].size();
        return total;
    };

    report.all_ok = true;
    std::set<std::vector<int32_t>> actions;
    for (int n = 0; n <= n_max; ++n) {
        GrowthEstimateRow row;
        row.n = n;
        if (n < static_cast<int>(g_layers.size()))
            for (const auto& e : g_layers[static_cast<size_t>(n)])
                actions.insert(level_action_key(e, level_k));
        row.gamma_G = cumulative(g_layers, n);
        row.level_actions = actions.size();
        row.gamma_P = cumulative(p_layers, n);
        row.gamma_H = cumulative(h_layers, n);
        row.gamma_L = cumulative(l_layers, n);
        row.gamma_G_Cn = cumulative(g_layers, report.expansion_C * n);
        size_t rhs = saturating_mul(row.level_actions, saturating_pow(row.gamma_P, pk));
        row.injection_ok = row.gamma_G <= rhs;
        row.h_le_l = row.gamma_H <= row.gamma_L;
        row.l_le_g = row.gamma_L <= row.gamma_G_Cn;
        report.all_ok = report.all_ok && row.injection_ok && row.h_le_l && row.l_le_g;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace sushchansky
