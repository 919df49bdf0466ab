#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sushchansky/construction.hpp"
#include "sushchansky/mealy.hpp"

namespace sushchansky {

struct BallBudget {
    size_t max_elements = 1'000'000;
    double max_seconds = 120.0;
};

/// Distinct elements by word length: layers[n] holds the canonical elements at
/// distance exactly n in the symmetric generating set. Layers are sorted, so
/// the result is schedule independent. truncated is set when a budget stops
/// the enumeration early.
std::vector<std::vector<Element>> ball_layers(const std::vector<Element>& generators, int n_max,
                                              const BallBudget& budget, bool* truncated);

struct GrowthReport {
    std::string preset;
    std::vector<size_t> gamma;          // gamma[n], cumulative ball sizes
    std::vector<long long> pi;          // max element order per radius; empty if not computed
    bool partial = false;               // budget stopped the enumeration
    int radius_achieved = 0;
    std::vector<std::string> cap_exceeded;  // per-element notes when order() hits the cap
    bool subexponential_signal = false;     // log gamma(n)/n decreasing on the range; informational
};

GrowthReport ball_sizes(const GroupPreset& preset, int n_max, const BallBudget& budget = {});

/// gamma plus the period growth pi(n) = max order over the ball. Throws if any
/// element comes back with infinite order (the preset was expected torsion).
GrowthReport torsion_table(const GroupPreset& preset, int n_max, long long cap,
                           const BallBudget& budget = {});

/// Positive root of x^r + x^{r-1} + x^{r-2} - 2 in (0,1), |f(root)| < 1e-12.
double eta(int r);

struct Exponents {
    double alpha;             // log p / (log p + log 2)
    double beta;              // log p / (log p - log eta_r)
    double eta_r;
    double torsion_exponent;  // log p / log(1/eta_r)
    int r;
};

Exponents exponents(int p, int r);

struct GrowthEstimateRow {
    int n = 0;
    size_t gamma_G = 0;
    size_t level_actions = 0;  // distinct level-k permutations among ball elements
    size_t gamma_P = 0;        // ball of the section group at the same radius
    size_t gamma_H = 0;
    size_t gamma_L = 0;
    size_t gamma_G_Cn = 0;     // gamma_G at radius C*n
    bool injection_ok = false; // gamma_G(n) <= actions * gamma_P(n)^{p^k}
    bool h_le_l = false;       // gamma_H(n) <= gamma_L(n)
    bool l_le_g = false;       // gamma_L(n) <= gamma_G(C n)
};

struct GrowthEstimateReport {
    int level_k = 0;
    int expansion_C = 0;  // max length of an L generator written in the G generators
    std::vector<GrowthEstimateRow> rows;
    bool all_ok = false;
};

/// Counting bounds behind the growth comparison: the injection
/// g -> (level-k action, sections) bounds gamma_G by the section group's ball,
/// and the word-by-word projection of L onto H bounds gamma_H by gamma_L.
/// L sits inside G with generators of G length <= C, so gamma_L(n) <= gamma_G(Cn).
GrowthEstimateReport check_growth_estimate(const SushchanskySystem& sys, int level_k, int n_max);

}  // namespace sushchansky
