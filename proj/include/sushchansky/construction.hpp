#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sushchansky/alphabet.hpp"
#include "sushchansky/mealy.hpp"

namespace sushchansky {

/// An order on the p^2 pairs (alpha, beta) over F_p x F_p: the defining data
/// of a group of type lambda. The sequence must enumerate every pair once.
struct OrderType {
    int p = 0;
    std::vector<std::pair<int, int>> pairs;  // (alpha_i, beta_i), entry i-1 holds index i
    std::string label;                       // "lex", "lex-swapped", or "custom"

    OrderType(int p, std::vector<std::pair<int, int>> pairs, std::string label = "custom");

    static OrderType lex(int p);
    /// Lexicographic order with (0,1) and (1,0) exchanged; makes u aperiodic.
    static OrderType lex_swapped(int p);
    static OrderType from_json(const std::string& text);
    std::string to_json() const;

    const std::pair<int, int>& pair(int i) const;  // 1-based, wraps modulo p^2
};

struct UVWords {
    Word u;  // u_i = 0 iff beta_i = 0
    Word v;  // v_i = 1 if beta_i = 0, else -alpha_i/beta_i
    int t;   // minimal period of u as a cyclic word; p or p^2
};

UVWords derive_uv(const OrderType& lambda);

/// The automata realizing a group of type lambda: the union automaton with
/// initial states A and B (acting on X*), and the simplified machine acting on
/// the subtree T where A becomes the rooted cycle and B = (q_1, r_1, sigma, 1, ...).
class SushchanskySystem {
public:
    explicit SushchanskySystem(OrderType lambda);

    int p() const { return lambda_.p; }
    const OrderType& lambda() const { return lambda_; }
    const UVWords& uv() const { return uv_; }

    const MealyMachine& automaton() const { return *auv_; }
    const MealyMachine& automaton_minimized() const { return *auv_min_; }
    const MealyMachine& simplified_machine() const { return *t_machine_; }

    /// Names of the raw automaton states, aligned with automaton().states.
    const std::vector<std::string>& state_names() const { return names_; }
    /// Names for the minimized automaton states (by bisimilarity with raw ones).
    std::vector<std::string> minimized_state_names() const;

    Element A() const;
    Element B() const;
    Element q(int i) const;  // 1-based, wraps modulo p^2
    Element r(int i) const;
    Element sigma(long long k = 1) const;
    Element identity() const;

    Element A_on_T() const;  // the rooted cycle
    Element B_on_T() const;

private:
    Element make(int state) const;
    Element make_t(int state) const;

    OrderType lambda_;
    UVWords uv_;
    std::shared_ptr<const MealyMachine> auv_;
    std::shared_ptr<const MealyMachine> auv_min_;
    std::shared_ptr<const MealyMachine> t_machine_;
    std::vector<std::string> names_;
    int idx_A_, idx_B_, idx_q1_, idx_r1_;
    int t_idx_B_, t_idx_q1_, t_idx_r1_;
};

enum class ActionKind { XStar, T };

enum class PresetName { G_lambda, Closure, K, H, H_k, L };

struct GroupPreset {
    std::string name;
    std::vector<Element> generators;
};

/// Named generating sets: G_lambda = {A, B}; Closure = all states of the union
/// automaton; K = {q_1..q_t, r_1..r_{p^2}, sigma}; H = {q_1, r_1, sigma};
/// H_k = {q_k, r_k, sigma}; L = {B, A B A^{p-1}, A^2 B A^{p-2}}.
GroupPreset preset(const SushchanskySystem& sys, PresetName name, int k = 1,
                   ActionKind kind = ActionKind::XStar);

PresetName parse_preset_name(const std::string& name, int* k_out);

}  // namespace sushchansky
