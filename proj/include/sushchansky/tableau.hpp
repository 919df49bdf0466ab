#pragma once

#include <string>
#include <vector>

#include "sushchansky/alphabet.hpp"
#include "sushchansky/mealy.hpp"

namespace sushchansky {

struct OrderType;  // construction.hpp

/// Depth-truncated triangular tableau [a_1, a_2(x_1), ..., a_n(x_1,...,x_{n-1})]
/// over F_p. Coordinate i is stored as a full value table with p^{i-1} entries,
/// indexed lexicographically with x_1 most significant.
class Tableau {
public:
    Tableau(int p, int depth);  // zero (identity) tableau

    int p() const { return p_; }
    int depth() const { return depth_; }

    Letter value(int coord, const Word& point) const;       // coord in 1..depth, |point| = coord-1
    void set_value(int coord, const Word& point, Letter v);

    const std::vector<std::vector<Letter>>& tables() const { return tables_; }
    bool is_zero() const;
    bool operator==(const Tableau&) const = default;

    std::string to_json() const;
    static Tableau from_json(const std::string& text);

private:
    size_t flat_index(int coord, const Word& point) const;
    int p_;
    int depth_;
    std::vector<std::vector<Letter>> tables_;  // tables_[i-1] holds coordinate i
};

/// Tableau product: c_i(x) = a_i(x) + b_i(x_1 + a_1, x_2 + a_2(x_1), ...).
Tableau tab_multiply(const Tableau& a, const Tableau& b);

Tableau tab_inverse(const Tableau& a);

/// Action on a vertex word: y_i = x_i + a_i(x_1,...,x_{i-1}).
Word tab_act(const Tableau& t, const Word& w);

/// The generator tableaux of the group of type lambda, truncated to the given
/// depth (>= 3): A = [1, x_1, 0, ...] and B with b_3(2,1) = 1 and the values at
/// (0,..,0,1) and (1,0,..,0,1) driven by the pair sequence of lambda.
std::pair<Tableau, Tableau> sushchansky_tableaux(const OrderType& lambda, int depth);

/// Read the tableau of an element of the sigma-Sylow subgroup off its action.
/// Throws if some output of the element is not a power of sigma.
Tableau tableau_from_element(const Element& g, int depth);

}  // namespace sushchansky
