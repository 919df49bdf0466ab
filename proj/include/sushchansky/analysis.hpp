#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sushchansky/construction.hpp"
#include "sushchansky/mealy.hpp"

namespace sushchansky {

// --------------------------------------------------------------------------
// orbits on levels

struct OrbitNode {
    size_t size = 0;
    Word representative;  // lexicographically least member
    int parent = -1;      // index into the previous level, -1 on level 1
};

struct OrbitTree {
    int p = 0;
    std::vector<std::vector<OrbitNode>> levels;  // levels[n-1] = orbits on X^n
};

std::vector<Word> orbit_of(const std::vector<Element>& generators, const Word& v);

OrbitTree orbit_tree(const std::vector<Element>& generators, int depth);

bool is_level_transitive(const std::vector<Element>& generators, int depth);

/// Canonical structural encoding (orbit sizes + branching, independent of
/// representatives). Equal strings = isomorphic orbit trees.
std::string orbit_tree_shape(const OrbitTree& tree);

std::string orbit_tree_json(const OrbitTree& tree);
std::string orbit_tree_dot(const OrbitTree& tree);

// --------------------------------------------------------------------------
// infinite order and branch witnesses

struct WitnessCertificate {
    Element g;
    std::string description;  // word in the generators
    int distance_d = -1;      // the unattained zero distance when t = p^2
    bool ok = false;
    std::vector<std::string> steps;
};

/// The explicit infinite-order element of K: q_1...q_t sigma^{p-1} when u has
/// period p, else q_1 q_{d+1} sigma^{u_{p^2}+u_d} for a cyclic distance d not
/// realized between zeros of u. The certificate checks that the p-th power
/// recursion closes back on the element itself.
WitnessCertificate infinite_order_witness(const SushchanskySystem& sys);

struct BranchIdentity {
    std::string description;
    bool ok = false;
};

/// The displayed level-1 commutator identities behind the branch structure of
/// H_k: [a_k, b_k] = ([a_{k+1}, b_{k+1}], 1, ..., 1) for the applicable
/// conjugating generator (via u_k when u_k != 0, else via v_k).
std::vector<BranchIdentity> branch_witnesses(const SushchanskySystem& sys, int k);

struct KLetter {
    enum class Kind { Q, R, Sigma } kind = Kind::Sigma;
    int index = 1;     // for Q/R
    int exponent = 1;  // any integer, reduced mod p for sigma
};

struct KpWitness {
    Element target;
    Element lift;    // w with w = (target, sigma^i, 1, ..., 1, q_m^j)
    Element lift_p;  // w^p
    bool shape_ok = false;
    bool power_ok = false;  // w^p = (target^p, 1, ..., 1)
};

/// Self-replication witness: for a word in the generators of K, produce w in K
/// whose first section is the word and whose p-th power is (word^p, 1, ..., 1).
KpWitness kp_branch_witness(const SushchanskySystem& sys, const std::vector<KLetter>& word);

// --------------------------------------------------------------------------
// directed-part groups built from a root part and a homomorphism sequence

struct FiniteGroupTable {
    int size = 0;
    std::vector<int> table;  // row-major multiplication, identity = 0
    std::vector<int> generators;

    int mul(int a, int b) const { return table[static_cast<size_t>(a) * static_cast<size_t>(size) + static_cast<size_t>(b)]; }
};

/// Elementary abelian Z_p x Z_p with (k, l) encoded as k*p + l.
FiniteGroupTable zp_squared(int p);

struct GGroupSpec {
    int p = 0;
    std::vector<Perm> root_generators;
    FiniteGroupTable directed;
    std::vector<std::vector<Perm>> homs;  // homs[i][d] = w_{i+1}(d); period = homs.size()
};

struct ConditionReport {
    bool ok = true;
    std::string failure;  // names the violated condition and a witness index
};

/// Conditions on the defining data: (i) the root part and every w_i(D) act
/// transitively on X; (ii) every d is killed by some w_i in a period;
/// (iii) every nontrivial d survives some w_i in a period.
ConditionReport check_ggroup_conditions(const GGroupSpec& spec);

/// Rooted generators plus one directed element per generator of D, realized as
/// machines with a spine along 0^infinity and output w_i(d) at the 0^{i-1}1
/// branch. Throws std::invalid_argument when a condition fails.
std::vector<Element> build_ggroup(const GGroupSpec& spec);

/// The spec presenting H = <q_1, r_1, sigma>: D = Z_p x Z_p with
/// w_i(q^k r^l) = sigma^{k u_i + l v_i}, root part <sigma>, period p^2.
GGroupSpec h_group_spec(const SushchanskySystem& sys);

/// Smallest window length r' such that every r' consecutive homomorphisms kill
/// every element of D; std::nullopt if no window up to twice the period works.
std::optional<int> check_homogeneous(const GGroupSpec& spec);

}  // namespace sushchansky
