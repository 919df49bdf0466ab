#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sushchansky/alphabet.hpp"

namespace sushchansky {

/// A finite invertible Mealy machine over X = {0,...,p-1}. Every state carries
/// a permutation of X (its root action) and a transition per input letter, so
/// each state is a finite-state automorphism of the p-ary tree.
struct MealyMachine {
    struct State {
        Perm out;
        std::vector<int> next;  // next[x], one per letter
    };

    int p = 0;
    std::vector<State> states;

    int add_state(Perm out, std::vector<int> next);
    int identity_state() const;  // index of a state that is trivially identity-shaped, or -1
};

/// Quotient by the coarsest bisimulation: states are merged iff they have equal
/// output and bisimilar successors. Quotient states are ordered by their
/// smallest member, so the result is deterministic.
MealyMachine minimize(const MealyMachine& m);

/// Machine serialization: {"p":..., "states":[{"out":[...],"next":[...]}], "initial":...}.
std::string machine_to_json(const MealyMachine& m, int initial = -1,
                            const std::vector<std::pair<std::string, int>>& named = {});
MealyMachine machine_from_json(const std::string& text);

/// Deterministic DOT rendering; nodes show "name / output image word",
/// parallel edges are merged into one label "x|y, x'|y'".
std::string export_dot(const MealyMachine& m, const std::vector<std::string>& state_names = {});

/// Canonical minimized reachable machine with BFS state numbering from the
/// initial state (letter order 0 < 1 < ... < p-1). Two elements define the same
/// tree automorphism iff their canonical encodings are identical.
struct CanonicalForm {
    int p = 0;
    std::vector<MealyMachine::State> states;  // initial state is index 0
    std::vector<int32_t> encoding;            // flat encoding used for hash/compare
    size_t hash = 0;

    bool trivial() const { return states.size() == 1 && states[0].out.is_identity(); }
};

/// A tree automorphism given as a machine plus initial state. Immutable;
/// the canonical form is computed once on first use and shared by copies.
class Element {
public:
    Element() = default;
    Element(std::shared_ptr<const MealyMachine> machine, int initial);

    static Element identity(int p);
    static Element rooted(const Perm& perm);  // acts on the first letter only

    int p() const { return machine_->p; }
    const MealyMachine& machine() const { return *machine_; }
    int initial() const { return initial_; }

    Perm root() const { return machine_->states[static_cast<size_t>(initial_)].out; }
    Element section(Letter x) const;

    /// Image of a vertex word under the automorphism.
    Word apply(const Word& w) const;

    Element inverse() const;
    Element pow(long long k) const;

    /// The same automorphism over its canonical minimized machine. Keeps
    /// machine sizes flat in long product chains.
    Element compacted() const;

    bool is_trivial() const { return canonical().trivial(); }
    const CanonicalForm& canonical() const;
    size_t hash() const { return canonical().hash; }

    /// Exact equality of tree automorphisms via canonical form identity.
    bool operator==(const Element& other) const;
    bool operator<(const Element& other) const;  // lexicographic on encodings

    friend Element operator*(const Element& g, const Element& h);

private:
    struct CanonSlot;
    std::shared_ptr<const MealyMachine> machine_;
    int initial_ = 0;
    std::shared_ptr<CanonSlot> slot_;
};

struct ElementHash {
    size_t operator()(const Element& e) const { return e.hash(); }
};

struct WreathDecomposition {
    Perm root_perm;
    std::vector<Element> sections;
};

WreathDecomposition decompose(const Element& g);

/// Rebuild an element from its wreath decomposition.
Element recompose(const Perm& root, const std::vector<Element>& sections);

bool equal(const Element& g, const Element& h);

Element commutator(const Element& a, const Element& b);  // a^-1 b^-1 a b
Element conjugate(const Element& a, const Element& b);   // b^-1 a b

struct OrderResult {
    enum class Kind { Finite, Infinite, ExceedsCap } kind;
    long long value = 0;  // the order when finite

    bool finite() const { return kind == Kind::Finite; }
    bool infinite() const { return kind == Kind::Infinite; }
};

/// Order of g, computed recursively: the order of the root permutation times
/// the lcm of the orders of the cycle products one level down, with canonical
/// memoization. A recursion that reaches an element already on the stack with
/// accumulated level multiplier > 1 certifies infinite order; multiplier 1 is
/// a coinductively trivial cycle and contributes 1.
OrderResult order_of(const Element& g, long long cap);

/// Least k in [1, cap] with g^k trivial, by repeated multiplication. Test oracle.
std::optional<long long> order_brute_force(const Element& g, long long cap);

/// Closure of the generators (plus inverses and identity) under taking all
/// depth >= 1 sections of pairwise products. Finite for bounded automata;
/// std::nullopt when the set grows past the budget.
std::optional<std::vector<Element>> nucleus_closure(const std::vector<Element>& generators,
                                                    size_t budget);

/// Path-count boundedness: in the graph of non-identity states, no state sits
/// on two distinct cycles and no path joins two distinct cycles.
bool is_bounded(const MealyMachine& m);

}  // namespace sushchansky
