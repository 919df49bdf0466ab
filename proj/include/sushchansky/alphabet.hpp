#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sushchansky {

using Letter = int;
using Word = std::vector<Letter>;

/// The alphabet X = {0,...,p-1}, identified with the field F_p. p is an odd prime.
class Alphabet {
public:
    explicit Alphabet(int p);

    int p() const { return p_; }

    Letter add(Letter a, Letter b) const { return (a + b) % p_; }
    Letter sub(Letter a, Letter b) const { return ((a - b) % p_ + p_) % p_; }
    Letter neg(Letter a) const { return (p_ - a % p_) % p_; }
    Letter mul(Letter a, Letter b) const { return (a * b) % p_; }
    Letter inv(Letter a) const;                  // multiplicative inverse, a != 0
    Letter div(Letter a, Letter b) const { return mul(a, inv(b)); }
    Letter reduce(long long k) const { return static_cast<Letter>((k % p_ + p_) % p_); }

private:
    int p_;
};

bool is_prime(int n);

/// A permutation of {0,...,p-1}, stored by its image table.
class Perm {
public:
    Perm() = default;
    static Perm identity(int p);
    explicit Perm(std::vector<Letter> images);

    int degree() const { return static_cast<int>(images_.size()); }
    Letter operator()(Letter x) const { return images_[static_cast<size_t>(x)]; }
    bool is_identity() const;

    /// Shift amount c when this permutation equals x -> x + c mod p; -1 otherwise.
    int sigma_exponent() const;

    Perm inverse() const;
    bool operator==(const Perm&) const = default;
    auto operator<=>(const Perm&) const = default;

    const std::vector<Letter>& images() const { return images_; }
    std::string str() const;   // image word, e.g. "120" for sigma at p=3

private:
    std::vector<Letter> images_;
};

/// The cyclic shift x -> x + k mod p; k may be any integer.
Perm sigma_power(const Alphabet& alphabet, long long k);

/// Left-to-right composition: (a*b)(x) = b(a(x)), matching products of tree
/// automorphisms acting left factor first.
Perm perm_compose(const Perm& a, const Perm& b);

int perm_order(const Perm& a);

Word parse_word(const std::string& s, int p);
std::string word_str(const Word& w);

/// All words of length n over {0,...,p-1} in lexicographic order.
std::vector<Word> all_words(int p, int n);

}  // namespace sushchansky
