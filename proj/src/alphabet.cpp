#include "sushchansky/alphabet.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace sushchansky {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Alphabet::Alphabet(int p) : p_(p) {
    if (!is_prime(p) || p < 3)
        throw std::invalid_argument("alphabet size must be a prime > 2, got " + std::to_string(p));
}

Letter Alphabet::inv(Letter a) const {
    a = ((a % p_) + p_) % p_;
    if (a == 0) throw std::invalid_argument("division by zero in F_p");
    // extended Euclid
    int t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
        int q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return ((t % p_) + p_) % p_;
}

Perm Perm::identity(int p) {
    std::vector<Letter> im(static_cast<size_t>(p));
    std::iota(im.begin(), im.end(), 0);
    return Perm(std::move(im));
}

Perm::Perm(std::vector<Letter> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Letter y : images_) {
        if (y < 0 || static_cast<size_t>(y) >= images_.size() || seen[static_cast<size_t>(y)])
            throw std::invalid_argument("image table is not a bijection");
        seen[static_cast<size_t>(y)] = true;
    }
}

bool Perm::is_identity() const {
    for (int x = 0; x < degree(); ++x)
        if (images_[static_cast<size_t>(x)] != x) return false;
    return true;
}

int Perm::sigma_exponent() const {
    if (degree() == 0) return -1;
    int c = images_[0];
    for (int x = 1; x < degree(); ++x)
        if (images_[static_cast<size_t>(x)] != (x + c) % degree()) return -1;
    return c;
}

Perm Perm::inverse() const {
    std::vector<Letter> im(images_.size());
    for (int x = 0; x < degree(); ++x) im[static_cast<size_t>(images_[static_cast<size_t>(x)])] = x;
    return Perm(std::move(im));
}

std::string Perm::str() const {
    std::string s;
    for (Letter y : images_) s += static_cast<char>('0' + y);
    return s;
}

Perm sigma_power(const Alphabet& alphabet, long long k) {
    int p = alphabet.p();
    int c = alphabet.reduce(k);
    std::vector<Letter> im(static_cast<size_t>(p));
    for (int x = 0; x < p; ++x) im[static_cast<size_t>(x)] = (x + c) % p;
    return Perm(std::move(im));
}

Perm perm_compose(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree())
        throw std::invalid_argument("cannot compose permutations over different alphabets");
    std::vector<Letter> im(static_cast<size_t>(a.degree()));
    for (int x = 0; x < a.degree(); ++x) im[static_cast<size_t>(x)] = b(a(x));
    return Perm(std::move(im));
}

int perm_order(const Perm& a) {
    Perm acc = a;
    int k = 1;
    while (!acc.is_identity()) {
        acc = perm_compose(acc, a);
        ++k;
    }
    return k;
}

Word parse_word(const std::string& s, int p) {
    Word w;
    w.reserve(s.size());
    for (char c : s) {
        if (c < '0' || c >= '0' + p)
            throw std::invalid_argument(std::string("letter out of range: ") + c);
        w.push_back(c - '0');
    }
    return w;
}

std::string word_str(const Word& w) {
    std::string s;
    for (Letter x : w) s += static_cast<char>('0' + x);
    return s;
}

std::vector<Word> all_words(int p, int n) {
    std::vector<Word> out;
    size_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<size_t>(p);
    out.reserve(count);
    Word w(static_cast<size_t>(n), 0);
    for (size_t idx = 0; idx < count; ++idx) {
        size_t rem = idx;
        for (int i = n - 1; i >= 0; --i) {
            w[static_cast<size_t>(i)] = static_cast<Letter>(rem % static_cast<size_t>(p));
            rem /= static_cast<size_t>(p);
        }
        out.push_back(w);
    }
    return out;
}

}  // namespace sushchansky
