#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace twidist::words {

/// A word is a finite (possibly empty) sequence over an arbitrary alphabet.
/// The alphabet only needs an equality predicate, so the same algebra serves
/// real-valued series and grid points alike.
template <typename T>
using Word = std::vector<T>;

template <typename T>
struct PrimeFactor {
    T symbol;
    std::size_t multiplicity = 0;
};

/// Maximal-run factorization. Adjacent factors carry distinct symbols and
/// concatenating symbol^multiplicity over all factors reproduces the word.
template <typename T>
using PrimeFactorization = std::vector<PrimeFactor<T>>;

/// The run head (first element of the run) is kept as the factor symbol, so a
/// tolerance-based predicate compares each candidate against the run head
/// rather than its immediate neighbor. That keeps runs transitive.
template <typename T, typename Eq = std::equal_to<T>>
PrimeFactorization<T> prime_factorize(const Word<T>& w, Eq eq = Eq{}) {
    PrimeFactorization<T> factors;
    for (const T& v : w) {
        if (!factors.empty() && eq(factors.back().symbol, v)) {
            ++factors.back().multiplicity;
        } else {
            factors.push_back(PrimeFactor<T>{v, 1});
        }
    }
    return factors;
}

/// Collapses every run to a singleton. The result is irreducible and is the
/// unique shortest compression of `w`.
template <typename T, typename Eq = std::equal_to<T>>
Word<T> condense(const Word<T>& w, Eq eq = Eq{}) {
    Word<T> out;
    out.reserve(w.size());
    for (const T& v : w) {
        if (out.empty() || !eq(out.back(), v)) out.push_back(v);
    }
    return out;
}

template <typename T, typename Eq = std::equal_to<T>>
bool is_irreducible(const Word<T>& w, Eq eq = Eq{}) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (eq(w[i - 1], w[i])) return false;
    return true;
}

template <typename T, typename Eq = std::equal_to<T>>
bool equal_words(const Word<T>& a, const Word<T>& b, Eq eq = Eq{}) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!eq(a[i], b[i])) return false;
    return true;
}

/// True iff x can be produced from y by replicating elements of y, i.e. the
/// factorizations match symbol-for-symbol with componentwise multiplicity >=.
template <typename T, typename Eq = std::equal_to<T>>
bool is_expansion(const Word<T>& x, const Word<T>& y, Eq eq = Eq{}) {
    const auto fx = prime_factorize(x, eq);
    const auto fy = prime_factorize(y, eq);
    if (fx.size() != fy.size()) return false;
    for (std::size_t t = 0; t < fx.size(); ++t) {
        if (!eq(fx[t].symbol, fy[t].symbol)) return false;
        if (fx[t].multiplicity < fy[t].multiplicity) return false;
    }
    return true;
}

/// Replicates y[i] exactly multiplicities[i] times.
template <typename T>
Word<T> expand(const Word<T>& y, const std::vector<std::size_t>& multiplicities) {
    if (multiplicities.size() != y.size())
        throw std::invalid_argument("expand: multiplicity count must match word length");
    std::size_t total = 0;
    for (std::size_t m : multiplicities) {
        if (m < 1) throw std::invalid_argument("expand: multiplicities must be positive");
        total += m;
    }
    Word<T> out;
    out.reserve(total);
    for (std::size_t i = 0; i < y.size(); ++i)
        out.insert(out.end(), multiplicities[i], y[i]);
    return out;
}

namespace detail {
template <typename T, typename Sink>
void enumerate_expansions_rec(const Word<T>& y, std::size_t slot, std::size_t budget,
                              std::vector<std::size_t>& alpha, Sink& sink) {
    if (slot == y.size()) {
        sink(expand(y, alpha));
        return;
    }
    const std::size_t slots_after = y.size() - slot - 1;
    // budget counts elements still available for this and later slots
    for (std::size_t a = 1; a + slots_after <= budget; ++a) {
        alpha[slot] = a;
        enumerate_expansions_rec(y, slot + 1, budget - a, alpha, sink);
    }
}
}  // namespace detail

/// Yields every expansion of y with length <= max_len, each exactly once,
/// ordered lexicographically by multiplicity vector.
template <typename T, typename Sink>
void for_each_expansion(const Word<T>& y, std::size_t max_len, Sink&& sink) {
    if (max_len < y.size())
        throw std::invalid_argument("for_each_expansion: max_len below word length");
    if (y.empty()) {
        sink(Word<T>{});
        return;
    }
    std::vector<std::size_t> alpha(y.size(), 1);
    detail::enumerate_expansions_rec(y, 0, max_len, alpha, sink);
}

template <typename T>
std::vector<Word<T>> enumerate_expansions(const Word<T>& y, std::size_t max_len) {
    std::vector<Word<T>> out;
    for_each_expansion(y, max_len, [&](Word<T> w) { out.push_back(std::move(w)); });
    return out;
}

/// Two words share a compression iff they share a condensed form, in which
/// case the condensed form is the shortest common compression.
template <typename T, typename Eq = std::equal_to<T>>
std::optional<Word<T>> common_compression(const Word<T>& x, const Word<T>& y, Eq eq = Eq{}) {
    Word<T> cx = condense(x, eq);
    Word<T> cy = condense(y, eq);
    if (!equal_words(cx, cy, eq)) return std::nullopt;
    return cx;
}

}  // namespace twidist::words
