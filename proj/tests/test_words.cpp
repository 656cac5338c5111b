#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "twidist/words.hpp"

using namespace twidist;
using W = std::vector<double>;

TEST_SUITE("words") {

TEST_CASE("prime factorization of runs") {
    const auto f = words::prime_factorize(W{5, 5, 7});
    REQUIRE(f.size() == 2);
    CHECK(f[0].symbol == 5);
    CHECK(f[0].multiplicity == 2);
    CHECK(f[1].symbol == 7);
    CHECK(f[1].multiplicity == 1);

    CHECK(words::prime_factorize(W{}).empty());

    const auto g = words::prime_factorize(W{1, 2, 2, 2, 1});
    REQUIRE(g.size() == 3);
    CHECK(g[0].multiplicity == 1);
    CHECK(g[1].multiplicity == 3);
    CHECK(g[2].multiplicity == 1);
}

TEST_CASE("condense collapses runs to singletons") {
    CHECK(words::condense(W{0, 1, 1}) == W{0, 1});
    CHECK(words::condense(W{0, 1, 2}) == W{0, 1, 2});
    CHECK(words::condense(W{3, 3, 3, 3}) == W{3});
    CHECK(words::condense(W{}) == W{});
}

TEST_CASE("expansion predicate") {
    CHECK(words::is_expansion(W{0, 1, 1}, W{0, 1}));
    CHECK(words::is_expansion(W{0, 1}, W{0, 1}));
    CHECK_FALSE(words::is_expansion(W{0, 1}, W{1, 0}));
    CHECK_FALSE(words::is_expansion(W{0, 1}, W{0, 1, 1}));
}

TEST_CASE("expand by multiplicities") {
    CHECK(words::expand(W{0, 1}, {1, 2}) == W{0, 1, 1});
    CHECK(words::expand(W{0, 1}, {1, 1}) == W{0, 1});
    CHECK(words::expand(W{7}, {4}) == W{7, 7, 7, 7});
    CHECK_THROWS_AS(words::expand(W{0, 1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(words::expand(W{0, 1}, {1, 0}), std::invalid_argument);
}

TEST_CASE("expansion enumeration is lexicographic and complete") {
    const auto got = words::enumerate_expansions(W{0, 1}, 3);
    const std::vector<W> want = {{0, 1}, {0, 1, 1}, {0, 0, 1}};
    CHECK(got == want);

    CHECK(words::enumerate_expansions(W{0, 1}, 2) == std::vector<W>{{0, 1}});
    CHECK(words::enumerate_expansions(W{4}, 3) ==
          std::vector<W>{{4}, {4, 4}, {4, 4, 4}});
    CHECK_THROWS_AS(words::enumerate_expansions(W{0, 1}, 1), std::invalid_argument);
}

TEST_CASE("common compression") {
    auto c = words::common_compression(W{0, 1, 1}, W{0, 0, 1});
    REQUIRE(c.has_value());
    CHECK(*c == W{0, 1});
    CHECK_FALSE(words::common_compression(W{0, 1}, W{0, 2}).has_value());
    auto self = words::common_compression(W{2, 2, 5}, W{2, 2, 5});
    REQUIRE(self.has_value());
    CHECK(*self == W{2, 5});
}

TEST_CASE("factorization is unique and reconstructs the word") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        const W w = oracle::random_series(rng, 0, 12, 3);
        const auto f = words::prime_factorize(w);
        W rebuilt;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i > 0) CHECK(f[i - 1].symbol != f[i].symbol);  // maximality
            CHECK(f[i].multiplicity >= 1);
            rebuilt.insert(rebuilt.end(), f[i].multiplicity, f[i].symbol);
        }
        CHECK(rebuilt == w);  // partition
    }
}

TEST_CASE("condense is idempotent and the result irreducible") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 500; ++t) {
        const W w = oracle::random_series(rng, 0, 12, 3);
        const W c = words::condense(w);
        CHECK(words::is_irreducible(c));
        CHECK(words::condense(c) == c);
        if (!w.empty()) CHECK(words::is_expansion(w, c));
    }
}

TEST_CASE("condensed form is the unique shortest compression") {
    // exhaustive check against every word over a 3-symbol alphabet
    std::mt19937_64 rng(9);
    auto all_words_up_to = [](std::size_t max_len) {
        std::vector<W> out{{}};
        std::vector<W> frontier{{}};
        for (std::size_t l = 1; l <= max_len; ++l) {
            std::vector<W> next;
            for (const W& w : frontier)
                for (double s : {0.0, 1.0, 2.0}) {
                    W e = w;
                    e.push_back(s);
                    next.push_back(e);
                    out.push_back(std::move(e));
                }
            frontier = std::move(next);
        }
        return out;
    };
    const auto universe = all_words_up_to(6);
    for (int t = 0; t < 40; ++t) {
        const W w = oracle::random_series(rng, 1, 6, 3);
        const W star = words::condense(w);
        std::vector<W> compressions;
        for (const W& y : universe)
            if (!y.empty() && words::is_expansion(w, y)) compressions.push_back(y);
        std::size_t shortest = w.size();
        for (const W& y : compressions) shortest = std::min(shortest, y.size());
        CHECK(shortest == star.size());
        int count_shortest = 0;
        for (const W& y : compressions)
            if (y.size() == shortest) {
                ++count_shortest;
                CHECK(y == star);
            }
        CHECK(count_shortest == 1);
    }
}

TEST_CASE("expansions are transitive") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 300; ++t) {
        const W z = oracle::random_series(rng, 1, 5, 3);
        const W y = words::expand(z, oracle::random_multiplicities(rng, z.size()));
        const W x = words::expand(y, oracle::random_multiplicities(rng, y.size()));
        CHECK(words::is_expansion(y, z));
        CHECK(words::is_expansion(x, y));
        CHECK(words::is_expansion(x, z));
    }
}

TEST_CASE("compositions of condense-then-expand keep a common compression") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const W w = oracle::random_series(rng, 1, 8, 3);
        auto coex = [&rng](const W& v) {
            const W c = words::condense(v);
            return words::expand(c, oracle::random_multiplicities(rng, c.size()));
        };
        const W once = coex(w);
        const W twice = coex(once);
        CHECK(words::common_compression(w, twice).has_value());
    }
}

}  // TEST_SUITE
