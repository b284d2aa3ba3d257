#include "doctest.h"

#include <random>

#include "mzv/words.hpp"

using namespace mzv;

namespace {

// Brute force: choose which output positions carry the letters of u.
WordCombination shuffle_by_positions(const Word &u, const Word &v) {
    const std::size_t n = u.size() + v.size();
    WordCombination out;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != u.size())
            continue;
        Word w;
        std::size_t i = 0, j = 0;
        for (std::size_t pos = 0; pos < n; ++pos)
            w.letters.push_back((mask >> pos) & 1U ? u.letters[i++] : v.letters[j++]);
        out[w] += 1;
    }
    return out;
}

void increasing_maps(int len, int r, int from, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    for (int v = from; v <= r; ++v) {
        cur.push_back(v);
        increasing_maps(len, r, v + 1, cur, out);
        cur.pop_back();
    }
}

// Sum splitting: every relative order of the summation variables of a and b,
// with coincidences, yields one term whose exponents add where variables meet.
IndexCombination stuffle_by_orderings(const Index &a, const Index &b) {
    const int p = a.depth(), q = b.depth();
    IndexCombination out;
    if (p == 0 || q == 0) {
        out[p == 0 ? b : a] += 1;
        return out;
    }
    for (int r = std::max(p, q); r <= p + q; ++r) {
        std::vector<std::vector<int>> ma, mb;
        std::vector<int> cur;
        increasing_maps(p, r, 1, cur, ma);
        increasing_maps(q, r, 1, cur, mb);
        for (const auto &fa : ma)
            for (const auto &fb : mb) {
                std::vector<int> ks(static_cast<std::size_t>(r), 0);
                for (int i = 0; i < p; ++i)
                    ks[static_cast<std::size_t>(fa[i] - 1)] += a.parts[static_cast<std::size_t>(i)];
                for (int i = 0; i < q; ++i)
                    ks[static_cast<std::size_t>(fb[i] - 1)] += b.parts[static_cast<std::size_t>(i)];
                if (std::find(ks.begin(), ks.end(), 0) != ks.end())
                    continue;
                out[Index(ks)] += 1;
            }
    }
    return out;
}

std::vector<Index> all_indices(int weight) {
    // compositions of weight
    std::vector<Index> out;
    if (weight == 0)
        return {Index{}};
    for (std::uint32_t cuts = 0; cuts < (1U << (weight - 1)); ++cuts) {
        std::vector<int> ks{1};
        for (int i = 0; i < weight - 1; ++i) {
            if (cuts & (1U << i))
                ks.push_back(1);
            else
                ++ks.back();
        }
        out.emplace_back(ks);
    }
    return out;
}

std::vector<Word> all_words(int len) {
    std::vector<Word> out;
    for (std::uint32_t bits = 0; bits < (1U << len); ++bits) {
        Word w;
        for (int i = 0; i < len; ++i)
            w.letters.push_back(static_cast<std::uint8_t>((bits >> i) & 1U));
        out.push_back(w);
    }
    return out;
}

Rational binom(int n, int k) {
    Rational r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST_CASE("index_to_word block structure") {
    CHECK(index_to_word(Index{2}) == Word{1, 0});
    CHECK(index_to_word(Index{1, 2}) == Word{1, 1, 0});
    CHECK(index_to_word(Index{2, 3}) == Word{1, 0, 1, 0, 0});
}

TEST_CASE("word_to_index and errors") {
    CHECK(word_to_index(Word{1, 0}) == Index{2});
    CHECK(word_to_index(Word{1, 1, 0}) == Index{1, 2});
    CHECK(word_to_index(Word{1, 0, 0, 1, 0}) == Index{3, 2});
    CHECK_THROWS_AS(word_to_index(Word{}), std::invalid_argument);
    CHECK_THROWS_AS(word_to_index(Word{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Index({0, 2}), std::invalid_argument);
}

TEST_CASE("round trip for every index of weight <= 12") {
    for (int wt = 1; wt <= 12; ++wt)
        for (const auto &idx : all_indices(wt)) {
            auto w = index_to_word(idx);
            CHECK(static_cast<int>(w.size()) == idx.weight());
            CHECK(w[0] == 1);
            CHECK((w.letters.back() == 0) == idx.admissible());
            CHECK(word_to_index(w) == idx);
        }
}

TEST_CASE("shuffle examples") {
    auto s = shuffle(Word{1, 0}, Word{1, 0});
    WordCombination expect{{Word{1, 0, 1, 0}, 2}, {Word{1, 1, 0, 0}, 4}};
    CHECK(s == expect);
    CHECK(s == shuffle_by_positions(Word{1, 0}, Word{1, 0}));

    auto unit = shuffle(Word{}, Word{1, 1, 0});
    CHECK(unit == WordCombination{{Word{1, 1, 0}, 1}});

    auto two = shuffle(Word{1}, Word{0});
    CHECK(two == WordCombination{{Word{1, 0}, 1}, {Word{0, 1}, 1}});
}

TEST_CASE("shuffle coefficient sum is binomial, exhaustive to length 6") {
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; a + b <= 9 && b <= 6; ++b)
            for (const auto &u : all_words(a))
                for (const auto &v : all_words(b)) {
                    auto s = shuffle(u, v);
                    Rational total = 0;
                    for (const auto &[w, c] : s) {
                        CHECK(w.size() == u.size() + v.size());
                        total += c;
                    }
                    CHECK(total == binom(a + b, a));
                }
}

TEST_CASE("shuffle agrees with position enumeration") {
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (const auto &u : all_words(a))
                for (const auto &v : all_words(b))
                    CHECK(shuffle(u, v) == shuffle_by_positions(u, v));
}

TEST_CASE("shuffle is commutative and associative on random triples") {
    std::mt19937 rng(20261018);
    std::uniform_int_distribution<int> len(0, 4), bit(0, 1);
    auto random_word = [&] {
        Word w;
        int n = len(rng);
        for (int i = 0; i < n; ++i)
            w.letters.push_back(static_cast<std::uint8_t>(bit(rng)));
        return w;
    };
    for (int trial = 0; trial < 60; ++trial) {
        Word u = random_word(), v = random_word(), w = random_word();
        CHECK(shuffle(u, v) == shuffle(v, u));
        WordCombination cu{{u, 1}}, cv{{v, 1}}, cw{{w, 1}};
        CHECK(shuffle(shuffle(cu, cv), cw) == shuffle(cu, shuffle(cv, cw)));
    }
}

TEST_CASE("stuffle examples") {
    CHECK(stuffle(Index{2}, Index{2}) == IndexCombination{{Index{2, 2}, 2}, {Index{4}, 1}});
    CHECK(stuffle(Index{}, Index{3}) == IndexCombination{{Index{3}, 1}});
    CHECK(stuffle(Index{2}, Index{3}) ==
          IndexCombination{{Index{2, 3}, 1}, {Index{3, 2}, 1}, {Index{5}, 1}});
}

TEST_CASE("stuffle matches sum splitting up to weight 5 and is commutative") {
    for (int wa = 1; wa <= 4; ++wa)
        for (int wb = 1; wa + wb <= 5; ++wb)
            for (const auto &a : all_indices(wa))
                for (const auto &b : all_indices(wb)) {
                    auto st = stuffle(a, b);
                    CHECK(st == stuffle_by_orderings(a, b));
                    CHECK(st == stuffle(b, a));
                    for (const auto &[idx, c] : st)
                        CHECK(idx.weight() == wa + wb);
                }
}

TEST_CASE("duality") {
    CHECK(dual(Index{2}) == Index{2});
    CHECK(dual(Index{3}) == Index{1, 2});
    CHECK(dual(Index{1, 3}) == Index{1, 3});
    CHECK_THROWS_AS(dual(Index{2, 1}), std::invalid_argument);
    for (int n = 2; n <= 12; ++n)
        for (const auto &w : enumerate_admissible(n)) {
            auto idx = word_to_index(w);
            CHECK(dual(dual(idx)) == idx);
            CHECK(dual(idx).weight() == n);
        }
}

TEST_CASE("enumerate_admissible") {
    CHECK(enumerate_admissible(0) == std::vector<Word>{Word{}});
    CHECK(enumerate_admissible(1).empty());
    CHECK(enumerate_admissible(2) == std::vector<Word>{Word{1, 0}});
    std::vector<Word> filtered;
    for (const auto &w : all_words(4))
        if (w.admissible())
            filtered.push_back(w);
    std::sort(filtered.begin(), filtered.end());
    CHECK(enumerate_admissible(4) == filtered);
    CHECK(enumerate_admissible(4) ==
          std::vector<Word>{Word{1, 0, 0, 0}, Word{1, 0, 1, 0}, Word{1, 1, 0, 0}, Word{1, 1, 1, 0}});
    for (int n = 2; n <= 12; ++n) {
        auto ws = enumerate_admissible(n);
        CHECK(ws.size() == (std::size_t{1} << (n - 2)));
        CHECK(std::is_sorted(ws.begin(), ws.end()));
    }
}

TEST_CASE("text formats") {
    CHECK(format_word(Word{1, 1, 0, 0}) == "1100");
    CHECK(parse_word("1100") == Word{1, 1, 0, 0});
    CHECK(format_index(Index{1, 3}) == "1,3");
    CHECK(parse_index("1,3") == Index{1, 3});
    CHECK(parse_index(" 2 , 5 ") == Index{2, 5});
    CHECK_THROWS_AS(parse_word("102"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index("1,,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index("0"), std::invalid_argument);
}
