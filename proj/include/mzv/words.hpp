#ifndef MZV_WORDS_HPP
#define MZV_WORDS_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mzv/numeric.hpp"

namespace mzv {

// An MZV index (k_1, ..., k_l), summed over m_1 < ... < m_l with k_l on the
// largest variable. The empty index is the multiplicative unit.
struct Index {
    std::vector<int> parts;

    Index() = default;
    Index(std::initializer_list<int> ks);
    explicit Index(std::vector<int> ks);

    int weight() const;
    int depth() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }
    bool admissible() const { return !parts.empty() && parts.back() >= 2; }

    auto operator<=>(const Index &) const = default;
    bool operator==(const Index &) const = default;
};

// A word over {0,1}. Letters are read in integration order: letter 1 stands
// for dx/(x-1), letter 0 for dx/x, and the first letter sits on the
// smallest variable. Many references use the reversed orientation; to convert,
// reverse the word.
struct Word {
    std::vector<std::uint8_t> letters;

    Word() = default;
    Word(std::initializer_list<int> bits);
    explicit Word(std::vector<std::uint8_t> bits);

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    int operator[](std::size_t i) const { return letters[i]; }
    bool admissible() const { return !letters.empty() && letters.front() == 1 && letters.back() == 0; }
    int ones() const;

    Word reversed() const;
    Word flipped() const;
    Word slice(std::size_t begin, std::size_t end) const;
    Word operator+(const Word &other) const;

    auto operator<=>(const Word &) const = default;
    bool operator==(const Word &) const = default;
};

using WordCombination = std::map<Word, Rational>;
using IndexCombination = std::map<Index, Rational>;

Word index_to_word(const Index &idx);
// Throws std::invalid_argument when w is empty or starts with 0.
Index word_to_index(const Word &w);

WordCombination shuffle(const Word &u, const Word &v);
WordCombination shuffle(const WordCombination &a, const WordCombination &b);
IndexCombination stuffle(const Index &a, const Index &b);

// Duality: reverse the word and exchange the letters. Throws on a
// non-admissible argument.
Index dual(const Index &idx);
Word dual(const Word &w);

// Admissible words of length n in lexicographic order. n = 0 yields the
// empty word only.
std::vector<Word> enumerate_admissible(int n);

std::string format_word(const Word &w);
std::string format_index(const Index &idx);
Word parse_word(std::string_view text);
Index parse_index(std::string_view text);

} // namespace mzv

#endif
