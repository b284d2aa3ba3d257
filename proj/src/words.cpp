#include "mzv/words.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace mzv {

Index::Index(std::initializer_list<int> ks) : Index(std::vector<int>(ks)) {}

Index::Index(std::vector<int> ks) : parts(std::move(ks)) {
    for (int k : parts)
        if (k < 1)
            throw std::invalid_argument("index entries must be >= 1");
}

int Index::weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Word::Word(std::initializer_list<int> bits) {
    letters.reserve(bits.size());
    for (int b : bits) {
        if (b != 0 && b != 1)
            throw std::invalid_argument("word letters must be 0 or 1");
        letters.push_back(static_cast<std::uint8_t>(b));
    }
}

Word::Word(std::vector<std::uint8_t> bits) : letters(std::move(bits)) {
    for (auto b : letters)
        if (b > 1)
            throw std::invalid_argument("word letters must be 0 or 1");
}

int Word::ones() const { return static_cast<int>(std::count(letters.begin(), letters.end(), 1)); }

Word Word::reversed() const { return Word(std::vector<std::uint8_t>(letters.rbegin(), letters.rend())); }

Word Word::flipped() const {
    Word r = *this;
    for (auto &b : r.letters)
        b ^= 1U;
    return r;
}

Word Word::slice(std::size_t begin, std::size_t end) const {
    return Word(std::vector<std::uint8_t>(letters.begin() + static_cast<std::ptrdiff_t>(begin),
                                          letters.begin() + static_cast<std::ptrdiff_t>(end)));
}

Word Word::operator+(const Word &other) const {
    Word r = *this;
    r.letters.insert(r.letters.end(), other.letters.begin(), other.letters.end());
    return r;
}

Word index_to_word(const Index &idx) {
    Word w;
    w.letters.reserve(static_cast<std::size_t>(idx.weight()));
    for (int k : idx.parts) {
        w.letters.push_back(1);
        w.letters.insert(w.letters.end(), static_cast<std::size_t>(k - 1), 0);
    }
    return w;
}

Index word_to_index(const Word &w) {
    if (w.empty())
        throw std::invalid_argument("word_to_index: empty word");
    if (w[0] != 1)
        throw std::invalid_argument("word_to_index: word must start with 1");
    Index idx;
    for (auto b : w.letters) {
        if (b == 1)
            idx.parts.push_back(1);
        else
            ++idx.parts.back();
    }
    return idx;
}

namespace {

void shuffle_into(const Word &u, std::size_t i, const Word &v, std::size_t j, Word &prefix,
                  WordCombination &out, const Rational &coeff) {
    if (i == u.size() && j == v.size()) {
        out[prefix] += coeff;
        return;
    }
    if (i < u.size()) {
        prefix.letters.push_back(u.letters[i]);
        shuffle_into(u, i + 1, v, j, prefix, out, coeff);
        prefix.letters.pop_back();
    }
    if (j < v.size()) {
        prefix.letters.push_back(v.letters[j]);
        shuffle_into(u, i, v, j + 1, prefix, out, coeff);
        prefix.letters.pop_back();
    }
}

Index with_last(Index base, int k) {
    base.parts.push_back(k);
    return base;
}

void add_scaled(IndexCombination &into, const IndexCombination &from, int appended) {
    for (const auto &[idx, c] : from)
        into[with_last(idx, appended)] += c;
}

IndexCombination stuffle_rec(const Index &a, const Index &b, std::map<std::pair<Index, Index>, IndexCombination> &memo) {
    if (a.empty())
        return {{b, Rational(1)}};
    if (b.empty())
        return {{a, Rational(1)}};
    auto key = std::make_pair(a, b);
    if (auto it = memo.find(key); it != memo.end())
        return it->second;

    Index a_head(std::vector<int>(a.parts.begin(), a.parts.end() - 1));
    Index b_head(std::vector<int>(b.parts.begin(), b.parts.end() - 1));
    const int x = a.parts.back();
    const int y = b.parts.back();

    // The largest summation variable sits on the right: it belongs to a, to
    // b, or to both.
    IndexCombination out;
    add_scaled(out, stuffle_rec(a_head, b, memo), x);
    add_scaled(out, stuffle_rec(a, b_head, memo), y);
    add_scaled(out, stuffle_rec(a_head, b_head, memo), x + y);
    memo.emplace(std::move(key), out);
    return out;
}

template <class Map>
void drop_zeros(Map &m) {
    std::erase_if(m, [](const auto &kv) { return kv.second == 0; });
}

} // namespace

WordCombination shuffle(const Word &u, const Word &v) {
    WordCombination out;
    Word prefix;
    prefix.letters.reserve(u.size() + v.size());
    shuffle_into(u, 0, v, 0, prefix, out, Rational(1));
    return out;
}

WordCombination shuffle(const WordCombination &a, const WordCombination &b) {
    WordCombination out;
    for (const auto &[u, cu] : a)
        for (const auto &[v, cv] : b)
            for (const auto &[w, c] : shuffle(u, v))
                out[w] += cu * cv * c;
    drop_zeros(out);
    return out;
}

IndexCombination stuffle(const Index &a, const Index &b) {
    std::map<std::pair<Index, Index>, IndexCombination> memo;
    auto out = stuffle_rec(a, b, memo);
    drop_zeros(out);
    return out;
}

Word dual(const Word &w) {
    if (!w.admissible())
        throw std::invalid_argument("dual: word " + format_word(w) + " is not admissible");
    return w.reversed().flipped();
}

Index dual(const Index &idx) {
    if (!idx.admissible())
        throw std::invalid_argument("dual: index (" + format_index(idx) + ") is not admissible");
    return word_to_index(dual(index_to_word(idx)));
}

std::vector<Word> enumerate_admissible(int n) {
    std::vector<Word> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    if (n < 2)
        return out;
    const int inner = n - 2;
    out.reserve(std::size_t{1} << inner);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << inner); ++bits) {
        Word w;
        w.letters.resize(static_cast<std::size_t>(n));
        w.letters[0] = 1;
        for (int i = 0; i < inner; ++i)
            w.letters[static_cast<std::size_t>(1 + i)] = static_cast<std::uint8_t>((bits >> (inner - 1 - i)) & 1U);
        w.letters[static_cast<std::size_t>(n - 1)] = 0;
        out.push_back(std::move(w));
    }
    return out;
}

std::string format_word(const Word &w) {
    std::string s;
    s.reserve(w.size());
    for (auto b : w.letters)
        s.push_back(static_cast<char>('0' + b));
    return s;
}

std::string format_index(const Index &idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.parts.size(); ++i) {
        if (i)
            s.push_back(',');
        s += std::to_string(idx.parts[i]);
    }
    return s;
}

Word parse_word(std::string_view text) {
    Word w;
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("invalid word \"" + std::string(text) + "\": letters must be 0 or 1");
        w.letters.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return w;
}

Index parse_index(std::string_view text) {
    std::vector<int> ks;
    if (text.empty())
        return Index{};
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos)
            comma = text.size();
        auto field = text.substr(pos, comma - pos);
        while (!field.empty() && field.front() == ' ')
            field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ')
            field.remove_suffix(1);
        int k = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), k);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || k < 1)
            throw std::invalid_argument("invalid index \"" + std::string(text) + "\"");
        ks.push_back(k);
        pos = comma + 1;
    }
    return Index(std::move(ks));
}

} // namespace mzv
