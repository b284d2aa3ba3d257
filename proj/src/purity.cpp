#include "mzv/purity.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace mzv {

std::size_t WordComplex::dim(int p) const {
    if (p < 0 || p >= static_cast<int>(spaces.size()))
        return 0;
    return spaces[static_cast<std::size_t>(p)].size();
}

namespace {

std::uint64_t key(std::uint32_t s, std::uint32_t tau) { return (std::uint64_t{s} << 32) | tau; }

std::vector<int> members(std::uint32_t mask, int n) {
    std::vector<int> out;
    for (int i = 0; i <= n; ++i)
        if (mask & (1U << i))
            out.push_back(i);
    return out;
}

void choose_subsets(const std::vector<int> &pool, std::size_t from, int remaining, std::uint32_t acc,
                    std::vector<std::uint32_t> &out) {
    if (remaining == 0) {
        out.push_back(acc);
        return;
    }
    for (std::size_t i = from; i + static_cast<std::size_t>(remaining) <= pool.size(); ++i)
        choose_subsets(pool, i + 1, remaining - 1, acc | (1U << pool[i]), out);
}

// Image of tau when i_l is removed from the complement; false when the
// restricted form vanishes.
bool restrict_tau(const std::vector<int> &comp, std::size_t l, std::uint32_t tau, std::uint32_t &out) {
    const std::size_t s = comp.size();
    auto in_tau = [&](std::size_t pos) { return (tau >> comp[pos]) & 1U; };
    out = tau;
    if (l == 0) {
        // x_{i_2} -> 0
        return !in_tau(1);
    }
    if (l == s - 1) {
        // x_{i_s} -> 1
        return !in_tau(s - 1);
    }
    // x_{i_l} -> x_{i_{l+1}}
    if (!in_tau(l))
        return true;
    if (in_tau(l + 1))
        return false;
    out = (tau & ~(1U << comp[l])) | (1U << comp[l + 1]);
    return true;
}

} // namespace

WordComplex build_complex(int n, const Word &w) {
    if (n < 0 || n > 30)
        throw std::invalid_argument("build_complex: n must be in [0, 30]");
    if (!w.empty() && !w.admissible())
        throw std::invalid_argument("build_complex: word must be empty or admissible");
    const int k = static_cast<int>(w.size());
    if (k > n)
        throw std::invalid_argument("build_complex: len(W) exceeds n");

    WordComplex c;
    c.n = n;
    c.word = w;
    c.spaces.resize(static_cast<std::size_t>(n) + 1);
    const std::uint32_t full = (n == 31) ? ~0U : ((1U << (n + 1)) - 1);

    std::vector<std::unordered_map<std::uint64_t, std::size_t>> position(c.spaces.size());
    for (std::uint32_t s = 0; s < full; ++s) {
        const int p = std::popcount(s);
        auto comp = members(full & ~s, n);
        std::vector<int> pool(comp.begin() + 1, comp.end());
        std::vector<std::uint32_t> taus;
        choose_subsets(pool, 0, k, 0, taus);
        for (auto tau : taus) {
            auto &space = c.spaces[static_cast<std::size_t>(p)];
            position[static_cast<std::size_t>(p)].emplace(key(s, tau), space.size());
            space.push_back({s, tau});
        }
    }

    for (int p = 0; p < n; ++p) {
        const auto &src = c.spaces[static_cast<std::size_t>(p)];
        SparseIntMatrix d(c.dim(p + 1), src.size());
        for (std::size_t col = 0; col < src.size(); ++col) {
            const auto [s, tau] = src[col];
            auto comp = members(full & ~s, n);
            for (std::size_t l = 0; l < comp.size(); ++l) {
                const std::uint32_t t = s | (1U << comp[l]);
                if (t == full)
                    continue;
                std::uint32_t tau2 = 0;
                if (!restrict_tau(comp, l, tau, tau2))
                    continue;
                const int below = std::popcount(s & ((1U << comp[l]) - 1U));
                auto it = position[static_cast<std::size_t>(p + 1)].find(key(t, tau2));
                if (it == position[static_cast<std::size_t>(p + 1)].end())
                    throw std::logic_error("build_complex: restricted generator outside the basis");
                d.add(it->second, col, BigInt(below % 2 == 0 ? 1 : -1));
            }
        }
        c.differentials.push_back(std::move(d));
    }
    return c;
}

bool d_squared_zero(const WordComplex &c) {
    for (std::size_t p = 0; p + 1 < c.differentials.size(); ++p)
        if (!c.differentials[p + 1].multiply(c.differentials[p]).is_zero())
            return false;
    return true;
}

std::vector<std::size_t> cohomology(const WordComplex &c) {
    std::vector<std::size_t> ranks(c.differentials.size());
    for (std::size_t p = 0; p < ranks.size(); ++p)
        ranks[p] = exact_rank(c.differentials[p]);
    std::vector<std::size_t> h;
    for (int p = 0; p <= c.n; ++p) {
        std::size_t out_rank = p < static_cast<int>(ranks.size()) ? ranks[static_cast<std::size_t>(p)] : 0;
        std::size_t in_rank = p > 0 ? ranks[static_cast<std::size_t>(p - 1)] : 0;
        h.push_back(c.dim(p) - out_rank - in_rank);
    }
    return h;
}

PurityReport purity_report(int n, const Word *only) {
    if (n < 0)
        throw std::invalid_argument("purity_report: n must be >= 0");
    std::vector<Word> words;
    if (only) {
        words.push_back(*only);
    } else {
        for (int k = 0; k <= n; ++k)
            for (auto &w : enumerate_admissible(k))
                words.push_back(std::move(w));
    }

    PurityReport rep;
    rep.n = n;
    rep.all_pass = true;
    for (const auto &w : words) {
        PurityEntry e;
        e.word = w;
        auto c = build_complex(n, w);
        for (int p = 0; p <= n; ++p) {
            e.dims.push_back(c.dim(p));
            e.euler += (p % 2 == 0 ? 1 : -1) * static_cast<long>(c.dim(p));
        }
        e.d2_zero = d_squared_zero(c);
        e.betti = cohomology(c);
        const int top = n - static_cast<int>(w.size());
        bool concentrated = true;
        for (int p = 0; p <= n; ++p)
            if (e.betti[static_cast<std::size_t>(p)] != (p == top ? 1U : 0U))
                concentrated = false;
        const long expected_euler = (top % 2 == 0) ? 1 : -1;
        e.pass = e.d2_zero && concentrated && e.euler == expected_euler;
        for (auto b : e.betti)
            rep.total_dim += b;
        rep.all_pass = rep.all_pass && e.pass;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

} // namespace mzv
