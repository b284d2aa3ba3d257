#include "mzv/dims.hpp"

#include <stdexcept>

namespace mzv {

std::vector<BigInt> d_sequence(int max_n) {
    if (max_n < 0)
        throw std::invalid_argument("d_sequence: N must be >= 0");
    std::vector<BigInt> d{1, 0, 1};
    for (int i = 3; i <= max_n; ++i)
        d.push_back(d[static_cast<std::size_t>(i - 2)] + d[static_cast<std::size_t>(i - 3)]);
    d.resize(static_cast<std::size_t>(max_n) + 1);
    return d;
}

std::vector<BigInt> gf_coefficients(int max_n) {
    if (max_n < 0)
        throw std::invalid_argument("gf_coefficients: N must be >= 0");
    const std::vector<BigInt> denom{1, 0, -1, -1};
    // Long division of 1 by denom; denom[0] = 1 so each quotient term is the
    // current leading remainder coefficient.
    std::vector<BigInt> rem(static_cast<std::size_t>(max_n) + 1, BigInt(0));
    rem[0] = 1;
    std::vector<BigInt> q(rem.size());
    for (std::size_t i = 0; i < rem.size(); ++i) {
        q[i] = rem[i];
        for (std::size_t j = 1; j < denom.size() && i + j < rem.size(); ++j)
            rem[i + j] -= q[i] * denom[j];
    }
    return q;
}

namespace {

void count_compositions(int remaining, BigInt &count) {
    if (remaining == 0) {
        ++count;
        return;
    }
    for (int part = 3; part <= remaining; part += 2)
        count_compositions(remaining - part, count);
}

bool gap_ok(int gap, GapFamily family) {
    return family == GapFamily::OddAtLeast3 ? (gap >= 3 && gap % 2 == 1) : gap >= 2;
}

void extend_gapsets(int n, GapFamily family, GapSet &cur, std::vector<GapSet> &out) {
    out.push_back(cur);
    for (int next = cur.back() + 1; next <= n; ++next) {
        if (!gap_ok(next - cur.back(), family))
            continue;
        cur.push_back(next);
        extend_gapsets(n, family, cur, out);
        cur.pop_back();
    }
}

} // namespace

BigInt op_count(int a) {
    if (a < 0)
        throw std::invalid_argument("op_count: a must be >= 0");
    BigInt count = 0;
    count_compositions(a, count);
    return count;
}

BigInt op_count_recurrence(int a) {
    if (a < 0)
        throw std::invalid_argument("op_count_recurrence: a must be >= 0");
    std::vector<BigInt> op(static_cast<std::size_t>(a) + 1, BigInt(0));
    op[0] = 1;
    for (int m = 1; m <= a; ++m)
        for (int b = 3; b <= m; b += 2)
            op[static_cast<std::size_t>(m)] += op[static_cast<std::size_t>(m - b)];
    return op[static_cast<std::size_t>(a)];
}

bool is_gapset(const GapSet &s, GapFamily family) {
    if (s.empty())
        return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!gap_ok(s[i] - s[i - 1], family))
            return false;
    return true;
}

std::vector<GapSet> enumerate_gapsets(int n, GapFamily family) {
    if (n < 0)
        throw std::invalid_argument("enumerate_gapsets: n must be >= 0");
    std::vector<GapSet> out;
    GapSet cur;
    for (int first = 0; first <= n; ++first) {
        cur.assign(1, first);
        extend_gapsets(n, family, cur, out);
    }
    return out;
}

std::vector<LemmaRow> check_counting_lemma(int max_n, int gapset_max) {
    const auto d = d_sequence(max_n);
    std::vector<BigInt> op;
    op.reserve(static_cast<std::size_t>(max_n) + 1);
    for (int a = 0; a <= max_n; ++a)
        op.push_back(op_count(a));

    std::vector<LemmaRow> rows;
    for (int n = 0; n <= max_n; ++n) {
        LemmaRow row;
        row.n = n;
        row.d = d[static_cast<std::size_t>(n)];
        row.op = op[static_cast<std::size_t>(n)];
        row.op_sum = 0;
        for (int a = 0; a <= n; a += 2)
            row.op_sum += op[static_cast<std::size_t>(n - a)];
        row.sum_ok = row.op_sum == row.d;

        if (n <= gapset_max) {
            row.gapset_checked = true;
            std::vector<BigInt> counts(static_cast<std::size_t>(n) + 1, BigInt(0));
            for (const auto &s : enumerate_gapsets(n, GapFamily::OddAtLeast3))
                if (s.back() == n)
                    ++counts[static_cast<std::size_t>(s.front())];
            for (int a = 0; a <= n; ++a)
                if (counts[static_cast<std::size_t>(a)] != op[static_cast<std::size_t>(n - a)])
                    row.gapset_ok = false;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace mzv
