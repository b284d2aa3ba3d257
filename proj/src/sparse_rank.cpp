#include "mzv/sparse_rank.hpp"

#include <limits>
#include <stdexcept>

namespace mzv {

void SparseIntMatrix::add(std::size_t r, std::size_t c, const BigInt &v) {
    if (r >= rows_.size() || c >= cols_)
        throw std::out_of_range("SparseIntMatrix::add out of range");
    auto &slot = rows_[r][c];
    slot += v;
    if (slot == 0)
        rows_[r].erase(c);
}

void SparseIntMatrix::append_row(Row row) {
    for (const auto &kv : row)
        if (kv.first >= cols_)
            throw std::out_of_range("SparseIntMatrix::append_row column out of range");
    std::erase_if(row, [](const auto &kv) { return kv.second == 0; });
    rows_.push_back(std::move(row));
}

std::size_t SparseIntMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto &r : rows_)
        n += r.size();
    return n;
}

bool SparseIntMatrix::is_zero() const { return nonzeros() == 0; }

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix &other) const {
    if (cols_ != other.rows())
        throw std::invalid_argument("SparseIntMatrix::multiply shape mismatch");
    SparseIntMatrix out(rows(), other.cols());
    for (std::size_t r = 0; r < rows(); ++r) {
        Row acc;
        for (const auto &[k, a] : rows_[r])
            for (const auto &[c, b] : other.rows_[k])
                acc[c] += a * b;
        std::erase_if(acc, [](const auto &kv) { return kv.second == 0; });
        out.rows_[r] = std::move(acc);
    }
    return out;
}

namespace {

void divide_content(SparseIntMatrix::Row &row) {
    BigInt g = 0;
    for (const auto &kv : row) {
        g = boost::multiprecision::gcd(g, kv.second);
        if (g == 1)
            return;
    }
    if (g > 1)
        for (auto &kv : row)
            kv.second /= g;
}

} // namespace

std::size_t exact_rank(const SparseIntMatrix &m) {
    std::vector<SparseIntMatrix::Row> active;
    active.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty()) {
            active.push_back(m.row(r));
            divide_content(active.back());
        }

    std::size_t rank = 0;
    while (!active.empty()) {
        std::map<std::size_t, std::size_t> col_count;
        for (const auto &row : active)
            for (const auto &kv : row)
                ++col_count[kv.first];

        std::size_t best_row = 0;
        std::size_t best_col = 0;
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        for (std::size_t r = 0; r < active.size(); ++r) {
            for (const auto &[c, v] : active[r]) {
                std::size_t cost = (active[r].size() - 1) * (col_count[c] - 1);
                // Ties go to unit pivots, which keep coefficients from growing.
                if (cost < best_cost || (cost == best_cost && boost::multiprecision::abs(v) == 1)) {
                    best_cost = cost;
                    best_row = r;
                    best_col = c;
                }
            }
        }

        SparseIntMatrix::Row pivot = std::move(active[best_row]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_row));
        ++rank;
        const BigInt a = pivot.at(best_col);

        std::vector<SparseIntMatrix::Row> next;
        next.reserve(active.size());
        for (auto &row : active) {
            auto it = row.find(best_col);
            if (it != row.end()) {
                const BigInt b = it->second;
                for (auto &kv : row)
                    kv.second *= a;
                for (const auto &[c, v] : pivot) {
                    auto &slot = row[c];
                    slot -= b * v;
                }
                std::erase_if(row, [](const auto &kv) { return kv.second == 0; });
                divide_content(row);
            }
            if (!row.empty())
                next.push_back(std::move(row));
        }
        active = std::move(next);
    }
    return rank;
}

} // namespace mzv
