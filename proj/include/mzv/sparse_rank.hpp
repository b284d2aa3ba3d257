#ifndef MZV_SPARSE_RANK_HPP
#define MZV_SPARSE_RANK_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "mzv/numeric.hpp"

namespace mzv {

// Row-major sparse matrix of unbounded integers.
class SparseIntMatrix {
public:
    using Row = std::map<std::size_t, BigInt>;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    void add(std::size_t r, std::size_t c, const BigInt &v);
    void append_row(Row row);
    const Row &row(std::size_t r) const { return rows_[r]; }
    std::size_t nonzeros() const;
    bool is_zero() const;

    // this * other
    SparseIntMatrix multiply(const SparseIntMatrix &other) const;

private:
    std::vector<Row> rows_;
    std::size_t cols_ = 0;
};

// Exact rank over Q. Fraction-free elimination: the pivot row is combined
// into each other row as r <- a*r - b*p and every row is divided by its
// content, so entries stay integral and small. Pivots are picked by a
// Markowitz count.
std::size_t exact_rank(const SparseIntMatrix &m);

} // namespace mzv

#endif
