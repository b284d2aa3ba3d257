#ifndef MZV_INTREL_HPP
#define MZV_INTREL_HPP

#include <string>
#include <vector>

#include "mzv/numeric.hpp"

namespace mzv {

struct RelationResult {
    enum class Status { Found, NoneBelowBound };
    Status status = Status::NoneBelowBound;
    // gcd 1, first nonzero entry positive
    std::vector<BigInt> coefficients;
    // Found: the norm bound reached. NoneBelowBound: every relation has
    // Euclidean norm above this.
    BigInt norm_bound;
    int precision_used = 0;
    PrecReal residual;
    int iterations = 0;
    // Found: whether LLL on the scaled lattice produced the same vector.
    bool lll_agrees = false;
};

std::string status_name(RelationResult::Status s);

// Ferguson-Bailey PSLQ with gamma = sqrt(4/3). A relation is accepted when
// some |y_j| falls below 10^-(prec - 10). Throws std::invalid_argument when
// |xs| < 2 or prec < 20 + 10 |xs|, and PrecisionError when an input bound
// exceeds 10^-prec or the integer matrix outgrows the working precision.
RelationResult pslq(const std::vector<PrecReal> &xs, const BigInt &max_norm, int prec);

// Shortest vector of the LLL-reduced lattice spanned by the rows
// [e_i | round(10^digits x_i)], exact rational Gram-Schmidt, delta = 3/4.
// Returns the first n entries of the reduced first basis vector, normalized.
std::vector<BigInt> lll_relation(const std::vector<PrecReal> &xs, int digits);

// Divide by the gcd and make the first nonzero entry positive.
std::vector<BigInt> normalize_relation(std::vector<BigInt> c);

} // namespace mzv

#endif
