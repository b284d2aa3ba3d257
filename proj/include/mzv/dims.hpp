#ifndef MZV_DIMS_HPP
#define MZV_DIMS_HPP

#include <vector>

#include "mzv/numeric.hpp"

namespace mzv {

// d_0..d_N of the recurrence d_{i+3} = d_{i+1} + d_i with d_0 = 1, d_1 = 0, d_2 = 1.
std::vector<BigInt> d_sequence(int max_n);

// Coefficients of 1/(1 - t^2 - t^3) up to t^N by power-series long division.
std::vector<BigInt> gf_coefficients(int max_n);

// Number of ordered tuples of odd integers > 1 summing to a, by enumeration.
BigInt op_count(int a);
// Same count from op(a) = sum_{b odd, 3 <= b <= a} op(a - b).
BigInt op_count_recurrence(int a);

enum class GapFamily { OddAtLeast3, AtLeast2 };

using GapSet = std::vector<int>;

bool is_gapset(const GapSet &s, GapFamily family);
// All nonempty subsets of [0, n] whose consecutive gaps satisfy the family
// constraint, in increasing order of their bitmask.
std::vector<GapSet> enumerate_gapsets(int n, GapFamily family);

struct LemmaRow {
    int n = 0;
    BigInt d;
    BigInt op;
    BigInt op_sum;                // sum over even a of op(n - a)
    bool sum_ok = false;          // d_n == op_sum
    bool gapset_checked = false;  // set when the enumeration part ran
    bool gapset_ok = true;        // gap-set counts equal op(n - a) for every a
    bool ok() const { return sum_ok && gapset_ok; }
};

// Verifies d_n = sum_{a even} op(n - a) for n <= max_n, and, for
// n <= gapset_max, #{S in N_n : a, n in S, S in [a, n]} = op(n - a) for
// every 0 <= a <= n.
std::vector<LemmaRow> check_counting_lemma(int max_n, int gapset_max);

} // namespace mzv

#endif
