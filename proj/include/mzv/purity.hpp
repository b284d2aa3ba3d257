#ifndef MZV_PURITY_HPP
#define MZV_PURITY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mzv/sparse_rank.hpp"
#include "mzv/words.hpp"

namespace mzv {

// Generator (S, tau) of the word-W summand in degree p = #S. S and tau are
// bitmasks over [0, n]; tau selects coordinates among the complement of S
// minus its smallest element.
struct BasisElement {
    std::uint32_t s = 0;
    std::uint32_t tau = 0;
};

struct WordComplex {
    int n = 0;
    Word word;
    // spaces[p] lists the basis of C^p, p = 0..n.
    std::vector<std::vector<BasisElement>> spaces;
    // differentials[p] : C^p -> C^{p+1}, stored as (dim C^{p+1}) x (dim C^p).
    std::vector<SparseIntMatrix> differentials;

    std::size_t dim(int p) const;
};

// Throws std::invalid_argument if W is neither empty nor admissible, or if
// len(W) > n, or if n is outside [0, 30].
WordComplex build_complex(int n, const Word &w);

// True when d^{p+1} d^p vanishes identically for every p.
bool d_squared_zero(const WordComplex &c);

// dim H^p for p = 0..n.
std::vector<std::size_t> cohomology(const WordComplex &c);

struct PurityEntry {
    Word word;
    std::vector<std::size_t> dims;  // dim C^p
    std::vector<std::size_t> betti; // dim H^p
    bool d2_zero = false;
    long euler = 0;
    bool pass = false;
};

struct PurityReport {
    int n = 0;
    std::vector<PurityEntry> entries;
    std::size_t total_dim = 0;
    bool all_pass = false;
};

// Builds and reduces the complex for every word of length 0..n (or just the
// given word when `only` is set).
PurityReport purity_report(int n, const Word *only = nullptr);

} // namespace mzv

#endif
