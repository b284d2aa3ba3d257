#ifndef MZV_RELATIONS_HPP
#define MZV_RELATIONS_HPP

#include <map>
#include <string>
#include <vector>

#include "mzv/evaluator.hpp"
#include "mzv/sparse_rank.hpp"
#include "mzv/words.hpp"

namespace mzv {

struct Provenance {
    enum class Kind { DoubleShuffle, Duality };
    Kind kind = Kind::DoubleShuffle;
    Word u; // the duality word when kind == Duality
    Word v;

    std::string to_string() const;
};

// sum over admissible words of weight n of coeff * zeta(word) = 0
struct RelationVector {
    int weight = 0;
    std::map<Word, BigInt> coeffs;
    Provenance provenance;
};

// shuffle(u, v) - stuffle(u, v) for admissible u, v of weights >= 2 summing
// to n; each unordered pair once, zero vectors dropped.
std::vector<RelationVector> gen_double_shuffle(int n);

// e_w - e_dual(w) for each admissible w with dual(w) != w, once per pair.
std::vector<RelationVector> gen_duality(int n);

struct UpperBound {
    int n = 0;
    std::size_t num_words = 0;
    std::size_t num_relations = 0;
    std::size_t rank = 0;
    std::size_t upper = 0; // num_words - rank
};

// Stacks the relations of weight n over the columns enumerate_admissible(n).
SparseIntMatrix relation_matrix(int n, const std::vector<RelationVector> &rels);

UpperBound upper_bound(int n, bool use_duality);

struct RelationCheck {
    PrecReal residual; // sum coeff * zeta, with its bound
    bool ok = false;   // |residual| below the tolerance
};

// Evaluates each relation with the split backend at prec digits.
std::vector<RelationCheck> verify_numeric(const std::vector<RelationVector> &rels, int prec, double tolerance,
                                          Evaluator &ev);

} // namespace mzv

#endif
