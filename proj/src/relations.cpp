#include "mzv/relations.hpp"

#include <cmath>
#include <stdexcept>

namespace mzv {

std::string Provenance::to_string() const {
    if (kind == Kind::Duality)
        return "duality(" + format_word(u) + ")";
    return "double_shuffle(" + format_word(u) + "," + format_word(v) + ")";
}

std::vector<RelationVector> gen_double_shuffle(int n) {
    std::vector<RelationVector> out;
    for (int i = 2; 2 * i <= n; ++i) {
        const auto left = enumerate_admissible(i);
        const auto right = enumerate_admissible(n - i);
        for (const auto &u : left)
            for (const auto &v : right) {
                if (2 * i == n && v < u)
                    continue;
                RelationVector r;
                r.weight = n;
                r.provenance = {Provenance::Kind::DoubleShuffle, u, v};
                for (const auto &[w, c] : shuffle(u, v))
                    r.coeffs[w] += numerator(c);
                for (const auto &[idx, c] : stuffle(word_to_index(u), word_to_index(v)))
                    r.coeffs[index_to_word(idx)] -= numerator(c);
                std::erase_if(r.coeffs, [](const auto &kv) { return kv.second == 0; });
                if (!r.coeffs.empty())
                    out.push_back(std::move(r));
            }
    }
    return out;
}

std::vector<RelationVector> gen_duality(int n) {
    std::vector<RelationVector> out;
    for (const auto &w : enumerate_admissible(n)) {
        const Word d = dual(w);
        if (!(w < d))
            continue;
        RelationVector r;
        r.weight = n;
        r.provenance = {Provenance::Kind::Duality, w, Word{}};
        r.coeffs[w] = 1;
        r.coeffs[d] = -1;
        out.push_back(std::move(r));
    }
    return out;
}

SparseIntMatrix relation_matrix(int n, const std::vector<RelationVector> &rels) {
    const auto words = enumerate_admissible(n);
    std::map<Word, std::size_t> col;
    for (std::size_t i = 0; i < words.size(); ++i)
        col.emplace(words[i], i);
    SparseIntMatrix m(0, words.size());
    for (const auto &r : rels) {
        if (r.weight != n)
            throw std::invalid_argument("relation_matrix: relation of weight " + std::to_string(r.weight));
        SparseIntMatrix::Row row;
        for (const auto &[w, c] : r.coeffs)
            row.emplace(col.at(w), c);
        m.append_row(std::move(row));
    }
    return m;
}

UpperBound upper_bound(int n, bool use_duality) {
    if (n < 2)
        throw std::invalid_argument("upper_bound: weight must be >= 2");
    auto rels = gen_double_shuffle(n);
    if (use_duality) {
        auto d = gen_duality(n);
        rels.insert(rels.end(), d.begin(), d.end());
    }
    UpperBound ub;
    ub.n = n;
    ub.num_words = enumerate_admissible(n).size();
    ub.num_relations = rels.size();
    ub.rank = exact_rank(relation_matrix(n, rels));
    ub.upper = ub.num_words - ub.rank;
    return ub;
}

std::vector<RelationCheck> verify_numeric(const std::vector<RelationVector> &rels, int prec, double tolerance,
                                          Evaluator &ev) {
    std::vector<RelationCheck> out;
    PrecisionScope scope(static_cast<unsigned>(prec + 10));
    for (const auto &r : rels) {
        PrecReal sum{Real(0), 0.0};
        for (const auto &[w, c] : r.coeffs) {
            const MzvValue z = ev.evaluate(word_to_index(w), Backend::Holder, prec);
            PrecReal term{z.value.value * Real(c.str()), z.value.bound * std::fabs(c.convert_to<double>())};
            sum = sum + term;
        }
        RelationCheck rc;
        rc.ok = upper(sum.value) < tolerance;
        rc.residual = std::move(sum);
        out.push_back(std::move(rc));
    }
    return out;
}

} // namespace mzv
