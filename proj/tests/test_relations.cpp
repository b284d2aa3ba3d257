#include "doctest.h"

#include <algorithm>
#include <random>

#include "mzv/dims.hpp"
#include "mzv/relations.hpp"

using namespace mzv;

namespace {

std::map<Word, BigInt> vec(std::initializer_list<std::pair<Index, long>> terms) {
    std::map<Word, BigInt> m;
    for (const auto &[idx, c] : terms)
        m[index_to_word(idx)] += c;
    return m;
}

} // namespace

TEST_CASE("double shuffle at weight 4") {
    auto rels = gen_double_shuffle(4);
    REQUIRE(rels.size() == 1);
    // 2 zeta(2,2) + 4 zeta(1,3) - (2 zeta(2,2) + zeta(4))
    CHECK(rels[0].coeffs == vec({{Index{1, 3}, 4}, {Index{4}, -1}}));
    CHECK(rels[0].provenance.to_string() == "double_shuffle(10,10)");
    CHECK(gen_double_shuffle(3).empty());
}

TEST_CASE("duality relations") {
    CHECK(gen_duality(2).empty());
    auto d3 = gen_duality(3);
    REQUIRE(d3.size() == 1);
    CHECK(d3[0].coeffs == vec({{Index{3}, 1}, {Index{1, 2}, -1}}));
    bool found = false;
    for (const auto &r : gen_duality(4))
        found = found || r.coeffs == vec({{Index{4}, 1}, {Index{1, 1, 2}, -1}}) ||
                r.coeffs == vec({{Index{4}, -1}, {Index{1, 1, 2}, 1}});
    CHECK(found);
    // pairs are disjoint and cover the non-self-dual words
    for (int n = 3; n <= 8; ++n) {
        std::size_t self = 0;
        for (const auto &w : enumerate_admissible(n))
            self += dual(w) == w;
        CHECK(2 * gen_duality(n).size() + self == enumerate_admissible(n).size());
    }
}

TEST_CASE("upper bounds") {
    CHECK(upper_bound(2, true).upper == 1);
    CHECK(upper_bound(2, true).rank == 0);
    CHECK(upper_bound(3, true).upper == 1);
    CHECK(upper_bound(3, false).upper == 2);
    // Weight 4 has one double shuffle relation (4 zeta(1,3) = zeta(4)) and one
    // duality relation (zeta(4) = zeta(1,1,2)); zeta(2,2) = 3/4 zeta(4) needs
    // the regularized zeta(1) zeta(3) product, so the finite bound stays at 2.
    auto u4 = upper_bound(4, true);
    CHECK(u4.num_relations == 2);
    CHECK(u4.rank == 2);
    CHECK(u4.upper == 2);
    CHECK(upper_bound(5, true).upper == 2);
    CHECK(upper_bound(6, true).upper == 3);
    CHECK(upper_bound(7, true).upper == 4);
    const auto d = d_sequence(8);
    for (int n = 2; n <= 8; ++n) {
        auto ub = upper_bound(n, true);
        CHECK(BigInt(ub.upper) >= d[static_cast<std::size_t>(n)]);
        CHECK(ub.upper <= (std::size_t{1} << (n - 2)));
        CHECK(ub.num_words == (std::size_t{1} << (n - 2)));
        CHECK(upper_bound(n, false).upper >= ub.upper);
    }
}

TEST_CASE("rank is invariant under row permutations") {
    for (int n = 5; n <= 7; ++n) {
        auto rels = gen_double_shuffle(n);
        auto d = gen_duality(n);
        rels.insert(rels.end(), d.begin(), d.end());
        const auto base = exact_rank(relation_matrix(n, rels));
        std::mt19937 rng(20261018 + n);
        for (int trial = 0; trial < 3; ++trial) {
            std::shuffle(rels.begin(), rels.end(), rng);
            CHECK(exact_rank(relation_matrix(n, rels)) == base);
        }
    }
}

TEST_CASE("relations vanish numerically") {
    Evaluator ev;
    for (int n = 4; n <= 7; ++n) {
        auto rels = gen_double_shuffle(n);
        auto d = gen_duality(n);
        rels.insert(rels.end(), d.begin(), d.end());
        for (const auto &c : verify_numeric(rels, 40, 1e-35, ev)) {
            CHECK(c.ok);
            CHECK(c.residual.bound < 1e-35);
        }
    }
    // a false relation is caught
    RelationVector bogus;
    bogus.weight = 4;
    bogus.coeffs = vec({{Index{1, 3}, 3}, {Index{4}, -1}});
    CHECK_FALSE(verify_numeric({bogus}, 40, 1e-35, ev).front().ok);
}
