#include "doctest.h"

#include "mzv/purity.hpp"

using namespace mzv;

namespace {

std::size_t binom(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

// Rank over Q by dense rational Gaussian elimination; independent of the
// fraction-free sparse routine.
std::size_t rational_rank(const SparseIntMatrix &m) {
    std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto &[c, v] : m.row(r))
            a[r][c] = Rational(v);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == rank || a[r][c] == 0)
                continue;
            Rational f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < m.cols(); ++k)
                a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

} // namespace

TEST_CASE("small complexes") {
    auto c = build_complex(2, Word{1, 0});
    CHECK(c.dim(0) == 1);
    CHECK(c.dim(1) == 0);
    CHECK(c.dim(2) == 0);
    CHECK(cohomology(c) == std::vector<std::size_t>{1, 0, 0});

    auto e = build_complex(2, Word{});
    CHECK(e.dim(0) == 1);
    CHECK(e.dim(1) == 3);
    CHECK(e.dim(2) == 3);
    CHECK(cohomology(e) == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("basis sizes follow the binomial formula") {
    for (int n = 0; n <= 6; ++n)
        for (int k = 0; k <= n; ++k)
            for (const auto &w : enumerate_admissible(k)) {
                auto c = build_complex(n, w);
                for (int p = 0; p <= n; ++p)
                    CHECK(c.dim(p) == binom(n + 1, p) * binom(n - p, k));
            }
}

TEST_CASE("d squared vanishes, n <= 8") {
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; k <= n; ++k)
            for (const auto &w : enumerate_admissible(k))
                CHECK(d_squared_zero(build_complex(n, w)));
}

TEST_CASE("sparse rank agrees with rational elimination") {
    for (int n = 2; n <= 5; ++n)
        for (int k : {0, 2, 3}) {
            if (k > n)
                continue;
            auto c = build_complex(n, enumerate_admissible(k).front());
            for (const auto &d : c.differentials)
                CHECK(exact_rank(d) == rational_rank(d));
        }
    SparseIntMatrix m(3, 3);
    m.add(0, 0, 2);
    m.add(0, 1, 4);
    m.add(1, 0, 3);
    m.add(1, 1, 6);
    m.add(2, 2, 5);
    CHECK(exact_rank(m) == 2);
}

TEST_CASE("cohomology concentrated in degree n - k") {
    auto a = cohomology(build_complex(3, Word{1, 0}));
    CHECK(a == std::vector<std::size_t>{0, 1, 0, 0});
    auto b = cohomology(build_complex(4, Word{1, 1, 0}));
    CHECK(b == std::vector<std::size_t>{0, 1, 0, 0, 0});
    auto c = cohomology(build_complex(4, Word{}));
    CHECK(c == std::vector<std::size_t>{0, 0, 0, 0, 1});
}

TEST_CASE("purity reports") {
    auto r2 = purity_report(2);
    CHECK(r2.all_pass);
    CHECK(r2.total_dim == 2);
    auto r3 = purity_report(3);
    CHECK(r3.all_pass);
    CHECK(r3.entries.size() == 4);
    auto r5 = purity_report(5);
    CHECK(r5.all_pass);
    CHECK(r5.total_dim == 16);
    for (const auto &e : r5.entries)
        CHECK(e.euler == ((5 - static_cast<long>(e.word.size())) % 2 == 0 ? 1 : -1));

    Word only{1, 1, 0};
    auto single = purity_report(4, &only);
    CHECK(single.entries.size() == 1);
    CHECK(single.all_pass);

    CHECK_THROWS_AS(build_complex(3, Word{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_complex(2, Word{1, 0, 0}), std::invalid_argument);
}
