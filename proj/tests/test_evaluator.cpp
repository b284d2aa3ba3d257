#include "doctest.h"

#include <cmath>

#include "mzv/evaluator.hpp"

using namespace mzv;

namespace {

// RK4 in t = log x for G_u(x) = integral of u over [0, x], u starting with 1.
// All prefixes are carried along; G_(u'a)' = omega_a G_u'.
double lower_quadrature(const Word &u, double x_end) {
    const std::size_t n = u.size();
    const double t0 = std::log(1e-14), t1 = std::log(x_end);
    const int steps = 4000;
    const double h = (t1 - t0) / steps;
    auto rhs = [&](double t, const std::vector<double> &g) {
        const double x = std::exp(t);
        std::vector<double> d(n + 1, 0.0);
        for (std::size_t i = 1; i <= n; ++i)
            d[i] = (u[i - 1] == 0 ? 1.0 : x / (x - 1)) * g[i - 1];
        return d;
    };
    std::vector<double> g(n + 1, 0.0);
    g[0] = 1.0;
    double t = t0;
    for (int s = 0; s < steps; ++s) {
        auto k1 = rhs(t, g);
        std::vector<double> tmp(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            tmp[i] = g[i] + h / 2 * k1[i];
        auto k2 = rhs(t + h / 2, tmp);
        for (std::size_t i = 0; i <= n; ++i)
            tmp[i] = g[i] + h / 2 * k2[i];
        auto k3 = rhs(t + h / 2, tmp);
        for (std::size_t i = 0; i <= n; ++i)
            tmp[i] = g[i] + h * k3[i];
        auto k4 = rhs(t + h, tmp);
        for (std::size_t i = 0; i <= n; ++i)
            g[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        t += h;
    }
    return g[n];
}

// H_v(x) = integral of v over [x, 1], v ending with 0, in s = log(1 - x).
// The first letter sits at x, so H_(a v')' = -omega_a H_v'.
double upper_quadrature(const Word &v, double x_start) {
    const std::size_t n = v.size();
    const double s0 = std::log(1e-14), s1 = std::log(1 - x_start);
    const int steps = 4000;
    const double h = (s1 - s0) / steps;
    // index i holds the suffix of length i
    auto rhs = [&](double s, const std::vector<double> &g) {
        const double y = std::exp(s);
        std::vector<double> d(n + 1, 0.0);
        for (std::size_t i = 1; i <= n; ++i) {
            const int a = v[n - i];
            d[i] = (a == 0 ? y / (1 - y) : -1.0) * g[i - 1];
        }
        return d;
    };
    std::vector<double> g(n + 1, 0.0);
    g[0] = 1.0;
    double s = s0;
    for (int k = 0; k < steps; ++k) {
        auto k1 = rhs(s, g);
        std::vector<double> tmp(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            tmp[i] = g[i] + h / 2 * k1[i];
        auto k2 = rhs(s + h / 2, tmp);
        for (std::size_t i = 0; i <= n; ++i)
            tmp[i] = g[i] + h / 2 * k2[i];
        auto k3 = rhs(s + h / 2, tmp);
        for (std::size_t i = 0; i <= n; ++i)
            tmp[i] = g[i] + h * k3[i];
        auto k4 = rhs(s + h, tmp);
        for (std::size_t i = 0; i <= n; ++i)
            g[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        s += h;
    }
    return g[n];
}

double to_d(const PrecReal &x) { return x.value.convert_to<double>(); }

// zeta(3) = 5/2 sum (-1)^(n+1) / (n^3 binom(2n, n)), at the current precision
Real apery_zeta3(int terms) {
    Real s = 0, c = 1;
    for (int n = 1; n <= terms; ++n) {
        c = c * (2 * n) * (2 * n - 1) / (Real(n) * n);
        Real t = Real(1) / (Real(n) * n * n * c);
        s += (n % 2) ? t : Real(-t);
    }
    return s * 5 / 2;
}

bool agrees(const MzvValue &a, const MzvValue &b) {
    PrecisionScope scope(60);
    return upper(a.value.value - b.value.value) <= a.value.bound + b.value.bound;
}

} // namespace

TEST_CASE("half-interval integrals match quadrature") {
    for (int len = 1; len <= 5; ++len) {
        for (int bits = 0; bits < (1 << len); ++bits) {
            Word w;
            for (int i = len - 1; i >= 0; --i)
                w.letters.push_back(static_cast<std::uint8_t>((bits >> i) & 1));
            if (w[0] == 1) {
                auto [idx, sign] = lower_half_integral(w);
                const double v = sign * to_d(li_half(idx, 15));
                CHECK(v == doctest::Approx(lower_quadrature(w, 0.5)).epsilon(1e-8));
            }
            if (w.letters.back() == 0) {
                auto [idx, sign] = upper_half_integral(w);
                const double v = sign * to_d(li_half(idx, 15));
                CHECK(v == doctest::Approx(upper_quadrature(w, 0.5)).epsilon(1e-8));
            }
        }
    }
    CHECK_THROWS_AS(upper_half_integral(Word{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(lower_half_integral(Word{0, 1}), std::invalid_argument);
}

TEST_CASE("split terms reproduce the full quadrature") {
    for (int n = 2; n <= 5; ++n)
        for (const auto &w : enumerate_admissible(n)) {
            const Index idx = word_to_index(w);
            double sum = 0;
            for (const auto &t : holder_terms(idx))
                sum += t.sign * to_d(li_half(t.left, 15)) * to_d(li_half(t.right, 15));
            // direct quadrature over [0,1]: zeta = (-1)^depth I(w)
            double direct = 0;
            for (std::size_t cut = 0; cut <= w.size(); ++cut) {
                const Word u = w.slice(0, cut), v = w.slice(cut, w.size());
                const double lo = u.empty() ? 1.0 : lower_quadrature(u, 0.5);
                const double hi = v.empty() ? 1.0 : upper_quadrature(v, 0.5);
                direct += lo * hi;
            }
            if (idx.depth() % 2)
                direct = -direct;
            CHECK(sum == doctest::Approx(direct).epsilon(1e-8));
            CHECK(sum > 0);
        }
}

TEST_CASE("series oracle") {
    auto z2 = eval_series(Index{2}, 100000);
    CHECK(z2.error_bound.value <= Real(1e-5));
    CHECK(std::fabs(to_d(z2.value) - M_PI * M_PI / 6) <= z2.value.bound);
    CHECK(z2.backend == Backend::Series);

    auto z22 = eval_series(Index{2, 2}, 10000);
    auto z4 = eval_series(Index{4}, 10000);
    auto z2b = eval_series(Index{2}, 10000);
    const double lhs = 2 * to_d(z22.value) + to_d(z4.value);
    const double rhs = to_d(z2b.value) * to_d(z2b.value);
    CHECK(std::fabs(lhs - rhs) <= 2 * z22.value.bound + z4.value.bound + 2 * 1.7 * z2b.value.bound);

    CHECK(eval_series(Index{}, 10).value.value == 1);
    CHECK_THROWS_AS(eval_series(Index{2, 1}, 100), std::invalid_argument);

    // the attached bounds hold against the high-precision backend
    for (const Index &idx : {Index{1, 2}, Index{1, 1, 2}, Index{2, 3}, Index{1, 1, 1, 2}, Index{3}, Index{1, 2, 2}}) {
        auto s = eval_series(idx, 2000);
        auto h = eval_holder(idx, 30);
        CHECK(agrees(s, h));
    }
}

TEST_CASE("polylogarithms at one half") {
    PrecisionScope scope(70);
    const double tol = 1e-50;
    CHECK(upper(li_half(Index{1}, 55).value - log2()) < tol);
    Real li2 = pi() * pi() / 12 - log2() * log2() / 2;
    CHECK(upper(li_half(Index{2}, 55).value - li2) < tol);
    CHECK(li_half(Index{2}, 55).bound < tol);
    CHECK(li_half(Index{}, 55).value == 1);
    // Li_3(1/2) = 7/8 zeta(3) - pi^2 log 2 / 12 + log^3 2 / 6
    Real li3 = Real(7) / 8 * apery_zeta3(120) - pi() * pi() * log2() / 12 + log2() * log2() * log2() / 6;
    CHECK(upper(li_half(Index{3}, 55).value - li3) < tol);
}

TEST_CASE("split evaluation") {
    auto z2 = eval_holder(Index{2}, 55);
    auto z12 = eval_holder(Index{1, 2}, 45);
    auto z4 = eval_holder(Index{4}, 45);
    auto z13 = eval_holder(Index{1, 3}, 45);
    PrecisionScope scope(70);
    CHECK(upper(z2.value.value - pi() * pi() / 6) < 1e-50);
    CHECK(z2.value.bound < 1e-50);
    CHECK(upper(z12.value.value - apery_zeta3(160)) < 1e-40);
    CHECK(upper(z4.value.value - 4 * z13.value.value) < 1e-40);
    CHECK_THROWS_AS(eval_holder(Index{2, 1}, 20), std::invalid_argument);
}

TEST_CASE("duality, weight <= 7") {
    for (int n = 2; n <= 7; ++n)
        for (const auto &w : enumerate_admissible(n)) {
            const Index idx = word_to_index(w);
            CHECK(agrees(eval_holder(idx, 30), eval_holder(dual(idx), 30)));
        }
}

TEST_CASE("backends agree, weight <= 6") {
    Evaluator ev;
    for (int n = 2; n <= 6; ++n)
        for (const auto &w : enumerate_admissible(n)) {
            const Index idx = word_to_index(w);
            auto h = ev.evaluate(idx, Backend::Holder, 12);
            auto c = ev.evaluate(idx, Backend::Chen, 10);
            CHECK(c.value.bound <= 1e-10);
            CHECK(agrees(h, c));
        }
    auto z2 = ev.evaluate(Index{2}, Backend::Chen, 10);
    CHECK(std::fabs(to_d(z2.value) - M_PI * M_PI / 6) < 1e-9);
    CHECK(to_d(ev.evaluate(Index{1, 2}, Backend::Chen, 10).value) > 0);
}

TEST_CASE("evaluator memo") {
    Evaluator ev;
    ev.evaluate(Index{3}, Backend::Holder, 20);
    ev.evaluate(Index{3}, Backend::Holder, 20);
    CHECK(ev.size() == 1);
    ev.evaluate(Index{3}, Backend::Holder, 25);
    ev.evaluate(Index{3}, Backend::Series, 25);
    CHECK(ev.size() == 3);
    CHECK(backend_name(parse_backend("chen")) == "chen");
    CHECK_THROWS_AS(parse_backend("quad"), std::invalid_argument);
}
