#include "mzv/intrel.hpp"

#include <cmath>
#include <stdexcept>

#include "mzv/ncseries.hpp"

namespace mzv {

namespace {

using boost::multiprecision::abs;

BigInt floor_div(const BigInt &a, const BigInt &b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

BigInt round_rational(const Rational &q) {
    Rational shifted = q + Rational(1, 2);
    return floor_div(numerator(shifted), denominator(shifted));
}

BigInt round_real(const Real &x) {
    BigInt r;
    mpfr_get_z(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

Real to_real_int(const BigInt &z) { return Real(z.str()); }

PrecReal residual_of(const std::vector<PrecReal> &xs, const std::vector<BigInt> &c) {
    PrecReal sum{Real(0), 0.0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (c[i] == 0)
            continue;
        const Real ci = to_real_int(c[i]);
        PrecReal term{xs[i].value * ci, xs[i].bound * upper(ci)};
        sum = sum + term;
    }
    return sum;
}

} // namespace

std::string status_name(RelationResult::Status s) {
    return s == RelationResult::Status::Found ? "found" : "none_below_bound";
}

std::vector<BigInt> normalize_relation(std::vector<BigInt> c) {
    BigInt g = 0;
    for (const auto &v : c)
        g = boost::multiprecision::gcd(g, v);
    if (g == 0)
        return c;
    for (auto &v : c)
        v /= g;
    for (const auto &v : c)
        if (v != 0) {
            if (v < 0)
                for (auto &w : c)
                    w = -w;
            break;
        }
    return c;
}

RelationResult pslq(const std::vector<PrecReal> &xs, const BigInt &max_norm, int prec) {
    const std::size_t n = xs.size();
    if (n < 2)
        throw std::invalid_argument("pslq: need at least two values");
    if (prec < 20 + 10 * static_cast<int>(n))
        throw std::invalid_argument("pslq: precision " + std::to_string(prec) + " below 20 + 10 * " +
                                    std::to_string(n));
    const double input_budget = std::pow(10.0, -prec);
    for (const auto &x : xs)
        if (x.bound > input_budget)
            throw PrecisionError("pslq: input bound " + to_sci(x.bound) + " exceeds 1e-" + std::to_string(prec),
                                 x.bound);

    PrecisionScope scope(static_cast<unsigned>(prec + 5));
    const Real gamma = boost::multiprecision::sqrt(Real(4) / 3);
    const Real threshold = boost::multiprecision::pow(Real(10), -(prec - 10));
    const Real int_limit = boost::multiprecision::pow(Real(10), prec - 5);

    Real norm = 0;
    for (const auto &x : xs)
        norm += x.value * x.value;
    norm = boost::multiprecision::sqrt(norm);
    if (norm == 0)
        throw std::invalid_argument("pslq: all values are zero");
    std::vector<Real> y(n);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = xs[i].value / norm;

    std::vector<Real> s(n);
    {
        Real acc = 0;
        for (std::size_t k = n; k-- > 0;) {
            acc += y[k] * y[k];
            s[k] = boost::multiprecision::sqrt(acc);
        }
    }
    // H is n x (n - 1)
    std::vector<std::vector<Real>> H(n, std::vector<Real>(n - 1, Real(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n - 1 && j <= i; ++j) {
            if (i == j)
                H[i][j] = s[j + 1] / s[j];
            else
                H[i][j] = -y[i] * y[j] / (s[j] * s[j + 1]);
        }
    std::vector<std::vector<Real>> A(n, std::vector<Real>(n, Real(0))), B = A;
    for (std::size_t i = 0; i < n; ++i)
        A[i][i] = B[i][i] = 1;

    auto reduce = [&](std::size_t i, std::size_t jmax) {
        for (std::size_t j = jmax + 1; j-- > 0;) {
            if (H[j][j] == 0)
                continue;
            const Real t = boost::multiprecision::round(H[i][j] / H[j][j]);
            if (t == 0)
                continue;
            y[j] += t * y[i];
            for (std::size_t k = 0; k <= j; ++k)
                H[i][k] -= t * H[j][k];
            for (std::size_t k = 0; k < n; ++k) {
                A[i][k] -= t * A[j][k];
                B[k][j] += t * B[k][i];
            }
        }
    };
    for (std::size_t i = 1; i < n; ++i)
        reduce(i, std::min(i - 1, n - 2));

    RelationResult res;
    res.precision_used = prec;
    const int max_iter = 20000 * static_cast<int>(n);
    for (int iter = 1; iter <= max_iter; ++iter) {
        res.iterations = iter;
        std::size_t m = 0;
        Real best = -1;
        Real gp = gamma;
        for (std::size_t i = 0; i < n - 1; ++i) {
            Real v = gp * abs(H[i][i]);
            if (v > best) {
                best = v;
                m = i;
            }
            gp *= gamma;
        }
        std::swap(y[m], y[m + 1]);
        std::swap(H[m], H[m + 1]);
        std::swap(A[m], A[m + 1]);
        for (std::size_t k = 0; k < n; ++k)
            std::swap(B[k][m], B[k][m + 1]);
        if (m + 2 < n) {
            const Real t0 = boost::multiprecision::sqrt(H[m][m] * H[m][m] + H[m][m + 1] * H[m][m + 1]);
            const Real t1 = H[m][m] / t0, t2 = H[m][m + 1] / t0;
            for (std::size_t i = m; i < n; ++i) {
                const Real t3 = H[i][m], t4 = H[i][m + 1];
                H[i][m] = t1 * t3 + t2 * t4;
                H[i][m + 1] = -t2 * t3 + t1 * t4;
            }
        }
        for (std::size_t i = m + 1; i < n; ++i)
            reduce(i, std::min(i - 1, m + 1));

        // a relation among the columns of B shows up as a vanishing y entry
        std::size_t jmin = 0;
        for (std::size_t j = 1; j < n; ++j)
            if (abs(y[j]) < abs(y[jmin]))
                jmin = j;
        if (abs(y[jmin]) < threshold) {
            std::vector<BigInt> c(n);
            for (std::size_t k = 0; k < n; ++k)
                c[k] = round_real(B[k][jmin]);
            res.status = RelationResult::Status::Found;
            res.coefficients = normalize_relation(std::move(c));
            Real nrm = 0;
            for (const auto &v : res.coefficients)
                nrm += to_real_int(v) * to_real_int(v);
            res.norm_bound = round_real(boost::multiprecision::ceil(boost::multiprecision::sqrt(nrm)));
            res.residual = residual_of(xs, res.coefficients);
            res.lll_agrees = lll_relation(xs, prec - 10) == res.coefficients;
            return res;
        }

        Real hmax = 0;
        for (std::size_t j = 0; j < n - 1; ++j)
            if (abs(H[j][j]) > hmax)
                hmax = abs(H[j][j]);
        const Real lower = Real(1) / hmax;
        if (lower > to_real_int(max_norm)) {
            res.status = RelationResult::Status::NoneBelowBound;
            res.norm_bound = round_real(boost::multiprecision::floor(lower));
            return res;
        }
        Real amax = 0;
        for (const auto &row : A)
            for (const auto &v : row)
                if (abs(v) > amax)
                    amax = abs(v);
        if (amax > int_limit)
            throw PrecisionError("pslq: integer matrix exceeds the working precision", upper(lower));
    }
    throw PrecisionError("pslq: iteration limit reached", 0.0);
}

std::vector<BigInt> lll_relation(const std::vector<PrecReal> &xs, int digits) {
    const std::size_t n = xs.size();
    PrecisionScope scope(static_cast<unsigned>(digits + 10));
    const Real scale = boost::multiprecision::pow(Real(10), digits);
    std::vector<std::vector<BigInt>> b(n, std::vector<BigInt>(n + 1, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i) {
        b[i][i] = 1;
        b[i][n] = round_real(xs[i].value * scale);
    }

    auto dot = [](const std::vector<Rational> &u, const std::vector<Rational> &v) {
        Rational s = 0;
        for (std::size_t i = 0; i < u.size(); ++i)
            s += u[i] * v[i];
        return s;
    };
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> bn(n);
    auto gso = [&] {
        std::vector<std::vector<Rational>> bs(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Rational> bi(b[i].begin(), b[i].end());
            bs[i] = bi;
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(bi, bs[j]) / bn[j];
                for (std::size_t k = 0; k < bi.size(); ++k)
                    bs[i][k] -= mu[i][j] * bs[j][k];
            }
            bn[i] = dot(bs[i], bs[i]);
        }
    };
    gso();
    const Rational delta(3, 4);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            const BigInt q = round_rational(mu[k][j]);
            if (q == 0)
                continue;
            for (std::size_t c = 0; c <= n; ++c)
                b[k][c] -= q * b[j][c];
            for (std::size_t l = 0; l < j; ++l)
                mu[k][l] -= Rational(q) * mu[j][l];
            mu[k][j] -= Rational(q);
        }
        if (bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gso();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    std::vector<BigInt> c(b[0].begin(), b[0].begin() + static_cast<std::ptrdiff_t>(n));
    return normalize_relation(std::move(c));
}

} // namespace mzv
