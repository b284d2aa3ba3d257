#include "mzv/evaluator.hpp"

#include <cmath>
#include <stdexcept>

#include "mzv/chen.hpp"

namespace mzv {

namespace {

void require_admissible(const Index &idx, const char *who) {
    if (!idx.empty() && !idx.admissible())
        throw std::invalid_argument(std::string(who) + ": index " + format_index(idx) + " is not admissible");
}

PrecReal bound_as_real(double b) { return PrecReal{Real(b), 0.0}; }

} // namespace

std::string backend_name(Backend b) {
    switch (b) {
    case Backend::Holder:
        return "holder";
    case Backend::Chen:
        return "chen";
    case Backend::Series:
        return "series";
    }
    return "?";
}

Backend parse_backend(const std::string &name) {
    if (name == "holder")
        return Backend::Holder;
    if (name == "chen")
        return Backend::Chen;
    if (name == "series")
        return Backend::Series;
    throw std::invalid_argument("unknown backend '" + name + "' (expected holder, chen or series)");
}

MzvValue eval_series(const Index &idx, long terms) {
    require_admissible(idx, "eval_series");
    MzvValue out;
    out.index = idx;
    out.backend = Backend::Series;
    if (idx.empty()) {
        out.value = PrecReal{Real(1), 0.0};
        out.error_bound = bound_as_real(0.0);
        return out;
    }
    const int l = idx.depth();
    if (terms < l)
        throw std::invalid_argument("eval_series: need at least depth terms");

    // acc[j] = sum over m_1 < ... < m_{j+1} <= m of the first j + 1 factors
    std::vector<long double> acc(static_cast<std::size_t>(l), 0.0L);
    for (long m = 1; m <= terms; ++m) {
        const long double lm = static_cast<long double>(m);
        for (int j = l - 1; j >= 0; --j) {
            const long double prefix = j == 0 ? 1.0L : acc[static_cast<std::size_t>(j - 1)];
            acc[static_cast<std::size_t>(j)] += prefix * std::pow(lm, -static_cast<long double>(idx.parts[static_cast<std::size_t>(j)]));
        }
    }

    // Tail over m_l > M. The inner sum is at most (1 + ln m)^j / j!, and
    // int_M^inf (1 + ln x)^j x^-s dx = sum_i j!/(j-i)! (1 + ln M)^(j-i) M^(1-s) / (s-1)^(i+1).
    // Depth one uses the midpoint estimate for the convex x^-s.
    const int j = l - 1;
    const double s = idx.parts.back();
    const double M = static_cast<double>(terms);
    double tail = 0.0;
    if (j == 0) {
        tail = std::pow(M + 0.5, 1 - s) / (s - 1);
    } else {
        const double lg = 1 + std::log(M);
        for (int i = 0; i <= j; ++i) {
            double fact = 1.0; // (j - i)!
            for (int t = 2; t <= j - i; ++t)
                fact *= t;
            tail += std::pow(lg, j - i) / fact * std::pow(M, 1 - s) / std::pow(s - 1, i + 1);
        }
    }
    const long double v = acc.back();
    const double rounding = static_cast<double>(v) * 4e-19 * l * std::log2(M + 2);
    out.value = PrecReal{Real(v), tail + rounding};
    out.error_bound = bound_as_real(out.value.bound);
    return out;
}

PrecReal li_half(const Index &idx, int prec) {
    if (idx.empty())
        return PrecReal{Real(1), 0.0};
    const unsigned digits = static_cast<unsigned>(prec + 12);
    PrecisionScope scope(digits);
    const int l = idx.depth();
    const int j = l - 1;
    const double target = std::pow(10.0, -(prec + 2));

    // Terms of the outer sum are t(m) <= 2^-m (1 + ln m)^j; past 6j the
    // ratio of consecutive bounds is below 0.6.
    long M = std::max<long>(6L * j + 1, 8);
    auto tail_bound = [&](long m) {
        return 2.5 * std::pow(2.0, -static_cast<double>(m + 1)) * std::pow(1 + std::log(static_cast<double>(m + 1)), j);
    };
    while (tail_bound(M) > target)
        ++M;

    std::vector<Real> acc(static_cast<std::size_t>(l), Real(0));
    Real half_pow(1);
    const Real half = Real(1) / 2;
    for (long m = 1; m <= M; ++m) {
        half_pow *= half;
        const Real rm(m);
        for (int i = l - 1; i >= 0; --i) {
            const int k = idx.parts[static_cast<std::size_t>(i)];
            Real term = (i == 0 ? Real(1) : acc[static_cast<std::size_t>(i - 1)]) / boost::multiprecision::pow(rm, k);
            if (i == l - 1)
                term *= half_pow;
            acc[static_cast<std::size_t>(i)] += term;
        }
    }
    PrecReal out{acc.back(), 0.0};
    out.bound = tail_bound(M) + upper(out.value) * rounding_unit(digits) * static_cast<double>(4 * M * l);
    return out;
}

std::pair<Index, int> lower_half_integral(const Word &w) {
    if (w.empty())
        return {Index{}, 1};
    Index idx = word_to_index(w);
    return {idx, idx.depth() % 2 == 0 ? 1 : -1};
}

std::pair<Index, int> upper_half_integral(const Word &w) {
    if (w.empty())
        return {Index{}, 1};
    if (w.letters.back() != 0)
        throw std::invalid_argument("upper_half_integral: word must end with 0");
    auto [idx, sign] = lower_half_integral(w.flipped().reversed());
    return {idx, (w.size() % 2 == 0) ? sign : -sign};
}

std::vector<HolderTerm> holder_terms(const Index &idx) {
    require_admissible(idx, "holder_terms");
    const Word w = index_to_word(idx);
    const int outer = idx.depth() % 2 == 0 ? 1 : -1;
    std::vector<HolderTerm> terms;
    for (std::size_t cut = 0; cut <= w.size(); ++cut) {
        auto [l, ls] = lower_half_integral(w.slice(0, cut));
        auto [r, rs] = upper_half_integral(w.slice(cut, w.size()));
        terms.push_back({l, r, outer * ls * rs});
    }
    return terms;
}

MzvValue eval_holder(const Index &idx, int prec) {
    require_admissible(idx, "eval_holder");
    MzvValue out;
    out.index = idx;
    out.backend = Backend::Holder;
    const unsigned digits = static_cast<unsigned>(prec + 10);
    PrecisionScope scope(digits);
    std::map<Index, PrecReal> li;
    auto get = [&](const Index &i) -> const PrecReal & {
        auto it = li.find(i);
        if (it == li.end())
            it = li.emplace(i, li_half(i, prec + 4)).first;
        return it->second;
    };
    PrecReal total{Real(0), 0.0};
    for (const auto &t : holder_terms(idx)) {
        PrecReal prod = get(t.left) * get(t.right);
        total = t.sign > 0 ? total + prod : total - prod;
    }
    out.value = total;
    out.error_bound = bound_as_real(total.bound);
    return out;
}

namespace {

// Regularized transports of [0, 1] shared by all indices of one weight.
const NCSeries &straight_path_series(int weight, int prec) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, NCSeries> memo;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(weight, prec);
    auto it = memo.find(key);
    if (it == memo.end())
        it = memo.emplace(key, transport_regularized(Path::segment(Point{0}, Point{1}), weight, prec)).first;
    return it->second;
}

} // namespace

MzvValue eval_chen(const Index &idx, int prec) {
    require_admissible(idx, "eval_chen");
    MzvValue out;
    out.index = idx;
    out.backend = Backend::Chen;
    if (idx.empty()) {
        out.value = PrecReal{Real(1), 0.0};
        out.error_bound = bound_as_real(0.0);
        return out;
    }
    const NCSeries &s = straight_path_series(idx.weight(), prec);
    PrecComplex c = s.coefficient(index_to_word(idx));
    PrecisionScope scope(static_cast<unsigned>(prec + 10));
    // the imaginary part vanishes exactly; whatever is left counts as error
    out.value.value = idx.depth() % 2 == 0 ? c.value.re : Real(-c.value.re);
    out.value.bound = c.bound + upper(c.value.im);
    out.error_bound = bound_as_real(out.value.bound);
    return out;
}

MzvValue Evaluator::evaluate(const Index &idx, Backend backend, int prec) {
    const auto key = std::make_tuple(idx, backend, prec);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
    }
    MzvValue v;
    switch (backend) {
    case Backend::Holder:
        v = eval_holder(idx, prec);
        break;
    case Backend::Chen:
        v = eval_chen(idx, prec);
        break;
    case Backend::Series:
        v = eval_series(idx, 100000);
        break;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(key, v);
    return v;
}

std::size_t Evaluator::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_.size();
}

} // namespace mzv
