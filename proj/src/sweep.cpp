#include "mzv/sweep.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "mzv/dims.hpp"
#include "mzv/evaluator.hpp"
#include "mzv/intrel.hpp"
#include "mzv/purity.hpp"
#include "mzv/relations.hpp"

namespace mzv {

namespace {

struct PoolEntry {
    GroupRingElement element;
    std::string name;
};

std::vector<PoolEntry> factor_pool() {
    using G = GroupRingElement;
    const G one = G::identity();
    return {
        {G::h(0), "(r0-1)"},
        {G::h(1), "(r1-1)"},
        {G::loop(-1) - one, "(r0^-1-1)"},
        {G::loop(-2) - one, "(r1^-1-1)"},
        {G::rho0() * G::rho1() - one, "(r0r1-1)"},
        {G::rho0() * G::rho1() - G::rho1() * G::rho0(), "(r0r1-r1r0)"},
    };
}

std::vector<Word> all_words(int n) {
    std::vector<Word> out;
    for (int bits = 0; bits < (1 << n); ++bits) {
        Word w;
        for (int i = n - 1; i >= 0; --i)
            w.letters.push_back(static_cast<std::uint8_t>((bits >> i) & 1));
        out.push_back(std::move(w));
    }
    return out;
}

std::vector<std::vector<int>> all_loops(int n) {
    std::vector<std::vector<int>> out;
    for (const auto &w : all_words(n)) {
        std::vector<int> g(w.letters.begin(), w.letters.end());
        out.push_back(std::move(g));
    }
    return out;
}

std::string loops_label(const std::vector<int> &g) {
    std::string s;
    for (int x : g)
        s += (s.empty() ? "r" : ",r") + std::to_string(x);
    return s.empty() ? "()" : s;
}

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string pow10_str(int e) { return "1e-" + std::to_string(e); }

CriterionResult dims_criterion(const SweepProfile &p) {
    CriterionResult r{1, "dimension sequence equals generating function coefficients", false, "", 0};
    Timer t;
    const auto d = d_sequence(p.dims_max);
    const auto gf = gf_coefficients(p.dims_max);
    r.seconds = t.seconds();
    r.pass = d == gf && r.seconds < 1.0;
    std::ostringstream os;
    os << "n <= " << p.dims_max << ", d_" << p.dims_max << " = " << d.back() << ", "
       << (d == gf ? "all equal" : "MISMATCH");
    r.detail = os.str();
    return r;
}

CriterionResult lemma_criterion(const SweepProfile &p) {
    CriterionResult r{2, "counting lemma and gap-set enumeration", false, "", 0};
    Timer t;
    const auto rows = check_counting_lemma(p.lemma_max, p.gapset_max);
    r.seconds = t.seconds();
    bool ok = true;
    int first_bad = -1;
    for (const auto &row : rows) {
        const bool good = row.ok() && (row.n > p.gapset_max || row.gapset_checked);
        if (!good && first_bad < 0)
            first_bad = row.n;
        ok = ok && good;
    }
    r.pass = ok && r.seconds < 30.0;
    r.detail = "sum identity n <= " + std::to_string(p.lemma_max) + ", gap sets n <= " + std::to_string(p.gapset_max) +
               (first_bad >= 0 ? ", first failure at n = " + std::to_string(first_bad) : "");
    return r;
}

CriterionResult purity_criterion(const SweepProfile &p) {
    CriterionResult r{3, "purity of the word complexes", false, "", 0};
    Timer t;
    bool ok = true;
    std::ostringstream os;
    for (int n = 1; n <= p.purity_max; ++n) {
        const auto rep = purity_report(n);
        bool d2 = true;
        for (const auto &e : rep.entries)
            d2 = d2 && e.d2_zero;
        const bool good = rep.all_pass && d2 && rep.total_dim == (std::size_t{1} << (n - 1));
        ok = ok && good;
        if (!good)
            os << "n = " << n << " fails; ";
    }
    r.seconds = t.seconds();
    r.pass = ok && r.seconds < 600.0;
    os << "n <= " << p.purity_max << ", aggregate dimension 2^(n-1) at every n";
    r.detail = os.str();
    return r;
}

CriterionResult eval_criterion(const SweepProfile &p) {
    CriterionResult r{4, "evaluation accuracy and backend agreement", false, "", 0};
    Timer t;
    const int P = p.eval_prec;
    bool ok = true;
    std::ostringstream os;
    {
        auto z2 = eval_holder(Index{2}, P);
        auto z12 = eval_holder(Index{1, 2}, P);
        auto z3 = eval_holder(Index{3}, P);
        PrecisionScope scope(static_cast<unsigned>(P + 20));
        const double e2 = upper(z2.value.value - pi() * pi() / 6);
        const double e3 = upper(z12.value.value - z3.value.value);
        const bool g2 = e2 < std::pow(10.0, -(P - 2));
        const bool g3 = e3 < std::pow(10.0, -(P - 10));
        ok = g2 && g3;
        os << "|zeta(2) - pi^2/6| = " << to_sci(e2) << " (< " << pow10_str(P - 2) << "), |zeta(1,2) - zeta(3)| = "
           << to_sci(e3) << " (< " << pow10_str(P - 10) << ")";
    }
    std::size_t checked = 0, agreed = 0;
    double worst = 0;
    for (int n = 2; n <= p.agreement_weight; ++n)
        for (const auto &w : enumerate_admissible(n)) {
            const Index idx = word_to_index(w);
            auto h = eval_holder(idx, 20);
            auto c = eval_chen(idx, 10);
            PrecisionScope scope(40);
            const double diff = upper(h.value.value - c.value.value);
            ++checked;
            if (diff <= h.value.bound + c.value.bound)
                ++agreed;
            worst = std::max(worst, diff);
        }
    ok = ok && checked == agreed;
    os << "; backends agree on " << agreed << "/" << checked << " indices of weight <= " << p.agreement_weight
       << " (max difference " << to_sci(worst) << ")";
    r.seconds = t.seconds();
    r.pass = ok;
    r.detail = os.str();
    return r;
}

CriterionResult relations_criterion(const SweepProfile &p) {
    CriterionResult r{5, "relation engine and upper bounds", false, "", 0};
    Timer t;
    Evaluator ev;
    std::ostringstream os;
    bool ok = true;

    // 4 zeta(1,3) - zeta(4) from the single weight-4 double shuffle pair
    const auto ds4 = gen_double_shuffle(4);
    std::map<Word, BigInt> expect{{index_to_word(Index{1, 3}), BigInt(4)}, {index_to_word(Index{4}), BigInt(-1)}};
    const bool symbolic = ds4.size() == 1 && ds4.front().coeffs == expect;
    const bool numeric4 = verify_numeric(ds4, 40, 1e-35, ev).front().ok;
    ok = symbolic && numeric4;
    os << "4 zeta(1,3) - zeta(4): " << (symbolic ? "derived" : "NOT derived") << ", "
       << (numeric4 ? "verified" : "NOT verified") << " to 1e-35";

    const auto d = d_sequence(std::max(p.relations_max, 4));
    os << "; U_n / d_n:";
    for (int n = 2; n <= p.relations_max; ++n) {
        const auto ub = upper_bound(n, true);
        const BigInt dn = d[static_cast<std::size_t>(n)];
        bool good;
        if (n <= 4)
            good = BigInt(ub.upper) == dn;
        else
            good = dn <= BigInt(ub.upper) && ub.upper <= (std::size_t{1} << (n - 2));
        if (n >= 5) {
            auto rels = gen_double_shuffle(n);
            auto du = gen_duality(n);
            rels.insert(rels.end(), du.begin(), du.end());
            for (const auto &c : verify_numeric(rels, 40, 1e-35, ev))
                good = good && c.ok;
        }
        ok = ok && good;
        os << " " << n << ":" << ub.upper << "/" << dn << (good ? "" : "(FAIL)");
    }
    r.seconds = t.seconds();
    r.pass = ok;
    r.detail = os.str();
    return r;
}

CriterionResult pslq_criterion(const SweepProfile &) {
    CriterionResult r{6, "integer relation detection", false, "", 0};
    Timer t;
    std::ostringstream os;
    std::vector<PrecReal> xs, ys;
    {
        PrecisionScope scope(100);
        auto z2 = eval_holder(Index{2}, 70).value;
        xs = {eval_holder(Index{4}, 70).value, z2 * z2};
        ys = {eval_holder(Index{5}, 90).value, eval_holder(Index{2, 3}, 90).value};
    }
    auto a = pslq(xs, BigInt(1000000), 60);
    const bool found = a.status == RelationResult::Status::Found &&
                       a.coefficients == std::vector<BigInt>{BigInt(5), BigInt(-2)} && upper(a.residual.value) < 1e-45;
    os << "[zeta(4), zeta(2)^2] -> " << status_name(a.status);
    if (a.status == RelationResult::Status::Found)
        os << " (" << a.coefficients[0] << ", " << a.coefficients[1] << "), residual " << to_sci(upper(a.residual.value));
    auto b = pslq(ys, BigInt(1000000), 80);
    const bool none = b.status == RelationResult::Status::NoneBelowBound;
    os << "; [zeta(5), zeta(2,3)] -> " << status_name(b.status) << " (norm bound " << b.norm_bound << ")";
    r.seconds = t.seconds();
    r.pass = found && none;
    r.detail = os.str();
    return r;
}

CriterionResult paths_criterion(const SweepProfile &p) {
    CriterionResult r{7, "group-ring pairings: vanishing, product formula, half-integrality", false, "", 0};
    Timer t;
    std::ostringstream os;
    bool ok = true;
    for (int n : p.path_ns) {
        const auto v1 = verify_paths(1, n, 12, 1e-6, 5);
        const auto v2 = verify_paths(2, n, 12, 1e-6);
        const auto v3 = verify_paths(3, n, 12, 1e-4);
        auto count = [](const std::vector<PathVerdict> &v) {
            std::size_t c = 0;
            for (const auto &x : v)
                c += x.pass;
            return c;
        };
        ok = ok && count(v1) == v1.size() && count(v2) == v2.size() && count(v3) == v3.size();
        os << "n = " << n << ": item1 " << count(v1) << "/" << v1.size() << ", item2 " << count(v2) << "/" << v2.size()
           << ", item3 " << count(v3) << "/" << v3.size() << "; ";
    }
    r.seconds = t.seconds();
    r.pass = ok && r.seconds < 1200.0;
    os << "tolerances 1e-6, 1e-6, 1e-4";
    r.detail = os.str();
    return r;
}

CriterionResult extension_criterion(const SweepProfile &) {
    CriterionResult r{8, "extension class exp(int dx/(x-z)) = (z-1)/z", false, "", 0};
    Timer t;
    std::ostringstream os;
    bool ok = true;
    double worst = 0;
    for (const Rational &z : {Rational(2), Rational(3), Rational(-1), Rational(5, 2)}) {
        auto e = extension_class_check(z, 32);
        ok = ok && e.difference < 1e-30;
        worst = std::max(worst, e.difference);
    }
    r.seconds = t.seconds();
    r.pass = ok;
    os << "z in {2, 3, -1, 5/2}, max |lhs - rhs| = " << to_sci(worst) << " (< 1e-30)";
    r.detail = os.str();
    return r;
}

} // namespace

std::vector<IdealSample> ideal_samples(int power, int count) {
    const auto pool = factor_pool();
    std::vector<IdealSample> out;
    for (int i = 0; i < count; ++i) {
        IdealSample s;
        for (int j = 0; j < power; ++j) {
            const auto &e = pool[static_cast<std::size_t>(i + j * i) % pool.size()];
            s.factors.push_back(e.element);
            s.label += e.name;
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<PathVerdict> verify_paths(int prop, int n, int prec, double tolerance, int samples) {
    if (n < 1 || n > 8)
        throw std::invalid_argument("verify_paths: n must be in [1, 8]");
    std::vector<PathVerdict> out;
    if (prop == 1) {
        if (n < 2)
            throw std::invalid_argument("verify_paths: item 1 needs n >= 2");
        for (const auto &s : ideal_samples(n + 1, samples))
            for (const auto &w : enumerate_admissible(n)) {
                PathVerdict v{1, n, s.label, w, verify_vanishing_on_I(n, s.factors, w, prec), "0", 0, false};
                v.residual = upper(abs(v.value.value));
                v.pass = v.residual < tolerance;
                out.push_back(std::move(v));
            }
    } else if (prop == 2) {
        for (const auto &g : all_loops(n))
            for (const auto &w : all_words(n)) {
                auto res = verify_product_formula(g, w, prec);
                const bool match = res.expected.re != 0 || res.expected.im != 0;
                PathVerdict v{2, n, loops_label(g), w, res.value, match ? "(2 pi i)^" + std::to_string(n) : "0",
                              res.residual, false};
                v.pass = v.residual < tolerance;
                out.push_back(std::move(v));
            }
    } else if (prop == 3) {
        if (n < 2)
            throw std::invalid_argument("verify_paths: item 3 needs n >= 2");
        for (const auto &g : all_loops(n - 1))
            for (const auto &w : enumerate_admissible(n)) {
                auto res = verify_half_integrality(g, w, prec, tolerance);
                std::ostringstream e;
                e << res.multiple << " (2 pi i)^" << n << "/2";
                PathVerdict v{3, n, loops_label(g), w, res.value, e.str(), res.residual, res.pass};
                out.push_back(std::move(v));
            }
    } else {
        throw std::invalid_argument("verify_paths: prop must be 1, 2 or 3");
    }
    return out;
}

SweepProfile quick_profile() {
    SweepProfile p;
    p.name = "quick";
    p.purity_max = 5;
    p.eval_prec = 30;
    p.agreement_weight = 5;
    p.relations_max = 5;
    p.path_ns = {2};
    return p;
}

SweepProfile full_profile() {
    SweepProfile p;
    p.name = "full";
    return p;
}

CriterionResult run_criterion(int id, const SweepProfile &p) {
    switch (id) {
    case 1:
        return dims_criterion(p);
    case 2:
        return lemma_criterion(p);
    case 3:
        return purity_criterion(p);
    case 4:
        return eval_criterion(p);
    case 5:
        return relations_criterion(p);
    case 6:
        return pslq_criterion(p);
    case 7:
        return paths_criterion(p);
    case 8:
        return extension_criterion(p);
    }
    throw std::invalid_argument("run_criterion: id must be in 1..8");
}

std::vector<CriterionResult> run_sweep(const SweepProfile &p) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 8; ++id)
        out.push_back(run_criterion(id, p));
    return out;
}

} // namespace mzv
