#include "mzv/ncseries.hpp"

#include <algorithm>

namespace mzv {

NCSeries::NCSeries(int cap) : cap_(cap) {
    if (cap < 0 || cap > 20)
        throw std::invalid_argument("NCSeries: cap must be in [0, 20]");
    const std::size_t n = (std::size_t{1} << (cap + 1)) - 1;
    coeff_.assign(n, Complex());
    bound_.assign(n, 0.0);
    valid_.assign(n, 1);
}

NCSeries NCSeries::unit(int cap) {
    NCSeries s(cap);
    s.coeff_[0] = Complex(1);
    return s;
}

NCSeries NCSeries::zero(int cap) { return NCSeries(cap); }

std::size_t NCSeries::slot(const Word &w) {
    std::uint64_t bits = 0;
    for (auto b : w.letters)
        bits = (bits << 1) | b;
    return slot(w.size(), bits);
}

Word NCSeries::word_at(std::size_t s) {
    std::size_t len = 0;
    while (((std::size_t{1} << (len + 1)) - 1) <= s)
        ++len;
    const std::uint64_t bits = s - ((std::size_t{1} << len) - 1);
    Word w;
    for (std::size_t i = 0; i < len; ++i)
        w.letters.push_back(static_cast<std::uint8_t>((bits >> (len - 1 - i)) & 1U));
    return w;
}

bool NCSeries::has(const Word &w) const {
    return static_cast<int>(w.size()) <= cap_ && valid_[slot(w)];
}

PrecComplex NCSeries::coefficient(const Word &w) const {
    if (static_cast<int>(w.size()) > cap_)
        throw std::out_of_range("NCSeries: word " + format_word(w) + " exceeds the degree cap");
    const auto s = slot(w);
    if (!valid_[s])
        throw std::domain_error("NCSeries: coefficient of " + format_word(w) +
                                " diverges at a regularized endpoint");
    return {coeff_[s], bound_[s]};
}

double NCSeries::max_bound() const {
    double m = 0.0;
    for (std::size_t s = 0; s < bound_.size(); ++s)
        if (valid_[s])
            m = std::max(m, bound_[s]);
    return m;
}

NCSeries &NCSeries::operator+=(const NCSeries &o) {
    if (o.cap_ != cap_)
        throw std::invalid_argument("NCSeries: cap mismatch");
    const double ru = rounding_unit(current_digits());
    for (std::size_t s = 0; s < coeff_.size(); ++s) {
        coeff_[s] += o.coeff_[s];
        bound_[s] += o.bound_[s] + ru * upper(abs(coeff_[s]));
        valid_[s] &= o.valid_[s];
    }
    return *this;
}

NCSeries &NCSeries::operator-=(const NCSeries &o) {
    if (o.cap_ != cap_)
        throw std::invalid_argument("NCSeries: cap mismatch");
    const double ru = rounding_unit(current_digits());
    for (std::size_t s = 0; s < coeff_.size(); ++s) {
        coeff_[s] -= o.coeff_[s];
        bound_[s] += o.bound_[s] + ru * upper(abs(coeff_[s]));
        valid_[s] &= o.valid_[s];
    }
    return *this;
}

NCSeries NCSeries::scaled(const Rational &q) const {
    NCSeries r = *this;
    const Real f = to_real(q);
    const double fb = upper(f);
    for (std::size_t s = 0; s < coeff_.size(); ++s) {
        r.coeff_[s] *= f;
        r.bound_[s] *= fb;
    }
    return r;
}

NCSeries NCSeries::antipode() const {
    NCSeries r(cap_);
    for (std::size_t len = 0; len <= static_cast<std::size_t>(cap_); ++len) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
            std::uint64_t rev = 0;
            for (std::size_t i = 0; i < len; ++i)
                rev |= ((bits >> i) & 1U) << (len - 1 - i);
            const auto src = slot(len, rev);
            const auto dst = slot(len, bits);
            r.coeff_[dst] = (len % 2 == 0) ? coeff_[src] : -coeff_[src];
            r.bound_[dst] = bound_[src];
            r.valid_[dst] = valid_[src];
        }
    }
    return r;
}

NCSeries compose(const NCSeries &first, const NCSeries &second) {
    if (first.cap() != second.cap())
        throw std::invalid_argument("compose: degree caps differ");
    const int cap = first.cap();
    NCSeries out(cap);
    const double ru = rounding_unit(current_digits());

    std::vector<double> mag_f(first.slots()), mag_g(second.slots());
    for (std::size_t s = 0; s < first.slots(); ++s) {
        mag_f[s] = upper(abs(first.value(s)));
        mag_g[s] = upper(abs(second.value(s)));
    }

    for (std::size_t len = 0; len <= static_cast<std::size_t>(cap); ++len) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
            Complex acc;
            double err = 0.0;
            double mag = 0.0;
            bool ok = true;
            for (std::size_t j = 0; j <= len; ++j) {
                const auto fs = NCSeries::slot(j, bits >> (len - j));
                const auto gs = NCSeries::slot(len - j, bits & ((std::uint64_t{1} << (len - j)) - 1));
                ok = ok && first.valid(fs) && second.valid(gs);
                acc += first.value(fs) * second.value(gs);
                err += mag_f[fs] * second.bound(gs) + first.bound(fs) * mag_g[gs] +
                       first.bound(fs) * second.bound(gs);
                mag += mag_f[fs] * mag_g[gs];
            }
            const auto s = NCSeries::slot(len, bits);
            out.value(s) = std::move(acc);
            out.bound(s) = err + 4.0 * ru * mag * static_cast<double>(len + 1);
            out.set_valid(s, ok);
        }
    }
    return out;
}

} // namespace mzv
