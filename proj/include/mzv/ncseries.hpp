#ifndef MZV_NCSERIES_HPP
#define MZV_NCSERIES_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mzv/numeric.hpp"
#include "mzv/words.hpp"

namespace mzv {

class PrecisionError : public std::runtime_error {
public:
    PrecisionError(const std::string &what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

// Truncated series in the free algebra on e0, e1, all words of length <= cap.
// The coefficient of e_{w_1} ... e_{w_k} is the iterated integral with w_1 on
// the earliest point of the path. Coefficients carry absolute error bounds; a
// slot may be marked invalid when the underlying integral diverges.
class NCSeries {
public:
    NCSeries() = default;
    explicit NCSeries(int cap);

    static NCSeries unit(int cap);
    static NCSeries zero(int cap);

    int cap() const { return cap_; }
    std::size_t slots() const { return coeff_.size(); }

    static std::size_t slot(std::size_t len, std::uint64_t bits) { return ((std::size_t{1} << len) - 1) + bits; }
    static std::size_t slot(const Word &w);
    static Word word_at(std::size_t slot);

    // Throws std::out_of_range beyond the cap, std::domain_error if the
    // coefficient was not computed (divergent regularized limit).
    PrecComplex coefficient(const Word &w) const;
    bool has(const Word &w) const;

    Complex &value(std::size_t s) { return coeff_[s]; }
    const Complex &value(std::size_t s) const { return coeff_[s]; }
    double &bound(std::size_t s) { return bound_[s]; }
    double bound(std::size_t s) const { return bound_[s]; }
    bool valid(std::size_t s) const { return valid_[s] != 0; }
    void set_valid(std::size_t s, bool v) { valid_[s] = v ? 1 : 0; }

    double max_bound() const;

    NCSeries &operator+=(const NCSeries &o);
    NCSeries &operator-=(const NCSeries &o);
    NCSeries scaled(const Rational &q) const;

    // Coefficients of the reversed path: (-1)^|w| times the coefficient of
    // the reversed word.
    NCSeries antipode() const;

private:
    int cap_ = 0;
    std::vector<Complex> coeff_;
    std::vector<double> bound_;
    std::vector<std::uint8_t> valid_;
};

// Series of the concatenated path: first traverse F's path, then G's.
// coeff(w) = sum over w = uv of F(u) G(v). Throws std::invalid_argument on a
// cap mismatch.
NCSeries compose(const NCSeries &first, const NCSeries &second);

inline NCSeries operator+(NCSeries a, const NCSeries &b) { return a += b; }
inline NCSeries operator-(NCSeries a, const NCSeries &b) { return a -= b; }

} // namespace mzv

#endif
