#ifndef MZV_NUMERIC_HPP
#define MZV_NUMERIC_HPP

#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace mzv {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Sets the MPFR default precision (decimal digits) for the lifetime of the
// scope. Every Real constructed inside the scope carries that precision.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope &) = delete;
    PrecisionScope &operator=(const PrecisionScope &) = delete;

private:
    unsigned saved_;
};

unsigned current_digits();

Real pi();
Real log2();
Real to_real(const Rational &q);

// Decimal rendering with `digits` digits after the point.
std::string to_fixed(const Real &x, unsigned digits);
// Scientific rendering with `digits` significant digits; used for bounds.
std::string to_sci(double x);

// Largest double not below |x| (to 1 part in 1e15), for bound bookkeeping.
double upper(const Real &x);

// 10^-digits, the relative rounding unit assumed for the current precision.
double rounding_unit(unsigned digits);

struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r), im(0) {}

    Complex &operator+=(const Complex &o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex &operator-=(const Complex &o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex &operator*=(const Complex &o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex &operator*=(const Real &s) {
        re *= s;
        im *= s;
        return *this;
    }
    Complex &operator/=(const Complex &o);
};

inline Complex operator+(Complex a, const Complex &b) { return a += b; }
inline Complex operator-(Complex a, const Complex &b) { return a -= b; }
inline Complex operator*(Complex a, const Complex &b) { return a *= b; }
inline Complex operator*(Complex a, const Real &s) { return a *= s; }
inline Complex operator/(Complex a, const Complex &b) { return a /= b; }
inline Complex operator-(const Complex &a) { return Complex(-a.re, -a.im); }

Real abs(const Complex &z);
Complex exp(const Complex &z);
Complex inverse(const Complex &z);
// 2*pi*i raised to the power n.
Complex two_pi_i_pow(int n);

// High-precision real with an absolute error bound.
struct PrecReal {
    Real value{0};
    double bound = 0.0;
};

PrecReal operator+(const PrecReal &a, const PrecReal &b);
PrecReal operator-(const PrecReal &a, const PrecReal &b);
PrecReal operator*(const PrecReal &a, const PrecReal &b);
PrecReal operator*(const PrecReal &a, long s);

struct PrecComplex {
    Complex value;
    double bound = 0.0;
};

PrecComplex operator+(const PrecComplex &a, const PrecComplex &b);
PrecComplex operator-(const PrecComplex &a, const PrecComplex &b);
PrecComplex operator*(const PrecComplex &a, const PrecComplex &b);
PrecComplex scale(const PrecComplex &a, const Rational &q);

} // namespace mzv

#endif
