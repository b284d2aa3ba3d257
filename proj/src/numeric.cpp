#include "mzv/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mzv {

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

unsigned current_digits() { return Real::default_precision(); }

Real pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Real log2() {
    Real r;
    mpfr_const_log2(r.backend().data(), MPFR_RNDN);
    return r;
}

Real to_real(const Rational &q) {
    Real num(boost::multiprecision::numerator(q));
    Real den(boost::multiprecision::denominator(q));
    return num / den;
}

std::string to_fixed(const Real &x, unsigned digits) {
    std::string s = x.str(static_cast<std::streamsize>(digits), std::ios_base::fixed);
    if (s.rfind("-0.", 0) == 0 && s.find_first_not_of("-0.") == std::string::npos)
        s.erase(0, 1);
    return s;
}

std::string to_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

double upper(const Real &x) {
    double d = static_cast<double>(boost::multiprecision::abs(x));
    return d * (1.0 + 1e-15) + 1e-300;
}

double rounding_unit(unsigned digits) { return std::pow(10.0, -static_cast<double>(digits) + 1.0); }

Complex &Complex::operator/=(const Complex &o) { return *this *= inverse(o); }

Real abs(const Complex &z) { return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im); }

Complex inverse(const Complex &z) {
    Real n = z.re * z.re + z.im * z.im;
    return {z.re / n, -z.im / n};
}

Complex exp(const Complex &z) {
    Real m = boost::multiprecision::exp(z.re);
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

Complex two_pi_i_pow(int n) {
    Real mag = boost::multiprecision::pow(2 * pi(), n);
    switch (((n % 4) + 4) % 4) {
    case 0: return {mag, Real(0)};
    case 1: return {Real(0), mag};
    case 2: return {-mag, Real(0)};
    default: return {Real(0), -mag};
    }
}

namespace {

double round_off(const Real &v) { return upper(v) * rounding_unit(current_digits()); }
double round_off(const Complex &v) { return upper(abs(v)) * rounding_unit(current_digits()); }

} // namespace

PrecReal operator+(const PrecReal &a, const PrecReal &b) {
    PrecReal r{a.value + b.value, a.bound + b.bound};
    r.bound += round_off(r.value);
    return r;
}

PrecReal operator-(const PrecReal &a, const PrecReal &b) {
    PrecReal r{a.value - b.value, a.bound + b.bound};
    r.bound += round_off(r.value);
    return r;
}

PrecReal operator*(const PrecReal &a, const PrecReal &b) {
    PrecReal r{a.value * b.value, 0.0};
    r.bound = upper(a.value) * b.bound + upper(b.value) * a.bound + a.bound * b.bound + round_off(r.value);
    return r;
}

PrecReal operator*(const PrecReal &a, long s) {
    PrecReal r{a.value * s, a.bound * std::fabs(static_cast<double>(s))};
    r.bound += round_off(r.value);
    return r;
}

PrecComplex operator+(const PrecComplex &a, const PrecComplex &b) {
    PrecComplex r{a.value + b.value, a.bound + b.bound};
    r.bound += round_off(r.value);
    return r;
}

PrecComplex operator-(const PrecComplex &a, const PrecComplex &b) {
    PrecComplex r{a.value - b.value, a.bound + b.bound};
    r.bound += round_off(r.value);
    return r;
}

PrecComplex operator*(const PrecComplex &a, const PrecComplex &b) {
    PrecComplex r{a.value * b.value, 0.0};
    r.bound = upper(abs(a.value)) * b.bound + upper(abs(b.value)) * a.bound + a.bound * b.bound +
              round_off(r.value);
    return r;
}

PrecComplex scale(const PrecComplex &a, const Rational &q) {
    Real s = to_real(q);
    PrecComplex r{a.value * s, a.bound * upper(s)};
    r.bound += round_off(r.value);
    return r;
}

} // namespace mzv
