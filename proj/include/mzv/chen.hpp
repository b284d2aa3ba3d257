#ifndef MZV_CHEN_HPP
#define MZV_CHEN_HPP

#include <map>
#include <string>
#include <vector>

#include "mzv/ncseries.hpp"
#include "mzv/numeric.hpp"
#include "mzv/words.hpp"

namespace mzv {

struct Point {
    Rational re{0};
    Rational im{0};

    Point() = default;
    Point(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
    Complex to_complex() const { return {to_real(re), to_real(im)}; }
    bool operator==(const Point &) const = default;
};

// A straight segment, or a circular arc given by its center, starting point
// and signed sweep in full turns (+1 is one counterclockwise revolution).
struct Piece {
    enum class Kind { Segment, Arc };
    Kind kind = Kind::Segment;
    Point from;
    Point to;       // segment end
    Point center;   // arc only
    Rational sweep; // arc only

    Complex start_point() const;
    Complex end_point() const;
};

class Path {
public:
    static Path segment(const Point &a, const Point &b);
    static Path arc(const Point &center, const Point &from, const Rational &sweep);

    // Concatenation in traversal order; endpoints must match.
    Path then(const Path &next) const;
    Path reversed() const;

    const std::vector<Piece> &pieces() const { return pieces_; }
    Complex start() const { return pieces_.front().start_point(); }
    Complex end() const { return pieces_.back().end_point(); }
    bool starts_at_singularity() const;
    bool ends_at_singularity() const;

private:
    std::vector<Piece> pieces_;
};

// Series of iterated integrals of e0 -> dx/x, e1 -> dx/(x-1) along p, every
// coefficient within 10^-prec. Throws std::domain_error when p touches 0 or 1
// and PrecisionError when the bound is not met.
NCSeries transport(const Path &p, int cap, int prec);

struct RegularizedTransport {
    NCSeries series;
    // Per slot: extrapolated values from successive windows of the
    // shrink-parameter sequence, the last entry being the reported value.
    std::vector<std::vector<Complex>> extrapolants;
};

// Regularized series for a path whose start and/or end lies in {0, 1}: the
// endpoints are pulled in by delta along the end segments, delta is halved
// repeatedly, and each coefficient is extrapolated to delta = 0 in the basis
// delta^a log^j(1/delta). Only words whose limit exists are marked valid
// (first letter 1 at a start in {0}, last letter 0 at an end in {1}, and the
// mirrored conditions).
RegularizedTransport transport_regularized_full(const Path &p, int cap, int prec);
NCSeries transport_regularized(const Path &p, int cap, int prec);

// Whether the regularized coefficient of w exists for the given endpoints.
bool regularized_word_ok(const Word &w, const Complex &start, const Complex &end);

// Group ring of pi_1(C - {0,1}, 1/2). Letters +1/-1 are rho_0^{+-1} and
// +2/-2 are rho_1^{+-1}. Products read in traversal order: in g*h the loop g
// is run first.
using GroupWord = std::vector<int>;

class GroupRingElement {
public:
    GroupRingElement() = default;
    static GroupRingElement identity();
    static GroupRingElement loop(int letter);
    static GroupRingElement rho0() { return loop(1); }
    static GroupRingElement rho1() { return loop(2); }
    // rho_i - 1
    static GroupRingElement h(int i);

    const std::map<GroupWord, Rational> &terms() const { return terms_; }
    Rational augmentation() const;

    GroupRingElement &operator+=(const GroupRingElement &o);
    GroupRingElement &operator-=(const GroupRingElement &o);
    GroupRingElement operator*(const GroupRingElement &o) const;
    GroupRingElement scaled(const Rational &q) const;

    std::string to_string() const;

private:
    std::map<GroupWord, Rational> terms_;
};

inline GroupRingElement operator+(GroupRingElement a, const GroupRingElement &b) { return a += b; }
inline GroupRingElement operator-(GroupRingElement a, const GroupRingElement &b) { return a -= b; }

// Loops based at 1/2: out along the real axis to distance 1/4 from the
// puncture, once counterclockwise around it, and back.
Path loop_path(int which);
// [0, 1/2] and [1/2, 1]
Path beta_path();
Path alpha_path();

// Transports of loops, their inverses and group ring elements at one cap
// and precision; loop series are computed once and reused.
class LoopTransports {
public:
    LoopTransports(int cap, int prec);
    const NCSeries &letter(int l) const;
    NCSeries word(const GroupWord &g) const;
    NCSeries element(const GroupRingElement &x) const;
    int cap() const { return cap_; }
    int prec() const { return prec_; }

private:
    int cap_;
    int prec_;
    std::map<int, NCSeries> letters_;
};

// sum over group words of coefficient * (iterated integral of w along the loop)
PrecComplex pair(const GroupRingElement &g, const Word &w, int prec);

// Iterated integral of w along beta, then x, then alpha. The caller may
// declare x in I^ideal_power: every coefficient of x of length below that
// power is then zero, and terms pairing it with a divergent endpoint
// coefficient (w not admissible) are dropped. Any other divergent term throws
// std::domain_error.
PrecComplex pair_through(const GroupRingElement &x, const Word &w, int prec, int ideal_power = 0);

// Product of factors, each required to have augmentation zero.
PrecComplex verify_vanishing_on_I(int n, const std::vector<GroupRingElement> &factors, const Word &w, int prec);

struct ProductFormulaResult {
    PrecComplex value;
    Complex expected; // (2 pi i)^n or 0
    double residual = 0;
};

// loops[i] in {0, 1} (rho_0 or rho_1); |loops| == |eps|.
ProductFormulaResult verify_product_formula(const std::vector<int> &loops, const Word &eps, int prec);

struct HalfIntegralityResult {
    PrecComplex value;
    BigInt multiple;   // nearest integer to value / ((2 pi i)^n / 2)
    double residual = 0;
    bool pass = false; // residual below the tolerance
};

// loops has n - 1 entries in {0, 1}; eps is admissible of length n.
HalfIntegralityResult verify_half_integrality(const std::vector<int> &loops, const Word &eps, int prec,
                                              double tolerance);

struct ExtensionClassResult {
    PrecComplex lhs;       // exp of the integral of dx/(x - z) over [0, 1]
    Rational rhs;          // (z - 1)/z
    double difference = 0; // |lhs - rhs|
    std::string branch;    // "direct", or "below" when the path passes under z
};

// Throws std::invalid_argument for z in {0, 1}.
ExtensionClassResult extension_class_check(const Rational &z, int prec);

} // namespace mzv

#endif
