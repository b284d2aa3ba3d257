#include "mzv/chen.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

namespace mzv {

namespace {

constexpr double kStepRatio = 0.4; // step length / distance to the nearest puncture
constexpr int kGuardDigits = 12;

struct Leg {
    Complex a;
    Complex b;
};

Complex point_on_circle(const Complex &center, const Complex &from, const Rational &turns) {
    Complex rot = exp(Complex(Real(0), 2 * pi() * to_real(turns)));
    return center + (from - center) * rot;
}

bool is_puncture(const Point &p) { return p.im == 0 && (p.re == 0 || p.re == 1); }

Real distance_to_punctures(const Complex &x) {
    Real a = abs(x), b = abs(x - Complex(1));
    return a < b ? a : b;
}

// Distance from s to the closed segment [a, b].
Real segment_distance(const Complex &a, const Complex &b, const Complex &s) {
    Complex d = b - a;
    Real len2 = d.re * d.re + d.im * d.im;
    if (len2 == 0)
        return abs(s - a);
    Complex rel = s - a;
    Real t = (rel.re * d.re + rel.im * d.im) / len2;
    if (t < 0)
        t = 0;
    if (t > 1)
        t = 1;
    return abs(s - (a + d * t));
}

void check_segment(const Complex &a, const Complex &b, bool allow_start, bool allow_end) {
    const double tiny = 1e-40;
    for (int c = 0; c <= 1; ++c) {
        const Complex s(c);
        const bool at_start = abs(a - s) == 0;
        const bool at_end = abs(b - s) == 0;
        if ((at_start && !allow_start) || (at_end && !allow_end))
            throw std::domain_error("path endpoint lies on the puncture " + std::to_string(c));
        if (at_start || at_end)
            continue;
        if (segment_distance(a, b, s) < tiny)
            throw std::domain_error("path passes through the puncture " + std::to_string(c));
    }
}

// Arcs are replaced by inscribed polygons. Iterated integrals of the
// holomorphic forms only see the homotopy class, so the polygon must not
// sweep past a puncture.
std::vector<Leg> legs_of(const Path &p, bool allow_start, bool allow_end) {
    std::vector<Leg> legs;
    const auto &pieces = p.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Piece &pc = pieces[i];
        const bool first = i == 0, last = i + 1 == pieces.size();
        if (pc.kind == Piece::Kind::Segment) {
            Leg leg{pc.from.to_complex(), pc.to.to_complex()};
            check_segment(leg.a, leg.b, first && allow_start, last && allow_end);
            legs.push_back(std::move(leg));
            continue;
        }
        const Complex c = pc.center.to_complex();
        const Complex from = pc.from.to_complex();
        const Real r = abs(from - c);
        const double turns = std::fabs(pc.sweep.convert_to<double>());
        const int chords = std::max(4, static_cast<int>(std::ceil(turns * 32)));
        const Real inner = r * boost::multiprecision::cos(pi() * turns / chords);
        for (int s = 0; s <= 1; ++s) {
            const Real d = abs(Complex(s) - c);
            if (d >= inner * Real(0.999) && d <= r * Real(1.001))
                throw std::domain_error("arc passes too close to the puncture " + std::to_string(s));
        }
        Complex prev = from;
        for (int k = 1; k <= chords; ++k) {
            Complex next = point_on_circle(c, from, pc.sweep * Rational(k, chords));
            legs.push_back({prev, next});
            prev = next;
        }
    }
    return legs;
}

template <class T>
struct StepScalar;

template <>
struct StepScalar<Real> {
    static Real from(const Complex &z) { return z.re; }
    static Complex to_complex(const Real &x) { return Complex(x); }
    static double mag(const Real &x) { return upper(x); }
};

template <>
struct StepScalar<Complex> {
    static Complex from(const Complex &z) { return z; }
    static Complex to_complex(const Complex &x) { return x; }
    static double mag(const Complex &x) { return upper(abs(x)); }
};

// Transport over one step [a, a + h] with |h| <= kStepRatio * dist(a).
// With s in [0, 1] the forms are ds/(q_c + s), q_c = (a - c)/h, and each
// coefficient is the value at s = 1 of a power series built by integrating
// the parent's series against 1/(q_c + s). Every series coefficient of index
// m is bounded by r^m with r = max 1/|q_c|, so the tail beyond M terms is
// below r^(M+1)/(1 - r).
template <class T>
NCSeries step_series(const Complex &a_c, const Complex &h_c, int cap, unsigned digits) {
    using S = StepScalar<T>;
    const T a = S::from(a_c);
    const T h = S::from(h_c);
    const T inv[2] = {h / a, h / (a - T(1))};
    const double r = std::max(S::mag(inv[0]), S::mag(inv[1]));
    if (!(r < 0.9))
        throw std::logic_error("step_series: step too long for the local expansion");
    const double target = std::pow(10.0, -static_cast<double>(digits));
    int M = static_cast<int>(std::ceil(std::log(target * (1 - r)) / std::log(r)));
    M = std::max(M, 4);

    std::vector<Real> recip(static_cast<std::size_t>(M) + 2);
    for (int m = 1; m <= M + 1; ++m)
        recip[static_cast<std::size_t>(m)] = Real(1) / m;

    NCSeries out(cap);
    std::vector<std::vector<T>> series(out.slots());
    series[0].assign(static_cast<std::size_t>(M) + 1, T(0));
    series[0][0] = T(1);
    out.value(0) = Complex(1);

    const double tail = std::pow(r, M + 1) / (1 - r);
    const double round = rounding_unit(digits) * 16.0 * (M + 1) / (1 - r);
    for (int len = 1; len <= cap; ++len) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (len - 1)); ++bits) {
            const auto &f = series[NCSeries::slot(static_cast<std::size_t>(len - 1), bits)];
            for (int c = 0; c <= 1; ++c) {
                const auto slot = NCSeries::slot(static_cast<std::size_t>(len), (bits << 1) | static_cast<std::uint64_t>(c));
                auto &g = series[slot];
                g.assign(static_cast<std::size_t>(M) + 1, T(0));
                T prev(0);
                T sum(0);
                for (int m = 0; m < M; ++m) {
                    T cur = inv[c] * (f[static_cast<std::size_t>(m)] - prev);
                    g[static_cast<std::size_t>(m) + 1] = cur * recip[static_cast<std::size_t>(m) + 1];
                    sum += g[static_cast<std::size_t>(m) + 1];
                    prev = std::move(cur);
                }
                out.value(slot) = S::to_complex(sum);
                out.bound(slot) = tail + round;
            }
        }
    }
    return out;
}

bool is_real_point(const Complex &z) { return z.im == 0; }

NCSeries transport_legs(const std::vector<Leg> &legs, int cap, unsigned digits) {
    NCSeries total = NCSeries::unit(cap);
    for (const auto &leg : legs) {
        const Complex d = leg.b - leg.a;
        const Real len = abs(d);
        if (len == 0)
            continue;
        const bool real_leg = is_real_point(leg.a) && is_real_point(leg.b);
        Real t = 0;
        Complex x = leg.a;
        while (t < 1) {
            const Real dist = distance_to_punctures(x);
            if (dist == 0)
                throw std::domain_error("transport: step starts on a puncture");
            Real dt = Real(kStepRatio) * dist / len;
            Real t_next = t + dt;
            // land exactly on the leg end; avoid a sliver step
            if (t_next >= Real(0.999))
                t_next = 1;
            Complex x_next = (t_next == 1) ? leg.b : leg.a + d * t_next;
            Complex h = x_next - x;
            if (t_next == 1 && abs(h) > Real(kStepRatio) * dist * Real(1.01)) {
                t_next = t + dt;
                x_next = leg.a + d * t_next;
                h = x_next - x;
            }
            NCSeries step = real_leg ? step_series<Real>(x, h, cap, digits) : step_series<Complex>(x, h, cap, digits);
            total = compose(total, step);
            t = t_next;
            x = x_next;
        }
    }
    return total;
}

unsigned working_digits(int prec, int cap) { return static_cast<unsigned>(std::max(prec, 5) + kGuardDigits + cap); }

// Solves V x = rhs by Gaussian elimination with partial pivoting.
std::vector<Real> solve_dense(std::vector<std::vector<Real>> v, std::vector<Real> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (boost::multiprecision::abs(v[r][col]) > boost::multiprecision::abs(v[piv][col]))
                piv = r;
        if (v[piv][col] == 0)
            throw std::runtime_error("extrapolation system is singular");
        std::swap(v[piv], v[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            Real f = v[r][col] / v[col][col];
            if (f == 0)
                continue;
            for (std::size_t k = col; k < n; ++k)
                v[r][k] -= f * v[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Real> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Real acc = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k)
            acc -= v[i][k] * x[k];
        x[i] = acc / v[i][i];
    }
    return x;
}

// Weights w with sum_i w_i f(delta_i) = extrapolated f(0) for the model
// c + sum_{a=1..A} sum_{j=0..J} c_aj delta^a log^j(1/delta).
std::vector<Real> extrapolation_weights(const std::vector<Real> &deltas, int A, int J) {
    const std::size_t n = deltas.size();
    // Transposed system: V^T w = e_0.
    std::vector<std::vector<Real>> vt(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i) {
        const Real &d = deltas[i];
        const Real l = -boost::multiprecision::log(d);
        std::size_t col = 0;
        vt[col++][i] = 1;
        for (int a = 1; a <= A; ++a) {
            Real base = boost::multiprecision::pow(d, a);
            // columns scaled by their size at the first node for conditioning
            const Real l0 = -boost::multiprecision::log(deltas.front());
            const Real scale = boost::multiprecision::pow(deltas.front(), a);
            for (int j = 0; j <= J; ++j)
                vt[col++][i] = (base / scale) * boost::multiprecision::pow(l / l0, j);
        }
    }
    std::vector<Real> e(n, Real(0));
    e[0] = 1;
    return solve_dense(std::move(vt), std::move(e));
}

} // namespace

Complex Piece::start_point() const { return from.to_complex(); }

Complex Piece::end_point() const {
    if (kind == Kind::Segment)
        return to.to_complex();
    return point_on_circle(center.to_complex(), from.to_complex(), sweep);
}

Path Path::segment(const Point &a, const Point &b) {
    Path p;
    Piece pc;
    pc.kind = Piece::Kind::Segment;
    pc.from = a;
    pc.to = b;
    p.pieces_.push_back(std::move(pc));
    return p;
}

Path Path::arc(const Point &center, const Point &from, const Rational &sweep) {
    if (center == from)
        throw std::invalid_argument("Path::arc: zero radius");
    Path p;
    Piece pc;
    pc.kind = Piece::Kind::Arc;
    pc.from = from;
    pc.center = center;
    pc.sweep = sweep;
    p.pieces_.push_back(std::move(pc));
    return p;
}

Path Path::then(const Path &next) const {
    PrecisionScope scope(40);
    if (abs(end() - next.start()) > Real(1e-30))
        throw std::invalid_argument("Path::then: endpoints do not match");
    Path out = *this;
    out.pieces_.insert(out.pieces_.end(), next.pieces_.begin(), next.pieces_.end());
    return out;
}

Path Path::reversed() const {
    Path out;
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
        Piece pc = *it;
        if (pc.kind == Piece::Kind::Segment) {
            std::swap(pc.from, pc.to);
        } else {
            // Reversed arcs need a rational start point; quarter turns keep it.
            Rational q = pc.sweep * 4;
            if (boost::multiprecision::denominator(q) != 1)
                throw std::invalid_argument("Path::reversed: arc sweep must be a multiple of 1/4 turn");
            const long quarter = numerator(q).convert_to<long>();
            Point rel{pc.from.re - pc.center.re, pc.from.im - pc.center.im};
            for (long k = 0; k < ((quarter % 4) + 4) % 4; ++k)
                rel = Point{-rel.im, rel.re};
            pc.from = Point{pc.center.re + rel.re, pc.center.im + rel.im};
            pc.sweep = -pc.sweep;
        }
        out.pieces_.push_back(std::move(pc));
    }
    return out;
}

bool Path::starts_at_singularity() const {
    return pieces_.front().kind == Piece::Kind::Segment && is_puncture(pieces_.front().from);
}

bool Path::ends_at_singularity() const {
    return pieces_.back().kind == Piece::Kind::Segment && is_puncture(pieces_.back().to);
}

NCSeries transport(const Path &p, int cap, int prec) {
    const unsigned digits = working_digits(prec, cap);
    PrecisionScope scope(digits);
    auto legs = legs_of(p, false, false);
    NCSeries out = transport_legs(legs, cap, digits);
    const double target = std::pow(10.0, -prec);
    if (out.max_bound() > target)
        throw PrecisionError("transport: requested 1e-" + std::to_string(prec) + ", achieved " +
                                 to_sci(out.max_bound()),
                             out.max_bound());
    return out;
}

bool regularized_word_ok(const Word &w, const Complex &start, const Complex &end) {
    if (w.empty())
        return true;
    auto is = [](const Complex &z, int c) { return z.im == 0 && z.re == c; };
    if (is(start, 0) && w[0] != 1)
        return false;
    if (is(start, 1) && w[0] != 0)
        return false;
    if (is(end, 1) && w.letters.back() != 0)
        return false;
    if (is(end, 0) && w.letters.back() != 1)
        return false;
    return true;
}

RegularizedTransport transport_regularized_full(const Path &p, int cap, int prec) {
    const bool reg_start = p.starts_at_singularity();
    const bool reg_end = p.ends_at_singularity();
    if (!reg_start && !reg_end)
        throw std::invalid_argument("transport_regularized: no endpoint lies in {0, 1}");

    constexpr int A = 2; // powers of delta in the model
    const int max_log = std::max(cap - 1, 0);
    const int nodes_needed = 1 + A * (max_log + 1) + 2;

    // Largest delta = 2^-m0 with delta^(A+1) log^J(1/delta) well below the target.
    int m0 = 8;
    while (std::pow(2.0, -(A + 1) * m0) * std::pow(m0 * std::log(2.0), max_log) > std::pow(10.0, -(prec + 4)))
        ++m0;

    const unsigned digits = static_cast<unsigned>(prec + 30 + 2 * cap);
    PrecisionScope scope(digits);

    auto legs = legs_of(p, reg_start, reg_end);
    const Complex start = legs.front().a;
    const Complex end = legs.back().b;
    auto unit_dir = [](const Complex &from, const Complex &to) {
        Complex d = to - from;
        return d * (Real(1) / abs(d));
    };
    const Complex u_start = unit_dir(legs.front().a, legs.front().b);
    const Complex u_end = unit_dir(legs.back().b, legs.back().a);

    std::vector<Real> deltas;
    std::vector<NCSeries> values;
    Real delta = boost::multiprecision::pow(Real(2), -m0);
    {
        auto inner = legs;
        if (reg_start)
            inner.front().a = start + u_start * delta;
        if (reg_end)
            inner.back().b = end + u_end * delta;
        values.push_back(transport_legs(inner, cap, digits));
        deltas.push_back(delta);
    }
    for (int i = 1; i < nodes_needed; ++i) {
        const Real next = delta / 2;
        NCSeries s = values.back();
        if (reg_start)
            s = compose(transport_legs({{start + u_start * next, start + u_start * delta}}, cap, digits), s);
        if (reg_end)
            s = compose(s, transport_legs({{end + u_end * delta, end + u_end * next}}, cap, digits));
        values.push_back(std::move(s));
        deltas.push_back(next);
        delta = next;
    }

    RegularizedTransport out;
    out.series = NCSeries(cap);
    out.extrapolants.resize(out.series.slots());
    out.series.value(0) = Complex(1);

    for (int len = 1; len <= cap; ++len) {
        const int J = len - 1;
        const std::size_t K = static_cast<std::size_t>(1 + A * (J + 1));
        // three windows ending at the smallest delta
        std::vector<std::vector<Real>> weights;
        std::vector<std::size_t> offsets;
        for (std::size_t wdx = 0; wdx < 3; ++wdx) {
            const std::size_t off = deltas.size() - K - (2 - wdx);
            std::vector<Real> ds(deltas.begin() + static_cast<std::ptrdiff_t>(off),
                                 deltas.begin() + static_cast<std::ptrdiff_t>(off + K));
            weights.push_back(extrapolation_weights(ds, A, J));
            offsets.push_back(off);
        }
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
            const auto s = NCSeries::slot(static_cast<std::size_t>(len), bits);
            const Word w = NCSeries::word_at(s);
            if (!regularized_word_ok(w, start, end)) {
                out.series.set_valid(s, false);
                continue;
            }
            std::vector<Complex> ex;
            double amplified = 0.0;
            for (std::size_t wdx = 0; wdx < 3; ++wdx) {
                Complex acc;
                double amp = 0.0;
                for (std::size_t i = 0; i < K; ++i) {
                    const auto &src = values[offsets[wdx] + i];
                    acc += src.value(s) * weights[wdx][i];
                    amp += upper(weights[wdx][i]) * src.bound(s);
                }
                ex.push_back(std::move(acc));
                amplified = std::max(amplified, amp);
            }
            const double spread = std::max(upper(abs(ex[2] - ex[1])), upper(abs(ex[1] - ex[0])));
            out.series.value(s) = ex[2];
            out.series.bound(s) = spread + amplified;
            out.extrapolants[s] = std::move(ex);
        }
    }

    const double target = std::pow(10.0, -prec);
    if (out.series.max_bound() > target)
        throw PrecisionError("transport_regularized: requested 1e-" + std::to_string(prec) + ", achieved " +
                                 to_sci(out.series.max_bound()),
                             out.series.max_bound());
    return out;
}

NCSeries transport_regularized(const Path &p, int cap, int prec) {
    return transport_regularized_full(p, cap, prec).series;
}

// ---- group ring ----

namespace {

void push_reduced(GroupWord &w, int letter) {
    if (!w.empty() && w.back() == -letter)
        w.pop_back();
    else
        w.push_back(letter);
}

} // namespace

GroupRingElement GroupRingElement::identity() {
    GroupRingElement e;
    e.terms_[GroupWord{}] = 1;
    return e;
}

GroupRingElement GroupRingElement::loop(int letter) {
    if (letter != 1 && letter != -1 && letter != 2 && letter != -2)
        throw std::invalid_argument("GroupRingElement::loop: letter must be +-1 or +-2");
    GroupRingElement e;
    e.terms_[GroupWord{letter}] = 1;
    return e;
}

GroupRingElement GroupRingElement::h(int i) {
    if (i != 0 && i != 1)
        throw std::invalid_argument("GroupRingElement::h: i must be 0 or 1");
    return loop(i + 1) - identity();
}

Rational GroupRingElement::augmentation() const {
    Rational s = 0;
    for (const auto &kv : terms_)
        s += kv.second;
    return s;
}

GroupRingElement &GroupRingElement::operator+=(const GroupRingElement &o) {
    for (const auto &[w, c] : o.terms_)
        terms_[w] += c;
    std::erase_if(terms_, [](const auto &kv) { return kv.second == 0; });
    return *this;
}

GroupRingElement &GroupRingElement::operator-=(const GroupRingElement &o) {
    for (const auto &[w, c] : o.terms_)
        terms_[w] -= c;
    std::erase_if(terms_, [](const auto &kv) { return kv.second == 0; });
    return *this;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement &o) const {
    GroupRingElement out;
    for (const auto &[a, ca] : terms_)
        for (const auto &[b, cb] : o.terms_) {
            GroupWord w = a;
            for (int l : b)
                push_reduced(w, l);
            out.terms_[w] += ca * cb;
        }
    std::erase_if(out.terms_, [](const auto &kv) { return kv.second == 0; });
    return out;
}

GroupRingElement GroupRingElement::scaled(const Rational &q) const {
    GroupRingElement out;
    if (q == 0)
        return out;
    for (const auto &[w, c] : terms_)
        out.terms_[w] = c * q;
    return out;
}

std::string GroupRingElement::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[w, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << c << "*";
        if (w.empty())
            os << "1";
        for (int l : w)
            os << "r" << (std::abs(l) - 1) << (l < 0 ? "^-1" : "");
    }
    return os.str();
}

Path loop_path(int which) {
    if (which != 0 && which != 1)
        throw std::invalid_argument("loop_path: which must be 0 or 1");
    const Point base{Rational(1, 2)};
    const Point near = which == 0 ? Point{Rational(1, 4)} : Point{Rational(3, 4)};
    const Point center{Rational(which)};
    return Path::segment(base, near).then(Path::arc(center, near, Rational(1))).then(Path::segment(near, base));
}

Path beta_path() { return Path::segment(Point{Rational(0)}, Point{Rational(1, 2)}); }
Path alpha_path() { return Path::segment(Point{Rational(1, 2)}, Point{Rational(1)}); }

LoopTransports::LoopTransports(int cap, int prec) : cap_(cap), prec_(prec) {
    for (int which = 0; which <= 1; ++which) {
        NCSeries t = transport(loop_path(which), cap, prec);
        letters_.emplace(-(which + 1), t.antipode());
        letters_.emplace(which + 1, std::move(t));
    }
}

const NCSeries &LoopTransports::letter(int l) const { return letters_.at(l); }

NCSeries LoopTransports::word(const GroupWord &g) const {
    NCSeries out = NCSeries::unit(cap_);
    for (int l : g)
        out = compose(out, letter(l));
    return out;
}

NCSeries LoopTransports::element(const GroupRingElement &x) const {
    NCSeries out = NCSeries::zero(cap_);
    for (const auto &[g, c] : x.terms())
        out += word(g).scaled(c);
    return out;
}

PrecComplex pair(const GroupRingElement &g, const Word &w, int prec) {
    const int cap = static_cast<int>(w.size());
    LoopTransports loops(cap, prec);
    PrecisionScope scope(working_digits(prec, cap));
    return loops.element(g).coefficient(w);
}

namespace {

struct PairingContext {
    LoopTransports loops;
    NCSeries beta;
    NCSeries alpha;
};

// Loop and endpoint transports depend only on (cap, prec); verification
// sweeps reuse them across many group-ring elements.
std::shared_ptr<const PairingContext> pairing_context(int cap, int prec) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const PairingContext>> memo;
    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = memo[{cap, prec}];
    if (!slot)
        slot = std::make_shared<const PairingContext>(PairingContext{LoopTransports(cap, prec),
                                                                     transport_regularized(beta_path(), cap, prec),
                                                                     transport_regularized(alpha_path(), cap, prec)});
    return slot;
}

} // namespace

PrecComplex pair_through(const GroupRingElement &x, const Word &w, int prec, int ideal_power) {
    const int cap = static_cast<int>(w.size());
    const auto ctx = pairing_context(cap, prec + 2);
    const NCSeries &b = ctx->beta;
    const NCSeries &a = ctx->alpha;
    PrecisionScope scope(working_digits(prec, cap));
    NCSeries mid = ctx->loops.element(x);
    PrecComplex total;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = i; j <= n; ++j) {
            const Word u = w.slice(0, i), v = w.slice(i, j), t = w.slice(j, n);
            if (!b.has(u) || !a.has(t)) {
                if (static_cast<int>(v.size()) < ideal_power)
                    continue;
                throw std::domain_error("pair_through: word " + format_word(w) +
                                        " meets a divergent endpoint coefficient");
            }
            total = total + b.coefficient(u) * mid.coefficient(v) * a.coefficient(t);
        }
    return total;
}

PrecComplex verify_vanishing_on_I(int n, const std::vector<GroupRingElement> &factors, const Word &w, int prec) {
    if (static_cast<int>(factors.size()) != n + 1)
        throw std::invalid_argument("verify_vanishing_on_I: need n + 1 factors");
    if (static_cast<int>(w.size()) != n || !w.admissible())
        throw std::invalid_argument("verify_vanishing_on_I: word must be admissible of length n");
    GroupRingElement prod = GroupRingElement::identity();
    for (const auto &f : factors) {
        if (f.augmentation() != 0)
            throw std::invalid_argument("verify_vanishing_on_I: factor " + f.to_string() + " is not in I");
        prod = prod * f;
    }
    return pair_through(prod, w, prec, n + 1);
}

namespace {

GroupRingElement loop_product(const std::vector<int> &loops) {
    GroupRingElement prod = GroupRingElement::identity();
    for (int g : loops)
        prod = prod * GroupRingElement::h(g);
    return prod;
}

} // namespace

ProductFormulaResult verify_product_formula(const std::vector<int> &loops, const Word &eps, int prec) {
    if (loops.size() != eps.size() || loops.empty())
        throw std::invalid_argument("verify_product_formula: need |loops| == |eps| >= 1");
    ProductFormulaResult r;
    r.value = pair_through(loop_product(loops), eps, prec, static_cast<int>(loops.size()));
    PrecisionScope scope(working_digits(prec, static_cast<int>(eps.size())));
    bool match = true;
    for (std::size_t i = 0; i < loops.size(); ++i)
        match = match && loops[i] == eps[i];
    r.expected = match ? two_pi_i_pow(static_cast<int>(eps.size())) : Complex(0);
    r.residual = upper(abs(r.value.value - r.expected));
    return r;
}

HalfIntegralityResult verify_half_integrality(const std::vector<int> &loops, const Word &eps, int prec,
                                              double tolerance) {
    if (!eps.admissible())
        throw std::invalid_argument("verify_half_integrality: eps must be admissible");
    if (loops.size() + 1 != eps.size())
        throw std::invalid_argument("verify_half_integrality: need n - 1 loops for a word of length n");
    HalfIntegralityResult r;
    r.value = pair_through(loop_product(loops), eps, prec);
    PrecisionScope scope(working_digits(prec, static_cast<int>(eps.size())));
    Complex unit = two_pi_i_pow(static_cast<int>(eps.size())) * Real(0.5);
    Complex ratio = r.value.value / unit;
    Real nearest = boost::multiprecision::round(ratio.re);
    r.multiple = BigInt(nearest.convert_to<long long>());
    r.residual = upper(abs(r.value.value - unit * nearest));
    r.pass = r.residual < tolerance;
    return r;
}

ExtensionClassResult extension_class_check(const Rational &z, int prec) {
    if (z == 0 || z == 1)
        throw std::invalid_argument("extension_class_check: z must not be 0 or 1");
    // y = (x - z)/L keeps the image of [0, 1] inside |y| <= 1/2; dy/y = dx/(x - z).
    const Rational az = boost::multiprecision::abs(z);
    const Rational a1z = boost::multiprecision::abs(Rational(1 - z));
    const Rational L = 2 * (az > a1z ? az : a1z);
    const Point from{-z / L}, to{(1 - z) / L};
    ExtensionClassResult res;
    res.rhs = (z - 1) / z;
    Path path;
    if (z > 0 && z < 1) {
        const Rational r = Rational(z < 1 - z ? z : Rational(1 - z)) / (2 * L);
        path = Path::segment(from, Point{-r}).then(Path::arc(Point{0}, Point{-r}, Rational(1, 2))).then(
            Path::segment(Point{r}, to));
        res.branch = "below";
    } else {
        path = Path::segment(from, to);
        res.branch = "direct";
    }
    NCSeries t = transport(path, 1, prec + 2);
    PrecisionScope scope(working_digits(prec, 1));
    PrecComplex integral = t.coefficient(Word{0});
    res.lhs.value = exp(integral.value);
    const double m = upper(abs(res.lhs.value));
    res.lhs.bound = m * std::expm1(integral.bound) * 1.0001 + m * rounding_unit(current_digits());
    res.difference = upper(abs(res.lhs.value - Complex(to_real(res.rhs))));
    return res;
}

} // namespace mzv
