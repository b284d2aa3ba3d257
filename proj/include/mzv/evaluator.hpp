#ifndef MZV_EVALUATOR_HPP
#define MZV_EVALUATOR_HPP

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "mzv/numeric.hpp"
#include "mzv/words.hpp"

namespace mzv {

enum class Backend { Holder, Chen, Series };

std::string backend_name(Backend b);
// Throws std::invalid_argument on an unknown name.
Backend parse_backend(const std::string &name);

struct MzvValue {
    Index index;
    PrecReal value;       // value.bound mirrors error_bound
    PrecReal error_bound; // error_bound.value is the bound as a Real
    Backend backend = Backend::Holder;
};

// Truncated nested sum over m_l <= terms, in long double. Oracle duty only:
// at most about 17 correct digits. The bound covers the tail rigorously for
// terms >= 16.
MzvValue eval_series(const Index &idx, long terms);

// sum over m_1 < ... < m_l of 2^-m_l / (m_1^k_1 ... m_l^k_l); any index with
// parts >= 1.
PrecReal li_half(const Index &idx, int prec);

// One term of the split of [0,1] at 1/2:
// zeta(idx) = sum sign * li_half(left) * li_half(right).
struct HolderTerm {
    Index left;
    Index right;
    int sign = 1;
};

// Integral of w over [0, 1/2] as sign * li_half(index); w empty or starting
// with 1.
std::pair<Index, int> lower_half_integral(const Word &w);
// Integral of w over [1/2, 1] as sign * li_half(index); w empty or ending
// with 0. Uses x -> 1 - x, which swaps the letters and reverses the path.
std::pair<Index, int> upper_half_integral(const Word &w);

std::vector<HolderTerm> holder_terms(const Index &idx);

MzvValue eval_holder(const Index &idx, int prec);
MzvValue eval_chen(const Index &idx, int prec);

// Thread-safe memo of evaluations keyed by (index, backend, precision).
class Evaluator {
public:
    MzvValue evaluate(const Index &idx, Backend backend, int prec);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::tuple<Index, Backend, int>, MzvValue> memo_;
};

} // namespace mzv

#endif
