#ifndef MZV_SWEEP_HPP
#define MZV_SWEEP_HPP

#include <string>
#include <vector>

#include "mzv/chen.hpp"

namespace mzv {

// Deterministic elements of I^power, each a product of `power` factors of
// augmentation zero drawn from a fixed pool.
struct IdealSample {
    std::vector<GroupRingElement> factors;
    std::string label;
};
std::vector<IdealSample> ideal_samples(int power, int count);

struct PathVerdict {
    int prop = 0;
    int n = 0;
    std::string label; // sample, loops or z
    Word word;
    PrecComplex value;
    std::string expected; // "0", "(2 pi i)^n", "k (2 pi i)^n / 2"
    double residual = 0;
    bool pass = false;
};

// prop 1: vanishing of admissible words of length n on samples of I^(n+1).
// prop 2: product formula for every loop choice and every word in {0,1}^n.
// prop 3: half-integrality for admissible words and every loop choice.
// The tolerance applies to the residual (|value| for prop 1).
std::vector<PathVerdict> verify_paths(int prop, int n, int prec, double tolerance, int samples = 5);

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct SweepProfile {
    std::string name;
    int dims_max = 30;
    int lemma_max = 30;
    int gapset_max = 14;
    int purity_max = 7;
    int eval_prec = 50;
    int agreement_weight = 5;
    int relations_max = 7;
    std::vector<int> path_ns{2, 3};
};

SweepProfile quick_profile();
SweepProfile full_profile();

// Runs criterion id (1..8) under the profile.
CriterionResult run_criterion(int id, const SweepProfile &p);
std::vector<CriterionResult> run_sweep(const SweepProfile &p);

} // namespace mzv

#endif
