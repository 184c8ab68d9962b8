#ifndef MARCLAB_SUPERADD_HPP
#define MARCLAB_SUPERADD_HPP

#include "marclab/norms.hpp"

namespace marclab::superadd {

using norms::NormCase;
using norms::PhiSpec;
using norms::StepFunction;

// Disjointly supported indicator family chi_{E_k} / phi(r_k) with geometric
// radii; the m case takes r_{k+1} = r_k / 2, the M case keeps halving until
// r_{k+1}/phi(r_{k+1}) <= r_k / (2 phi(r_k)) as well.
struct CounterexampleFamily {
    NormCase which = NormCase::m_phi;
    int m = 0;
    std::vector<Rat> radii;  // r_1 > ... > r_m
    std::vector<Rat> tails;  // a_0, ..., a_m with a_k = r_{k+1} + ... + r_m
    std::vector<StepFunction> members;
    StepFunction sum;
};

// Requires phi nondecreasing and Delta_2 near zero with threshold t0; the
// first radius is min(t0, L)/2.
CounterexampleFamily gen_counterexample_m(const PhiSpec& p, int m, double t0,
                                          const NumericPolicy& pol = {});

// Requires phi quasiconcave with t/phi(t) -> 0 at zero; refuses a phi whose
// limit is positive and finite (that regime is equivalent to the integral
// norm and genuinely superadditive).
CounterexampleFamily gen_counterexample_M(const PhiSpec& p, int m, const NumericPolicy& pol = {});

struct DefectReport {
    double gamma = 1.0;
    std::vector<double> member_norms;
    double sum_norm = 0.0;
    double defect = 0.0;  // sum of member norms^gamma over the sum's norm^gamma
};

DefectReport superadditivity_defect(const CounterexampleFamily& fam, const PhiSpec& p,
                                    double gamma, const NumericPolicy& pol = {});

struct L1EquivalenceReport {
    double kappa1 = 0.0;  // smallest observed ratio of the M norm to the L1 norm
    double kappa2 = 0.0;  // largest observed ratio
    int samples = 0;
};

// Valid only when t/phi(t) has a positive finite limit at zero.
L1EquivalenceReport l1_equivalence_check(const PhiSpec& p, const std::vector<StepFunction>& fs,
                                         const NumericPolicy& pol = {});

}  // namespace marclab::superadd

#endif
