#ifndef MARCLAB_PHI_HPP
#define MARCLAB_PHI_HPP

#include "marclab/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace marclab::phi {

enum class Family { power_log, tabulated };

// A fundamental function on (0, L).
//
// power_log:  phi(t) = t^alpha * (log(2L/t))^beta; L must be finite when
//             beta != 0.
// tabulated:  piecewise-linear through the grid points, extended linearly
//             through the origin below the first knot and by a constant
//             above the last one.
struct PhiSpec {
    Family family = Family::power_log;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> grid;
    std::vector<double> values;
    double L = 1.0;  // domain length, may be +inf

    static PhiSpec power_log(double alpha, double beta, double L);
    static PhiSpec tabulated(std::vector<double> grid, std::vector<double> values, double L);

    void validate() const;
};

// Pointwise evaluation; throws std::domain_error outside (0, L).
double eval(const PhiSpec& f, double t);

double limit_at_zero(const PhiSpec& f);  // may be +inf
double limit_at_L(const PhiSpec& f);     // may be +inf when L = +inf

// Interior points where phi (resp. phi(t)/t) can change monotonicity.
// Between consecutive knots both functions are monotone, so suprema over
// subintervals reduce to endpoint and knot evaluations.
std::vector<double> monotone_knots(const PhiSpec& f);
std::vector<double> ratio_monotone_knots(const PhiSpec& f);

// Least quasiconcave majorant evaluated at t, computed from
//   majorant(t) = t * sup_{s in [t, L)} (sup_{tau in (0, s]} phi(tau)) / s
// by exact monotone-piece decomposition. Returns +inf when phi is not
// admissible (the nested supremum diverges).
double majorant(const PhiSpec& f, double t, const NumericPolicy& pol = {});

bool is_admissible(const PhiSpec& f, const NumericPolicy& pol = {});

enum class LimitClass { zero, positive_finite, infinite };

struct PhiClassification {
    bool is_nondecreasing = false;
    bool is_quasiconcave = false;
    bool is_admissible = false;
    bool inconclusive = false;  // grid checks disagreed under refinement
    double delta2_constant = kInf;
    double delta2_near_zero_constant = kInf;
    std::optional<double> almost_quasiconcave_constant;  // C_phi in (0, 1]
    LimitClass limit_t_over_phi = LimitClass::zero;
};

PhiClassification classify(const PhiSpec& f, const NumericPolicy& pol = {});

// inf over t in (0, L/a) of phi(a t)/phi(t); a > 1.
double not_too_constant_margin(const PhiSpec& f, double a, const NumericPolicy& pol = {});

// inf over theta in (0,1) of sup_t phi(t)/phi(theta t), the theta-grid
// approaching 1; a value <= 1 + tol signals the dilation hypothesis.
double dilation_condition_value(const PhiSpec& f, const NumericPolicy& pol = {});

enum class NormCase { m_phi, M_phi };

// Least sigma (plus one tol_rel margin) with
//   m case:  eps * sigma * majorant(eps * tau * muS / k) >  2/C_phi^2 * (normT + r)
//   M case:  eps * sigma * majorant(tau * muS / k)       >  normT + r
double sigma_threshold(const PhiSpec& f, NormCase which, double eps, double tau, double muS,
                       int k, double normT, double r, double C_phi,
                       const NumericPolicy& pol = {});

// Largest t in (0, hi) with phi(t) <= y, for nondecreasing phi (bisection).
double inverse_below(const PhiSpec& f, double y, double hi, const NumericPolicy& pol = {});

std::string to_string(NormCase c);

}  // namespace marclab::phi

#endif
