#ifndef MARCLAB_NUMERICS_HPP
#define MARCLAB_NUMERICS_HPP

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace marclab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tunables for every grid-plus-refinement supremum in the library.
struct NumericPolicy {
    int grid_points_per_piece = 64;  // G
    double tol_rel = 1e-9;
    int oracle_grid = 100000;
    double horizon = 1e6;  // truncation point for sweeps on an infinite domain

    void validate() const;
};

namespace num {

struct SupResult {
    double value = -kInf;
    double arg = 0.0;
};

// Supremum of h over the open interval (a, b). Candidate points are the
// supplied knots, geometric tails toward both endpoints (standing in for
// one-sided limits), and a uniform grid; golden-section refinement is run
// around the best three samples until the bracket is below tol_rel.
SupResult sup_refined(const std::function<double(double)>& h, double a, double b,
                      std::span<const double> knots, const NumericPolicy& pol);

// Same contract with the sign flipped.
SupResult inf_refined(const std::function<double(double)>& h, double a, double b,
                      std::span<const double> knots, const NumericPolicy& pol);

// Sampling grid on (0, L) with geometric tails at both ends; L may be +inf,
// in which case the grid is geometric out to pol.horizon.
std::vector<double> domain_grid(double L, const NumericPolicy& pol);

}  // namespace num
}  // namespace marclab

#endif
