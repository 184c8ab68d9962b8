#ifndef MARCLAB_STEPFN_HPP
#define MARCLAB_STEPFN_HPP

#include "marclab/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace marclab::stepfn {

struct Interval {
    Rat lo, hi;
    Rat length() const { return hi - lo; }
    bool overlaps(const Interval& o) const { return lo < o.hi && o.lo < hi; }
};

struct Piece {
    Rat value;
    Rat measure;
    std::optional<Interval> at;  // position on the line, when tracked
};

// A function taking finitely many values on an interval (0, L); measures and
// values are exact rationals. Positions are optional and only required by
// operations that combine functions pointwise.
class StepFunction {
public:
    StepFunction() = default;
    StepFunction(std::vector<Piece> pieces, double ambient_length);

    static StepFunction indicator(const Interval& where, const Rat& height, double L);

    const std::vector<Piece>& pieces() const { return pieces_; }
    double ambient_length() const { return L_; }
    bool positioned() const;
    bool empty() const { return pieces_.empty(); }

    Rat total_measure() const;
    Rat support_measure() const;  // measure where the value is nonzero
    Rat l1_norm() const;
    Rat sup_norm() const;
    StepFunction scaled(const Rat& c) const;

    void validate() const;

private:
    std::vector<Piece> pieces_;
    double L_ = 1.0;
};

// Pointwise combination on the common refinement; both inputs must be
// positioned and live on the same ambient interval.
StepFunction add(const StepFunction& f, const StepFunction& g);
StepFunction subtract(const StepFunction& f, const StepFunction& g);

// Concatenation of disjointly supported functions; throws with the offending
// input pair when supports overlap.
StepFunction disjoint_sum(const std::vector<StepFunction>& fs);

Rat essinf_abs_on(const StepFunction& f, const Interval& E);
Rat average_abs_on(const StepFunction& f, const Interval& E);

// Nonincreasing rearrangement in canonical form: strictly decreasing values,
// ties merged, zeros dropped. value(k) holds on [breaks[k-1], breaks[k]) with
// breaks[-1] = 0 (right-continuous convention; the left limit is exposed
// separately).
struct DecreasingProfile {
    std::vector<Rat> breaks;
    std::vector<Rat> values;

    bool operator==(const DecreasingProfile&) const = default;

    double eval(double t) const;
    double left_limit(double t) const;
    Rat eval_rat(const Rat& t) const;
    Rat left_limit_rat(const Rat& t) const;
    Rat integral_to(const Rat& t) const;  // integral of the profile over (0, t)
    Rat total_integral() const;
    Rat total_measure() const;
    StepFunction as_step_function(double L) const;
};

// Running average of a decreasing profile: continuous, nonincreasing, and
// pointwise at least the profile itself. cums[k] is the exact integral up to
// breaks[k-1].
struct MaximalProfile {
    DecreasingProfile base;
    std::vector<Rat> cums;

    double eval(double t) const;
    Rat eval_rat(const Rat& t) const;
};

DecreasingProfile rearrangement(const StepFunction& f);
MaximalProfile maximal_rearrangement(const StepFunction& f);

struct InequalityReport {
    int checked = 0;
    int failures = 0;
    std::vector<std::string> notes;
    bool ok() const { return failures == 0; }
};

// Checks, at each sample point, the subadditivity of the running-average
// rearrangement, the two-variable subadditivity of the plain rearrangement,
// and (when both supports are positioned and disjoint) the lower bound for
// sums with disjoint supports. All comparisons are exact.
InequalityReport verify_rearrangement_inequalities(const StepFunction& f, const StepFunction& g,
                                                   std::span<const Rat> sample_ts);

// (sum f_j)*(N t) >= min_j f_j*(t) for disjointly supported families.
InequalityReport verify_disjoint_lower_bound(const std::vector<StepFunction>& fs,
                                             std::span<const Rat> sample_ts);

struct AltOracleResult {
    Rat essinf_sup;   // sup over |E| = t of essinf_E |f|
    Rat integral_sup; // sup over |E| = t of the integral of |f| over E
};

// Exhaustive-subset oracle on an atomized function (equal-measure atoms).
// Enumerates every subset of exactly t_atoms atoms; n must be at most 20.
AltOracleResult fstar_alt_oracle(std::span<const Rat> atom_values, const Rat& atom_width,
                                 int t_atoms);

}  // namespace marclab::stepfn

#endif
