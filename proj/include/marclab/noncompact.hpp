#ifndef MARCLAB_NONCOMPACT_HPP
#define MARCLAB_NONCOMPACT_HPP

#include "marclab/norms.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace marclab::noncompact {

using norms::NormCase;
using norms::PhiSpec;
using norms::StepFunction;
using stepfn::Interval;

// Any center g with ||g||_Y above C_Y(||T|| + r) misses every ball of radius
// r around the image of the unit ball.
double distance_exclusion_bound(double normT, double r, double C_Y);

// --- exact geometry with symbolic pi -------------------------------------

// coef * pi^pi_pow with an exact rational coefficient; comparisons use
// 49-digit rational bounds on pi and are exact whenever the powers match.
struct PiVol {
    Rat coef = 0;
    int pi_pow = 0;
    double approx() const;
};

PiVol pivol_scale(const PiVol& v, const Rat& c);
int pivol_compare(const PiVol& a, const PiVol& b);  // -1, 0, +1
PiVol unit_ball_volume(int n);

struct Cube {
    std::vector<Rat> center;
    Rat side;
};

// Dyadic packing of equal-measure balls centered at the subcube centers of
// the level-k subdivision of Q, where k is pinned by
//   |B0| / 2^{n(k+1)} <= t1 < |B0| / 2^{nk}.
struct Packing {
    int n = 1;
    Cube Q;
    int level = 0;
    std::uint64_t count = 1;  // 2^{n * level}
    Rat t1;
    PiVol b0;   // measure of the ball inscribed in Q
    PiVol tau;  // b0 / (2^n |Q|)
    std::vector<std::vector<Rat>> centers;  // materialized prefix, index order
    bool centers_complete = true;

    std::vector<Rat> center_of(std::uint64_t idx) const;
};

Packing build_packing(int n, const Cube& Q, const Rat& t1);

struct PackingReport {
    bool ok = true;
    std::vector<std::string> failures;
};

// Re-derives the level inequality, the containment of each ball in its
// subcube, pairwise disjointness (for small packings directly, otherwise via
// the inscribed-cube comparison), and the total-mass bound, all exactly.
PackingReport verify_packing(const Packing& p);

// --- general lower-bound certificates -------------------------------------

struct WitnessRecord {
    StepFunction image;      // the image of the witness under the operator
    double x_norm_attested;  // claimed unit norm in the source space
    Interval E;
};

// Families of translated copies become astronomically large at small eps;
// this compact form carries the exact total mass and the underlying packing
// while only a sample of records is materialized.
struct CompactTranslates {
    std::uint64_t family_size = 0;
    Rat piece_measure;  // measure of each E_i
    Rat mass_total;     // family_size * piece_measure
    Packing packing;
};

struct WitnessFamily {
    std::vector<WitnessRecord> records;
    std::optional<CompactTranslates> compact;
    bool serial_only = false;
    std::uint64_t size() const { return compact ? compact->family_size : records.size(); }
};

using WitnessGenerator = std::function<WitnessFamily(double sigma, double eps)>;

struct GeneralLowerCertificate {
    NormCase which = NormCase::m_phi;
    PhiSpec phi;
    double tau = 1.0;
    double muS = 1.0;
    double t0 = kInf;  // m case only: cap on the witness set measures
    double r = 1.0;
    double normT = 1.0;
    std::optional<double> C_phi;  // taken from classification when absent
    WitnessGenerator generator;
    bool serial_only = false;  // honored: the generator is never invoked concurrently
};

struct ConditionMargins {
    double eps = 0;
    int k = 0;
    double sigma = 0;
    double mass_ratio = 0;   // total witness mass over tau mu(S)
    double s_slack = 0;      // smallest recomputed s_i over sigma
    double marc_slack = 0;   // smallest s_i phi(mu E_i) over (1 - eps) r
};

struct Verdict {
    bool pass = false;
    double bound = 0.0;
    std::string failed_condition;
    std::vector<std::string> trace;
    std::vector<ConditionMargins> margins;
};

// For each eps and each center count k up to k_max: computes the sigma
// threshold, invokes the generator, checks the four witness conditions
// literally, and re-runs the pigeonhole mass count against simulated center
// sets obeying the exclusion bound. A PASS certifies the lower bound r for
// the ball measure of noncompactness.
Verdict verify_general_lower_certificate(const GeneralLowerCertificate& cert, int k_max,
                                         std::span<const double> eps_list,
                                         const NumericPolicy& pol = {}, std::uint64_t seed = 1);

// Canned witness generator: translated indicator profiles chi_E / phi(|E|)
// placed by the dyadic packing of S, for the identity embedding. phi must be
// nondecreasing.
WitnessGenerator make_identity_packing_generator(const PhiSpec& p, const Interval& S,
                                                 NormCase which, double t0,
                                                 const NumericPolicy& pol = {});

// --- shrinking-support driver ----------------------------------------------

struct ShrinkingEntry {
    double x_norm_attested;
    double y_norm;
    double support_radius;
};

struct ShrinkingVerdict {
    bool pass = false;
    bool maximal = false;  // set when alpha0 reaches the attested operator norm
    std::string failure;
};

// Attested sequence of unit-norm functions with shrinking supports and
// Y-norms at least alpha0; radii must be strictly decreasing.
ShrinkingVerdict shrinking_driver(std::span<const ShrinkingEntry> entries, double alpha0,
                                  std::optional<double> norm_I = std::nullopt);

// --- equimeasurable-family certificates ------------------------------------

struct AltCertificate {
    double lambda = 0.0;
    double normT = 1.0;
    double a = 1.0;  // cap on the support measures
    std::vector<StepFunction> images;
    PhiSpec phi;
    NormCase which = NormCase::m_phi;
};

// Verifies the growth hypothesis on phi (margins on a doubling grid), the
// dilation and doubling hypotheses in the m case, and the four family
// conditions: disjoint supports, support measures at most a, exact
// equimeasurability, and Y-norms at least lambda.
Verdict alt_certificate_check(const AltCertificate& cert, const NumericPolicy& pol = {});

enum class AltCase { C1, C2, C3 };

struct AltWitnessParams {
    double r = 0, eps = 0, theta = 0;
    std::uint64_t N = 0;
    double a = 0;
    std::uint64_t M = 0;
    AltCase proof_case = AltCase::C1;
    double gamma = 1.0;
    std::optional<double> beta0, alpha0;
    std::vector<std::string> checks;
    bool all_verified = false;
};

// Selects the full parameter tuple used by the equimeasurable-family lower
// bound and re-verifies every defining inequality numerically after the
// selection.
AltWitnessParams alt_witness_params(const PhiSpec& p, NormCase which, double normT, double lambda,
                                    int m_centers, const NumericPolicy& pol = {});

// --- essential-supremum target ---------------------------------------------

struct LinfCertificate {
    Rat r;  // exact claimed bound; the sup-norm comparison is strict
    std::vector<StepFunction> members;
    double pairwise_x_bound = 1.0;  // attested bound on all pairwise X-distances
};

Verdict linf_lower_certificate(const LinfCertificate& cert);

// family size needed to defeat m - 1 centers
std::uint64_t ell_for_centers(int m);

// --- independent separation oracle -----------------------------------------

// min pairwise Y-distance / (2 C_Y); a covering of the family by balls
// centered anywhere needs at least this radius.
double separation_lower_bound(const std::vector<StepFunction>& points, const PhiSpec& p,
                              NormCase which, const NumericPolicy& pol = {});

// Brute-force covering radius with centers restricted to the points
// themselves; dist is a full symmetric matrix.
double covering_radius_restricted(const std::vector<std::vector<double>>& dist, int k);

}  // namespace marclab::noncompact

#endif
