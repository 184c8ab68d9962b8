#include "marclab/phi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace marclab::phi {

namespace {

const double kLog2 = std::log(2.0);

// sign of d/dt [t^a log(2L/t)^b] is the sign of a*log(2L/t) - b
std::optional<double> power_log_crit(double a, double b, double L) {
    if (a == 0.0 || std::isinf(L)) return std::nullopt;
    double x = b / a;  // log(2L/t_c) at the critical point
    if (x <= kLog2) return std::nullopt;
    double tc = 2.0 * L * std::exp(-x);
    if (!(tc > 0.0) || !(tc < L)) return std::nullopt;
    return tc;
}

bool power_log_nondecreasing(double a, double b, double L) {
    if (std::isinf(L)) return a >= 0.0;  // beta is 0 there
    if (a > 0.0) return b <= a * kLog2;  // no decreasing region inside (0, L)
    if (a == 0.0) return b <= 0.0;
    return false;
}

double eval_power_log(double a, double b, double L, double t) {
    double p = a == 0.0 ? 1.0 : std::pow(t, a);
    if (b == 0.0) return p;
    return p * std::pow(std::log(2.0 * L / t), b);
}

struct LinearSeg {
    double lo, hi;  // s-interval
    double slope, icept;
    double at(double s) const { return slope * s + icept; }
};

// Piecewise-linear representation of a tabulated phi: linear through the
// origin up to the first knot, then the interpolant, then constant.
std::vector<LinearSeg> tabulated_segments(const PhiSpec& f) {
    std::vector<LinearSeg> segs;
    const auto& g = f.grid;
    const auto& v = f.values;
    segs.push_back({0.0, g.front(), v.front() / g.front(), 0.0});
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        double sl = (v[i + 1] - v[i]) / (g[i + 1] - g[i]);
        segs.push_back({g[i], g[i + 1], sl, v[i] - sl * g[i]});
    }
    if (g.back() < f.L) segs.push_back({g.back(), f.L, 0.0, v.back()});
    return segs;
}

// Running maximum sup_{tau in (0, s]} phi(tau) of a piecewise-linear phi,
// again as linear segments (constant stretches have slope 0).
std::vector<LinearSeg> running_max_segments(const std::vector<LinearSeg>& segs) {
    std::vector<LinearSeg> out;
    double rm = 0.0;
    for (const auto& s : segs) {
        double y1 = s.at(s.lo), y2 = s.at(s.hi);
        if (s.slope > 0.0 && y2 > rm) {
            if (y1 >= rm) {
                out.push_back(s);
            } else {
                double x = (rm - s.icept) / s.slope;  // crossing of the old max
                out.push_back({s.lo, x, 0.0, rm});
                out.push_back({x, s.hi, s.slope, s.icept});
            }
            rm = y2;
        } else {
            // falling or flat, or rising but staying below the running max
            out.push_back({s.lo, s.hi, 0.0, rm});
        }
    }
    // merge zero-length artifacts
    std::vector<LinearSeg> merged;
    for (const auto& s : out)
        if (s.hi > s.lo) merged.push_back(s);
    return merged;
}

double majorant_power_log(const PhiSpec& f, double t, const NumericPolicy&) {
    const double a = f.alpha, b = f.beta, L = f.L;
    if (limit_at_zero(f) == kInf) return kInf;  // running max diverges

    if (std::isinf(L)) {  // beta == 0 here
        if (a > 1.0) return kInf;
        if (a == 1.0) return t;
        return std::pow(t, a);  // quasiconcave range, majorant equals phi
    }

    // peak position of the running max: phi is increasing on (0, p) and the
    // running max is constant past p
    double p;
    double plateau;
    if (auto tc = power_log_crit(a, b, L); tc && a > 0.0) {
        p = *tc;
        plateau = eval_power_log(a, b, L, p);
    } else if (power_log_nondecreasing(a, b, L)) {
        p = L;
        plateau = limit_at_L(f);
    } else {
        p = 0.0;  // not reachable for power-log with finite limit at zero
        plateau = limit_at_zero(f);
    }

    double best = 0.0;
    auto consider = [&best](double v) { best = std::max(best, v); };

    if (p > t) {
        // region where the running max equals phi: psi(s) = phi(s)/s
        consider(eval_power_log(a, b, L, t) / t);
        double right = std::min(p, L);
        double phi_right = right < L ? eval_power_log(a, b, L, right) : limit_at_L(f);
        consider(phi_right / right);
        if (auto rc = power_log_crit(a - 1.0, b, L); rc && *rc > t && *rc < right)
            consider(eval_power_log(a - 1.0, b, L, *rc));
    }
    if (p < L) {
        // running max constant: psi(s) = plateau/s, decreasing
        double s0 = std::max(t, p);
        consider(plateau / s0);
    }
    return t * best;
}

double majorant_tabulated(const PhiSpec& f, double t, const NumericPolicy&) {
    auto rm = running_max_segments(tabulated_segments(f));
    double best = 0.0;
    for (const auto& s : rm) {
        if (s.hi <= t) continue;
        double lo = std::max(s.lo, t);
        // psi(s) = slope + icept/s is monotone on the segment
        if (lo > 0.0) best = std::max(best, s.at(lo) / lo);
        best = std::max(best, s.at(s.hi) / s.hi);
    }
    return t * best;
}

std::vector<double> geometric_zero_tail(double L, int jmax) {
    std::vector<double> ts;
    double base = std::isinf(L) ? 1.0 : L;
    for (int j = 1; j <= jmax; ++j) ts.push_back(base * std::ldexp(1.0, -j));
    return ts;
}

}  // namespace

PhiSpec PhiSpec::power_log(double alpha, double beta, double L) {
    PhiSpec f;
    f.family = Family::power_log;
    f.alpha = alpha;
    f.beta = beta;
    f.L = L;
    f.validate();
    return f;
}

PhiSpec PhiSpec::tabulated(std::vector<double> grid, std::vector<double> values, double L) {
    PhiSpec f;
    f.family = Family::tabulated;
    f.grid = std::move(grid);
    f.values = std::move(values);
    f.L = L;
    f.validate();
    return f;
}

void PhiSpec::validate() const {
    if (!(L > 0.0)) throw std::invalid_argument("PhiSpec: domain length must be positive");
    if (family == Family::power_log) {
        if (beta != 0.0 && std::isinf(L))
            throw std::invalid_argument("PhiSpec: log factor requires a finite domain");
        return;
    }
    if (std::isinf(L)) throw std::invalid_argument("PhiSpec: tabulated phi needs a finite domain");
    if (grid.size() != values.size() || grid.empty())
        throw std::invalid_argument("PhiSpec: grid/value size mismatch");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || !(grid[i] < L))
            throw std::invalid_argument("PhiSpec: grid points must lie inside (0, L)");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("PhiSpec: grid must be strictly increasing");
        if (!(values[i] > 0.0)) throw std::invalid_argument("PhiSpec: values must be positive");
    }
}

double eval(const PhiSpec& f, double t) {
    if (!(t > 0.0) || !(t < f.L)) throw std::domain_error("phi: argument outside (0, L)");
    if (f.family == Family::power_log) return eval_power_log(f.alpha, f.beta, f.L, t);
    const auto& g = f.grid;
    const auto& v = f.values;
    if (t <= g.front()) return v.front() * t / g.front();
    if (t >= g.back()) return v.back();
    auto it = std::upper_bound(g.begin(), g.end(), t);
    std::size_t i = static_cast<std::size_t>(it - g.begin()) - 1;
    double w = (t - g[i]) / (g[i + 1] - g[i]);
    return v[i] + w * (v[i + 1] - v[i]);
}

double limit_at_zero(const PhiSpec& f) {
    if (f.family == Family::tabulated) return 0.0;  // linear through the origin
    if (f.alpha > 0.0) return 0.0;
    if (f.alpha == 0.0) {
        if (f.beta > 0.0) return kInf;
        return f.beta == 0.0 ? 1.0 : 0.0;
    }
    return kInf;
}

double limit_at_L(const PhiSpec& f) {
    if (f.family == Family::tabulated) return f.values.back();
    if (std::isinf(f.L)) return f.alpha > 0.0 ? kInf : (f.alpha == 0.0 ? 1.0 : 0.0);
    return eval_power_log(f.alpha, f.beta, f.L, f.L);  // log(2L/L) = log 2 > 0
}

std::vector<double> monotone_knots(const PhiSpec& f) {
    if (f.family == Family::tabulated) return f.grid;
    std::vector<double> ks;
    if (auto tc = power_log_crit(f.alpha, f.beta, f.L)) ks.push_back(*tc);
    return ks;
}

std::vector<double> ratio_monotone_knots(const PhiSpec& f) {
    if (f.family == Family::tabulated) return f.grid;
    std::vector<double> ks;
    if (auto tc = power_log_crit(f.alpha - 1.0, f.beta, f.L)) ks.push_back(*tc);
    return ks;
}

double majorant(const PhiSpec& f, double t, const NumericPolicy& pol) {
    if (!(t > 0.0) || !(t < f.L)) throw std::domain_error("majorant: argument outside (0, L)");
    if (f.family == Family::power_log) return majorant_power_log(f, t, pol);
    return majorant_tabulated(f, t, pol);
}

bool is_admissible(const PhiSpec& f, const NumericPolicy& pol) {
    double probe = std::isinf(f.L) ? 1.0 : f.L / 2;
    return std::isfinite(majorant(f, probe, pol));
}

PhiClassification classify(const PhiSpec& f, const NumericPolicy& pol) {
    pol.validate();
    PhiClassification c;
    const double tol = pol.tol_rel;

    auto grid = num::domain_grid(f.L, pol);
    for (double k : monotone_knots(f)) grid.push_back(k);
    for (double k : ratio_monotone_knots(f)) grid.push_back(k);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // monotone grid checks; the grids contain every monotonicity knot of the
    // supported families, so a sign change cannot hide between samples.
    bool nondec = true, ratio_noninc = true, tie = false;
    double prev = eval(f, grid.front());
    double prev_ratio = prev / grid.front();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        double val = eval(f, grid[i]);
        double ratio = val / grid[i];
        if (val < prev * (1.0 - tol)) nondec = false;
        else if (val < prev && val >= prev * (1.0 - 10 * tol)) tie = true;
        if (ratio > prev_ratio * (1.0 + tol)) ratio_noninc = false;
        else if (ratio > prev_ratio && ratio <= prev_ratio * (1.0 + 10 * tol)) tie = true;
        prev = val;
        prev_ratio = ratio;
    }
    c.is_nondecreasing = nondec;
    c.is_quasiconcave = nondec && ratio_noninc;
    c.inconclusive = tie && !(nondec && ratio_noninc);
    c.is_admissible = is_admissible(f, pol);

    // Delta_2 constants: sup over the grid of phi(2t)/phi(t)
    auto delta2_sup = [&](double upper) {
        double s = 0.0;
        for (double t : grid) {
            if (!(t < upper)) break;
            s = std::max(s, eval(f, 2 * t) / eval(f, t));
        }
        for (int j = 1; j <= 52; ++j) {  // geometric tail toward zero
            double t = upper * std::ldexp(1.0, -j);
            if (t <= 0) break;
            s = std::max(s, eval(f, 2 * t) / eval(f, t));
        }
        return s;
    };
    double half = std::isinf(f.L) ? pol.horizon : f.L / 2;
    c.delta2_constant = delta2_sup(half);
    c.delta2_near_zero_constant = delta2_sup(std::isinf(f.L) ? 1.0 : f.L * std::ldexp(1.0, -8));

    // limit of t/phi(t) at zero, classified by geometric extrapolation
    {
        auto tail = geometric_zero_tail(f.L, 50);
        double q25 = tail[24] / eval(f, tail[24]);
        double q50 = tail[49] / eval(f, tail[49]);
        double rel = (q25 - q50) / std::max(q50, 1e-300);
        if (std::fabs(rel) <= 1e3 * tol && q50 > 0.0)
            c.limit_t_over_phi = LimitClass::positive_finite;
        else if (rel > 0.0)
            c.limit_t_over_phi = LimitClass::zero;
        else
            c.limit_t_over_phi = LimitClass::infinite;
    }

    // almost-quasiconcave constant: inf over the grid of phi/majorant, with a
    // divergence test on the geometric tail toward zero
    if (c.is_admissible) {
        double inf_ratio = kInf;
        for (double t : grid) inf_ratio = std::min(inf_ratio, eval(f, t) / majorant(f, t, pol));
        auto tail = geometric_zero_tail(f.L, 48);
        double r24 = eval(f, tail[23]) / majorant(f, tail[23], pol);
        double r48 = eval(f, tail[47]) / majorant(f, tail[47], pol);
        bool vanishing = r48 < 1e-7 || r48 < 0.5 * r24;
        // conservative lower constant: safe under the library's own
        // floating-point norm evaluations
        if (!vanishing && inf_ratio > 0.0)
            c.almost_quasiconcave_constant = std::min(1.0, inf_ratio * (1.0 - tol));
    }
    return c;
}

double not_too_constant_margin(const PhiSpec& f, double a, const NumericPolicy& pol) {
    if (!(a > 1.0)) throw std::invalid_argument("not_too_constant_margin: a must exceed 1");
    double upper = std::isinf(f.L) ? pol.horizon : f.L / a;
    auto h = [&](double t) { return eval(f, a * t) / eval(f, t); };
    std::vector<double> knots = monotone_knots(f);
    for (double k : monotone_knots(f)) knots.push_back(k / a);
    return num::inf_refined(h, 0.0, upper, knots, pol).value;
}

double dilation_condition_value(const PhiSpec& f, const NumericPolicy& pol) {
    double best = kInf;
    for (int i = 1; i <= 40; ++i) {
        double theta = 1.0 - std::ldexp(1.0, -i);
        auto h = [&](double t) { return eval(f, t) / eval(f, theta * t); };
        std::vector<double> knots = monotone_knots(f);
        for (double k : monotone_knots(f)) knots.push_back(k / theta);
        double sup =
            num::sup_refined(h, 0.0, std::isinf(f.L) ? pol.horizon : f.L, knots, pol).value;
        best = std::min(best, sup);
        if (best <= 1.0 + pol.tol_rel) break;
    }
    return best;
}

double sigma_threshold(const PhiSpec& f, NormCase which, double eps, double tau, double muS,
                       int k, double normT, double r, double C_phi, const NumericPolicy& pol) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("sigma_threshold: eps in (0,1)");
    if (!(tau > 0.0) || !(tau <= 1.0)) throw std::invalid_argument("sigma_threshold: tau in (0,1]");
    if (k < 1) throw std::invalid_argument("sigma_threshold: k must be >= 1");
    if (!(r <= normT)) throw std::invalid_argument("sigma_threshold: r must not exceed normT");
    double arg = tau * muS / k;
    double rhs = normT + r;
    if (which == NormCase::m_phi) {
        if (!(C_phi > 0.0) || !(C_phi <= 1.0))
            throw std::invalid_argument("sigma_threshold: C_phi in (0,1]");
        arg *= eps;
        rhs *= 2.0 / (C_phi * C_phi);
    }
    if (arg >= f.L) arg = f.L * (1.0 - 1e-12);
    double maj = majorant(f, arg, pol);
    if (!std::isfinite(maj) || !(maj > 0.0))
        throw std::domain_error("sigma_threshold: majorant evaluation failed");
    return rhs / (eps * maj) * (1.0 + pol.tol_rel);
}

double inverse_below(const PhiSpec& f, double y, double hi, const NumericPolicy& pol) {
    if (!(y > 0.0)) throw std::domain_error("inverse_below: level must be positive");
    hi = std::min(hi, std::isinf(f.L) ? pol.horizon : f.L);
    double lo = 0.0;
    if (eval(f, hi * (1.0 - 1e-12)) <= y) return hi * (1.0 - 1e-12);
    double probe = hi;
    for (int i = 0; i < 2000; ++i) {
        probe /= 2;
        if (probe <= 0.0) throw std::domain_error("inverse_below: no admissible point found");
        if (eval(f, probe) <= y) break;
    }
    lo = probe;
    double hib = probe * 2;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hib);
        if (eval(f, mid) <= y)
            lo = mid;
        else
            hib = mid;
    }
    return lo;
}

std::string to_string(NormCase c) { return c == NormCase::m_phi ? "m_phi" : "M_phi"; }

}  // namespace marclab::phi
