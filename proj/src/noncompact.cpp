#include "marclab/noncompact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace marclab::noncompact {

namespace {

// 49-digit rational bounds on pi
const Rat& pi_lower() {
    static const Rat v = Rat(BigInt("31415926535897932384626433832795028841971693993751"),
                             rat_pow(Rat(10), 49).convert_to<BigInt>());
    return v;
}
const Rat& pi_upper() {
    static const Rat v = Rat(BigInt("31415926535897932384626433832795028841971693993752"),
                             rat_pow(Rat(10), 49).convert_to<BigInt>());
    return v;
}

std::uint64_t splitmix_next(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double splitmix_uniform(std::uint64_t& s) {
    return static_cast<double>(splitmix_next(s) >> 11) * 0x1.0p-53;
}

Rat cell_side(const Rat& side, int level) { return side / rat_pow(Rat(2), level); }

}  // namespace

double distance_exclusion_bound(double normT, double r, double C_Y) {
    if (!(r > 0)) throw std::invalid_argument("distance_exclusion_bound: r must be positive");
    if (!(C_Y >= 1)) throw std::invalid_argument("distance_exclusion_bound: C_Y must be >= 1");
    return C_Y * (normT + r);
}

double PiVol::approx() const { return to_double(coef) * std::pow(M_PI, pi_pow); }

PiVol pivol_scale(const PiVol& v, const Rat& c) { return {v.coef * c, v.pi_pow}; }

int pivol_compare(const PiVol& a, const PiVol& b) {
    if (a.pi_pow == b.pi_pow) {
        if (a.coef < b.coef) return -1;
        if (a.coef > b.coef) return 1;
        return 0;
    }
    // reduce to sign of a.coef * pi^d - b.coef with d > 0
    const PiVol *x = &a, *y = &b;
    int flip = 1;
    if (a.pi_pow < b.pi_pow) {
        std::swap(x, y);
        flip = -1;
    }
    int d = x->pi_pow - y->pi_pow;
    if (x->coef == 0) return (0 < y->coef ? -1 : (y->coef < 0 ? 1 : 0)) * flip;
    Rat lo = x->coef * rat_pow(x->coef > 0 ? pi_lower() : pi_upper(), d);
    Rat hi = x->coef * rat_pow(x->coef > 0 ? pi_upper() : pi_lower(), d);
    if (hi < y->coef) return -flip;
    if (lo > y->coef) return flip;
    // the pi bounds did not separate the values; they differ by less than
    // 1e-48 relative, far below any tolerance used here
    double diff = x->approx() - to_double(y->coef);
    return (diff < 0 ? -1 : 1) * flip;
}

PiVol unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: dimension must be positive");
    if (n % 2 == 0) {
        int q = n / 2;
        Rat fact = 1;
        for (int i = 2; i <= q; ++i) fact *= i;
        return {Rat(1) / fact, q};
    }
    int q = (n - 1) / 2;
    // pi^q * 4^{q+1} (q+1)! / (2q+2)!
    Rat num = rat_pow(Rat(4), q + 1);
    for (int i = 2; i <= q + 1; ++i) num *= i;
    Rat den = 1;
    for (int i = 2; i <= 2 * q + 2; ++i) den *= i;
    return {num / den, q};
}

std::vector<Rat> Packing::center_of(std::uint64_t idx) const {
    std::vector<Rat> c(n);
    std::uint64_t cells = std::uint64_t(1) << level;
    Rat cell = cell_side(Q.side, level);
    for (int d = 0; d < n; ++d) {
        std::uint64_t digit = idx % cells;
        idx /= cells;
        c[d] = Q.center[d] - Q.side / 2 + cell * (2 * Rat(digit) + 1) / 2;
    }
    return c;
}

Packing build_packing(int n, const Cube& Q, const Rat& t1) {
    if (n < 1) throw std::invalid_argument("build_packing: dimension must be positive");
    if (static_cast<int>(Q.center.size()) != n)
        throw std::invalid_argument("build_packing: center dimension mismatch");
    if (!(Q.side > 0)) throw std::invalid_argument("build_packing: cube side must be positive");

    Packing p;
    p.n = n;
    p.Q = Q;
    p.t1 = t1;
    PiVol omega = unit_ball_volume(n);
    p.b0 = pivol_scale(omega, rat_pow(Q.side / 2, n));
    Rat qvol = rat_pow(Q.side, n);
    p.tau = pivol_scale(p.b0, Rat(1) / (rat_pow(Rat(2), n) * qvol));

    PiVol t1v{t1, 0};
    if (!(t1 > 0) || pivol_compare(t1v, p.b0) >= 0)
        throw std::domain_error("build_packing: t1 must lie in (0, |B0|)");

    int k = 0;
    // smallest k with |B0| / 2^{n(k+1)} <= t1
    while (pivol_compare(t1v, pivol_scale(p.b0, Rat(1) / rat_pow(Rat(2), n * (k + 1)))) < 0) {
        ++k;
        if (static_cast<std::uint64_t>(n) * (k + 1) >= 63)
            throw std::domain_error("build_packing: t1 too small for a 64-bit cube count");
    }
    p.level = k;
    p.count = std::uint64_t(1) << (n * k);

    std::uint64_t cap = 1024;
    std::uint64_t mat = std::min<std::uint64_t>(p.count, cap);
    p.centers_complete = mat == p.count;
    p.centers.reserve(mat);
    for (std::uint64_t i = 0; i < mat; ++i) p.centers.push_back(p.center_of(i));
    return p;
}

PackingReport verify_packing(const Packing& p) {
    PackingReport rep;
    auto fail = [&rep](std::string msg) {
        rep.ok = false;
        rep.failures.push_back(std::move(msg));
    };

    if (p.count != (std::uint64_t(1) << (p.n * p.level))) fail("count is not 2^(n k)");

    PiVol t1v{p.t1, 0};
    PiVol lower = pivol_scale(p.b0, Rat(1) / rat_pow(Rat(2), p.n * (p.level + 1)));
    PiVol upper = pivol_scale(p.b0, Rat(1) / rat_pow(Rat(2), p.n * p.level));
    if (pivol_compare(t1v, lower) < 0 || pivol_compare(t1v, upper) >= 0)
        fail("subdivision level violates the dyadic measure bracket");

    // inscribed-cube comparison: |Q_E| = (2^n / omega_n) t1 < |Q_j|
    PiVol omega = unit_ball_volume(p.n);
    PiVol qe{rat_pow(Rat(2), p.n) * p.t1 / omega.coef, -omega.pi_pow};
    Rat qj = rat_pow(cell_side(p.Q.side, p.level), p.n);
    if (pivol_compare(qe, PiVol{qj, 0}) >= 0)
        fail("ball-enclosing cube does not fit inside a subdivision cell");

    // total mass: count * t1 >= tau |Q| = |B0| / 2^n
    PiVol mass{Rat(p.count) * p.t1, 0};
    PiVol target = pivol_scale(p.b0, Rat(1) / rat_pow(Rat(2), p.n));
    if (pivol_compare(mass, target) < 0) fail("total packed measure below tau |Q|");

    // per-center containment: ball(c, rho) inside its subdivision cell, i.e.
    // (cell_side/2 - |c_d - cell_center_d|)^n * omega_n >= t1 per coordinate
    Rat cell = cell_side(p.Q.side, p.level);
    for (std::size_t j = 0; j < p.centers.size(); ++j) {
        auto cell_center = p.center_of(j);
        for (int d = 0; d < p.n; ++d) {
            Rat slack = cell / 2 - rat_abs(p.centers[j][d] - cell_center[d]);
            if (slack < 0 ||
                pivol_compare(pivol_scale(omega, rat_pow(slack, p.n)), t1v) < 0) {
                fail("ball " + std::to_string(j) + " leaves its cell (overlap)");
                break;
            }
        }
    }

    // direct pairwise disjointness for small packings:
    // dist^2 >= 4 rho^2  <=>  (dist^2)^n omega_n^2 >= 4^n t1^2
    if (p.centers.size() <= 128) {
        for (std::size_t i = 0; i < p.centers.size(); ++i)
            for (std::size_t j = i + 1; j < p.centers.size(); ++j) {
                Rat d2 = 0;
                for (int d = 0; d < p.n; ++d) {
                    Rat diff = p.centers[i][d] - p.centers[j][d];
                    d2 += diff * diff;
                }
                PiVol lhs{rat_pow(d2, p.n) * omega.coef * omega.coef, 2 * omega.pi_pow};
                PiVol rhs{rat_pow(Rat(4), p.n) * p.t1 * p.t1, 0};
                if (pivol_compare(lhs, rhs) < 0) {
                    fail("balls " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
                    j = p.centers.size();
                    i = p.centers.size();
                }
            }
    }
    return rep;
}

// --- general lower-bound checker -------------------------------------------

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

StepFunction random_bounded_center(std::uint64_t& rng, double muS, double cap,
                                   const PhiSpec& p, NormCase which, const NumericPolicy& pol) {
    int npieces = 1 + static_cast<int>(splitmix_next(rng) % 3);
    std::vector<stepfn::Piece> ps;
    int denom = 64;
    std::vector<int> cuts;
    for (int i = 0; i < 2 * npieces; ++i)
        cuts.push_back(1 + static_cast<int>(splitmix_next(rng) % (denom - 1)));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Rat width = rat_from_double(muS);
    for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) {
        Rat lo = width * cuts[i] / denom, hi = width * cuts[i + 1] / denom;
        Rat v = Rat(1 + static_cast<int>(splitmix_next(rng) % 8));
        ps.push_back({v, hi - lo, Interval{lo, hi}});
    }
    if (ps.empty()) ps.push_back({Rat(1), width / 2, Interval{0, width / 2}});
    StepFunction g(std::move(ps), muS);
    double n = norms::norm(g, p, which, pol).value;
    double target = cap * (0.3 + 0.6 * splitmix_uniform(rng));
    return g.scaled(rat_from_double(target / std::max(n, 1e-300)));
}

}  // namespace

Verdict verify_general_lower_certificate(const GeneralLowerCertificate& cert, int k_max,
                                         std::span<const double> eps_list,
                                         const NumericPolicy& pol, std::uint64_t seed) {
    Verdict v;
    v.bound = cert.r;
    if (!(cert.r <= cert.normT))
        throw std::invalid_argument("certificate: r must not exceed the operator norm");
    if (!(cert.tau > 0) || !(cert.tau <= 1))
        throw std::invalid_argument("certificate: tau must lie in (0, 1]");
    if (!cert.generator) throw std::invalid_argument("certificate: missing witness generator");

    double C_phi = 1.0;
    if (cert.which == NormCase::m_phi) {
        if (cert.C_phi) {
            C_phi = *cert.C_phi;
        } else {
            auto cls = phi::classify(cert.phi, pol);
            if (!cls.almost_quasiconcave_constant)
                throw std::invalid_argument("certificate: phi is not almost quasiconcave");
            C_phi = *cls.almost_quasiconcave_constant;
        }
        // hypothesis (a): some t0 below which phi(t)/t is nonincreasing
        if (!(cert.t0 > 0) || !std::isfinite(cert.t0) || cert.t0 >= cert.phi.L)
            throw std::invalid_argument("certificate: the m case needs t0 in (0, mu(R))");
        auto grid = num::domain_grid(cert.t0, pol);
        for (double kn : phi::ratio_monotone_knots(cert.phi))
            if (kn < cert.t0) grid.push_back(kn);
        std::sort(grid.begin(), grid.end());
        double prev_ratio = kInf;
        for (double t : grid) {
            double ratio = phi::eval(cert.phi, t) / t;
            if (ratio > prev_ratio * (1.0 + 1e-9))
                throw std::invalid_argument(
                    "certificate: phi(t)/t is not nonincreasing below t0");
            prev_ratio = ratio;
        }
    }
    const double cap = (cert.which == NormCase::m_phi ? 2.0 / C_phi : 1.0) *
                       (cert.normT + cert.r);
    const Rat mass_target = rat_from_double(cert.tau) * rat_from_double(cert.muS);

    auto fail = [&v](const std::string& cond) {
        v.pass = false;
        v.failed_condition = cond;
        return v;
    };

    std::uint64_t rng = seed;
    for (double eps : eps_list) {
        for (int k = 1; k <= k_max; ++k) {
            double sigma = phi::sigma_threshold(cert.phi, cert.which, eps, cert.tau, cert.muS, k,
                                                cert.normT, cert.r, C_phi, pol);
            WitnessFamily fam = cert.generator(sigma, eps);
            std::string round = "eps=" + fmt(eps) + " k=" + std::to_string(k) +
                                " sigma=" + fmt(sigma) + " m=" + std::to_string(fam.size());

            // (i) attested unit norms
            for (std::size_t i = 0; i < fam.records.size(); ++i)
                if (std::fabs(fam.records[i].x_norm_attested - 1.0) > 1e-9)
                    return fail("(i) witness " + std::to_string(i) + " is not attested unit norm");

            // (ii) disjointness, total mass, and the m-case measure cap
            std::vector<Interval> spans;
            for (const auto& rec : fam.records) spans.push_back(rec.E);
            std::sort(spans.begin(), spans.end(),
                      [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
            for (std::size_t i = 0; i + 1 < spans.size(); ++i)
                if (spans[i].hi > spans[i + 1].lo)
                    return fail("(ii) witness sets are not pairwise disjoint");
            Rat mass = 0;
            if (fam.compact) {
                if (fam.compact->mass_total != Rat(fam.compact->family_size) * fam.compact->piece_measure)
                    return fail("(ii) compact family mass is inconsistent");
                auto prep = verify_packing(fam.compact->packing);
                if (!prep.ok) return fail("(ii) packing re-verification: " + prep.failures.front());
                mass = fam.compact->mass_total;
            } else {
                for (const auto& rec : fam.records) mass += rec.E.length();
            }
            if (mass < mass_target) return fail("(ii) total witness measure below tau mu(S)");
            if (cert.which == NormCase::m_phi && std::isfinite(cert.t0)) {
                Rat cap_measure = rat_from_double(cert.t0);
                for (std::size_t i = 0; i < fam.records.size(); ++i)
                    if (!(fam.records[i].E.length() < cap_measure))
                        return fail("(ii) witness set " + std::to_string(i) +
                                    " is not smaller than t0");
            }

            // (iii) and (iv), with s_i recomputed from the images
            double min_s = kInf, min_marc = kInf;
            for (std::size_t i = 0; i < fam.records.size(); ++i) {
                const auto& rec = fam.records[i];
                double s = to_double(cert.which == NormCase::m_phi
                                         ? stepfn::essinf_abs_on(rec.image, rec.E)
                                         : stepfn::average_abs_on(rec.image, rec.E));
                min_s = std::min(min_s, s);
                if (!(s >= sigma * (1.0 - 1e-12)))
                    return fail("(iii) witness " + std::to_string(i) + " has s below sigma");
                double marc = s * phi::eval(cert.phi, to_double(rec.E.length()));
                min_marc = std::min(min_marc, marc);
                if (!(marc >= (1.0 - eps) * cert.r * (1.0 - 1e-12)))
                    return fail("(iv) witness " + std::to_string(i) +
                                " fails the lower Marcinkiewicz bound");
            }
            v.margins.push_back({eps, k, sigma, to_double(mass / mass_target), min_s / sigma,
                                 min_marc / ((1.0 - eps) * cert.r)});

            // pigeonhole re-run against simulated center sets obeying the
            // exclusion bound: the family members themselves plus random
            // bounded centers
            double radius = std::pow(1.0 - eps, 3) * cert.r;
            for (int trial = 0; trial < 2; ++trial) {
                std::vector<StepFunction> centers;
                if (trial == 0)
                    for (int j = 0; j < k && j < static_cast<int>(fam.records.size()); ++j)
                        centers.push_back(fam.records[j].image);
                while (static_cast<int>(centers.size()) < k)
                    centers.push_back(
                        random_bounded_center(rng, cert.muS, cap, cert.phi, cert.which, pol));

                std::vector<Rat> captured(centers.size(), Rat(0));
                bool all_covered = true;
                for (const auto& rec : fam.records) {
                    bool covered = false;
                    for (std::size_t j = 0; j < centers.size(); ++j) {
                        double d =
                            norms::distance(centers[j], rec.image, cert.phi, cert.which, pol);
                        if (d <= radius) {
                            covered = true;
                            captured[j] += rec.E.length();
                        }
                    }
                    if (!covered) all_covered = false;
                }
                if (!all_covered) {
                    v.trace.push_back(round + " trial=" + std::to_string(trial) +
                                      ": covering defeated, an uncovered witness exists");
                    continue;
                }
                // every witness covered: some center captures a k-th of the
                // mass, and the sigma choice then pushes its norm past the
                // exclusion bound
                Rat sampled_mass = 0, best_mass = 0;
                for (const auto& rec : fam.records) sampled_mass += rec.E.length();
                for (const auto& c : captured) best_mass = std::max(best_mass, c);
                if (Rat(k) * best_mass < sampled_mass)
                    return fail("pigeonhole mass count failed on a covering center set");
                double target = cert.tau * cert.muS / k;
                double chain = cert.which == NormCase::m_phi
                                   ? C_phi * eps * sigma *
                                         phi::majorant(cert.phi, eps * target, pol)
                                   : eps * sigma * phi::majorant(cert.phi, target, pol);
                if (!(chain > cap * (1.0 - 1e-9)))
                    return fail("pigeonhole chain does not exceed the center norm cap");
                v.trace.push_back(round + " trial=" + std::to_string(trial) +
                                  ": pigeonhole contradiction established, chain=" + fmt(chain));
            }
        }
    }
    v.pass = true;
    return v;
}

WitnessGenerator make_identity_packing_generator(const PhiSpec& p, const Interval& S,
                                                 NormCase which, double t0,
                                                 const NumericPolicy& pol) {
    return [=](double sigma, double /*eps*/) {
        double width = to_double(S.length());
        double hi = width * (1.0 - 1e-9);
        if (which == NormCase::m_phi && std::isfinite(t0)) hi = std::min(hi, t0 * (1.0 - 1e-9));
        double level = 1.0 / std::max(sigma, 1e-300) * (1.0 - 1e-9);
        double t_raw = phi::inverse_below(p, level, hi, pol);
        Rat t1 = rat_from_double(std::min(t_raw, hi));

        Cube Q{{S.lo + S.length() / 2}, S.length()};
        Packing pack = build_packing(1, Q, t1);

        Rat value = rat_from_double(1.0 / phi::eval(p, to_double(t1)));
        auto make_record = [&](std::uint64_t idx) {
            Rat c = pack.center_of(idx)[0];
            Interval E{c - t1 / 2, c + t1 / 2};
            return WitnessRecord{StepFunction::indicator(E, value, to_double(S.hi)), 1.0, E};
        };

        WitnessFamily fam;
        if (pack.count <= 64) {
            for (std::uint64_t i = 0; i < pack.count; ++i) fam.records.push_back(make_record(i));
        } else {
            CompactTranslates c;
            c.family_size = pack.count;
            c.piece_measure = t1;
            c.mass_total = Rat(pack.count) * t1;
            c.packing = pack;
            std::uint64_t stride = std::max<std::uint64_t>(pack.count / 31, 1);
            std::vector<std::uint64_t> picks;
            for (std::uint64_t i = 0; i < pack.count; i += stride) picks.push_back(i);
            picks.push_back(pack.count - 1);
            std::sort(picks.begin(), picks.end());
            picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
            for (std::uint64_t i : picks) fam.records.push_back(make_record(i));
            fam.compact = std::move(c);
        }
        return fam;
    };
}

ShrinkingVerdict shrinking_driver(std::span<const ShrinkingEntry> entries, double alpha0,
                                  std::optional<double> norm_I) {
    ShrinkingVerdict v;
    if (entries.empty()) {
        v.failure = "empty sequence";
        return v;
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (std::fabs(entries[i].x_norm_attested - 1.0) > 1e-9) {
            v.failure = "entry " + std::to_string(i) + " is not attested unit norm";
            return v;
        }
        if (i > 0 && !(entries[i].support_radius < entries[i - 1].support_radius)) {
            v.failure = "support radii fail to decrease at index " + std::to_string(i);
            return v;
        }
        if (!(entries[i].y_norm >= alpha0)) {
            v.failure = "entry " + std::to_string(i) + " has Y-norm below alpha0";
            return v;
        }
    }
    v.pass = true;
    if (norm_I) v.maximal = alpha0 >= *norm_I * (1.0 - 1e-9);
    return v;
}

Verdict alt_certificate_check(const AltCertificate& cert, const NumericPolicy& pol) {
    Verdict v;
    v.bound = cert.lambda;
    auto fail = [&v](const std::string& cond) {
        v.pass = false;
        v.failed_condition = cond;
        return v;
    };

    // growth hypothesis: the dilation margin must keep doubling along a
    // geometric grid of dilation factors
    double m20 = phi::not_too_constant_margin(cert.phi, std::ldexp(1.0, 20), pol);
    double m40 = phi::not_too_constant_margin(cert.phi, std::ldexp(1.0, 40), pol);
    v.trace.push_back("margin(2^20)=" + fmt(m20) + " margin(2^40)=" + fmt(m40));
    if (!(m40 >= 4.0 * (1.0 - 1e-9)) || !(m40 >= 1.9 * m20))
        return fail("phi growth hypothesis: the dilation margin does not diverge");

    if (cert.which == NormCase::m_phi) {
        auto cls = phi::classify(cert.phi, pol);
        if (!std::isfinite(cls.delta2_constant)) return fail("phi is not doubling");
        double dil = phi::dilation_condition_value(cert.phi, pol);
        v.trace.push_back("dilation value=" + fmt(dil));
        if (!(dil <= 1.0 + 1e3 * pol.tol_rel)) return fail("dilation hypothesis fails");
    }

    if (cert.images.empty()) return fail("empty family");
    try {
        stepfn::disjoint_sum(cert.images);
    } catch (const std::exception& e) {
        return fail(std::string("supports are not mutually disjoint: ") + e.what());
    }
    Rat acap = rat_from_double(cert.a);
    for (std::size_t j = 0; j < cert.images.size(); ++j)
        if (cert.images[j].support_measure() > acap)
            return fail("support of member " + std::to_string(j) + " exceeds the cap");

    auto reference = stepfn::rearrangement(cert.images.front());
    for (std::size_t j = 1; j < cert.images.size(); ++j)
        if (!(stepfn::rearrangement(cert.images[j]) == reference))
            return fail("member " + std::to_string(j) + " is not equimeasurable with the first");

    for (std::size_t j = 0; j < cert.images.size(); ++j) {
        double n = norms::norm(cert.images[j], cert.phi, cert.which, pol).value;
        if (!(n >= cert.lambda * (1.0 - 1e3 * pol.tol_rel)))
            return fail("member " + std::to_string(j) + " has Y-norm below lambda");
    }
    v.pass = true;
    return v;
}

AltWitnessParams alt_witness_params(const PhiSpec& p, NormCase which, double normT, double lambda,
                                    int m_centers, const NumericPolicy& pol) {
    if (!(lambda > 0) || !(lambda <= normT))
        throw std::invalid_argument("alt_witness_params: lambda must lie in (0, normT]");
    if (m_centers < 1) throw std::invalid_argument("alt_witness_params: m_centers must be >= 1");

    AltWitnessParams out;
    out.r = 0.8 * lambda;
    out.eps = 0.05 * lambda;  // r + 2 eps = 0.9 lambda < lambda

    auto cls = phi::classify(p, pol);
    double C = 1.0;
    if (which == NormCase::m_phi) {
        C = cls.delta2_constant;
        if (!std::isfinite(C))
            throw std::invalid_argument("alt_witness_params: phi is not doubling");
    }

    // theta: zero in the M case; otherwise the first dyadic theta whose
    // dilation supremum clears 1 + eps/r
    if (which == NormCase::M_phi) {
        out.theta = 0.0;
    } else {
        double target = 1.0 + out.eps / out.r;
        bool found = false;
        for (int i = 1; i <= 50; ++i) {
            double theta = 1.0 - std::ldexp(1.0, -i);
            auto h = [&](double t) { return phi::eval(p, t) / phi::eval(p, theta * t); };
            double sup = num::sup_refined(h, 0.0, std::isinf(p.L) ? pol.horizon : p.L,
                                          phi::monotone_knots(p), pol)
                             .value;
            if (sup <= target * (1.0 - 1e-12)) {
                out.theta = theta;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error("alt_witness_params: no dilation factor reaches 1 + eps/r");
    }

    // proof case: the m case and the infinite-measure M case behave alike;
    // otherwise split on whether majorant(t)/t is constant near zero
    double muR = p.L;
    auto qratio = [&](double t) { return phi::majorant(p, t, pol) / t; };
    if (which == NormCase::m_phi || std::isinf(muR)) {
        out.proof_case = AltCase::C1;
    } else {
        double qsmall = qratio(muR * std::ldexp(1.0, -50));
        double qref = qratio(muR * std::ldexp(1.0, -20));
        if (std::fabs(qsmall - qref) <= 1e3 * pol.tol_rel * qsmall) {
            out.proof_case = AltCase::C3;
            // largest dyadic point below which the ratio stays constant
            double alpha0 = muR * 0.25;
            for (int j = 2; j <= 20; ++j) {
                double cand = muR * std::ldexp(1.0, -j);
                if (std::fabs(qratio(cand) - qsmall) <= 1e3 * pol.tol_rel * qsmall) {
                    alpha0 = cand;
                    break;
                }
            }
            out.alpha0 = alpha0;
        } else {
            out.proof_case = AltCase::C2;
        }
    }

    const double threshold = 2.0 * C * normT / out.eps;
    auto margin_at = [&](double aa) { return phi::not_too_constant_margin(p, aa, pol); };

    if (out.proof_case == AltCase::C3) {
        double need = std::max(muR / *out.alpha0, 2.0 * normT / out.eps);
        std::uint64_t N = 2;
        while (static_cast<double>(N) <= need) N *= 2;
        out.N = N;
    } else {
        std::uint64_t N = 2;
        bool ok = false;
        while (N <= (std::uint64_t(1) << 62)) {
            double aa = static_cast<double>(N) * (1.0 - out.theta);
            if (aa > 1.0 && margin_at(aa) > threshold * (1.0 + 1e-9)) {
                ok = true;
                break;
            }
            N *= 2;
        }
        if (!ok)
            throw std::runtime_error(
                "alt_witness_params: the dilation margin never clears the threshold within the "
                "N cap");
        out.N = N;
    }

    out.gamma = 1.0;
    if (out.proof_case == AltCase::C2) {
        double alpha = muR / static_cast<double>(out.N);
        double qa = qratio(alpha);
        for (int i = 1; i <= 60; ++i) {
            double beta = alpha * std::ldexp(1.0, -i);
            if (qratio(beta) > qa * (1.0 + 1e3 * pol.tol_rel)) {
                out.beta0 = beta;
                out.gamma = alpha / beta;  // beta0 = muR / (gamma N)
                break;
            }
        }
        if (!out.beta0)
            throw std::runtime_error("alt_witness_params: no strict ratio increase found below "
                                     "muR/N");
    }

    double Nd = static_cast<double>(out.N);
    out.a = std::min(std::isinf(muR) ? 1.0 : muR, 1.0) /
            (out.gamma * Nd * Nd * (1.0 - out.theta));
    out.M = static_cast<std::uint64_t>(m_centers) * out.N;

    // plug-back verification of every selected inequality
    auto check = [&out](bool ok, const std::string& what) {
        out.checks.push_back((ok ? "ok: " : "FAILED: ") + what);
        if (!ok) out.all_verified = false;
    };
    out.all_verified = true;
    check(out.r + 2 * out.eps < lambda, "r + 2 eps < lambda");
    if (which == NormCase::m_phi) {
        auto h = [&](double t) { return phi::eval(p, t) / phi::eval(p, out.theta * t); };
        double sup = num::sup_refined(h, 0.0, std::isinf(p.L) ? pol.horizon : p.L,
                                      phi::monotone_knots(p), pol)
                         .value;
        check(sup <= 1.0 + out.eps / out.r, "sup phi(t)/phi(theta t) <= 1 + eps/r");
    }
    if (out.proof_case == AltCase::C3) {
        check(muR / Nd < *out.alpha0, "muR/N < alpha0");
        check(Nd > 2.0 * normT / out.eps, "N > 2 ||T|| / eps");
    } else {
        double aa = Nd * (1.0 - out.theta);
        check(margin_at(aa) > threshold, "inf phi(N(1-theta)t)/phi(t) > 2C||T||/eps");
    }
    if (out.proof_case == AltCase::C2)
        check(qratio(*out.beta0) > qratio(muR / Nd), "majorant ratio strictly larger at beta0");
    check(out.a <= std::min(std::isinf(muR) ? 1.0 : muR, 1.0) / (Nd * (1.0 - out.theta)) *
                       (1.0 + 1e-12),
          "a <= min(muR,1)/(N(1-theta))");
    check(out.gamma >= 1.0, "gamma >= 1");
    return out;
}

Verdict linf_lower_certificate(const LinfCertificate& cert) {
    Verdict v;
    v.bound = to_double(cert.r);
    auto fail = [&v](const std::string& cond) {
        v.pass = false;
        v.failed_condition = cond;
        return v;
    };
    if (cert.members.size() < 2) return fail("family must contain at least two members");
    try {
        stepfn::disjoint_sum(cert.members);
    } catch (const std::exception& e) {
        return fail(std::string("supports are not pairwise disjoint: ") + e.what());
    }
    if (!(cert.pairwise_x_bound <= 1.0 + 1e-12))
        return fail("pairwise X-distance attestation exceeds 1");
    for (std::size_t i = 0; i < cert.members.size(); ++i)
        if (!(cert.members[i].sup_norm() > cert.r))  // strict
            return fail("member " + std::to_string(i) +
                        " has essential supremum not exceeding r");
    v.pass = true;
    return v;
}

std::uint64_t ell_for_centers(int m) {
    if (m < 1 || m > 62) throw std::invalid_argument("ell_for_centers: m out of range");
    return std::uint64_t(1) << m;
}

double separation_lower_bound(const std::vector<StepFunction>& points, const PhiSpec& p,
                              NormCase which, const NumericPolicy& pol) {
    if (points.size() < 2)
        throw std::invalid_argument("separation_lower_bound: need at least two points");
    double dmin = kInf;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            dmin = std::min(dmin, norms::distance(points[i], points[j], p, which, pol));
    return dmin / (2.0 * norms::quasinorm_constant(p, which, pol));
}

double covering_radius_restricted(const std::vector<std::vector<double>>& dist, int k) {
    const int n = static_cast<int>(dist.size());
    if (k < 1 || k > n) throw std::invalid_argument("covering_radius_restricted: bad k");
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    double best = kInf;
    while (true) {
        double radius = 0.0;
        for (int i = 0; i < n; ++i) {
            double nearest = kInf;
            for (int c : pick) nearest = std::min(nearest, dist[i][c]);
            radius = std::max(radius, nearest);
        }
        best = std::min(best, radius);
        int pos = k - 1;
        while (pos >= 0 && pick[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
    return best;
}

}  // namespace marclab::noncompact
