#include "marclab/superadd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace marclab::superadd {

namespace {

using stepfn::Interval;
using stepfn::Piece;

CounterexampleFamily assemble(const PhiSpec& p, NormCase which, std::vector<Rat> radii) {
    CounterexampleFamily fam;
    fam.which = which;
    fam.m = static_cast<int>(radii.size());
    fam.radii = std::move(radii);

    fam.tails.assign(fam.m + 1, Rat(0));
    for (int k = fam.m - 1; k >= 0; --k) fam.tails[k] = fam.tails[k + 1] + fam.radii[k];

    // consecutive layout from the left edge
    Rat cursor = 0;
    for (int k = 0; k < fam.m; ++k) {
        Interval where{cursor, cursor + fam.radii[k]};
        Rat height = rat_from_double(1.0 / phi::eval(p, to_double(fam.radii[k])));
        fam.members.push_back(StepFunction::indicator(where, height, p.L));
        cursor = where.hi;
    }
    fam.sum = stepfn::disjoint_sum(fam.members);
    return fam;
}

}  // namespace

CounterexampleFamily gen_counterexample_m(const PhiSpec& p, int m, double t0,
                                          const NumericPolicy& pol) {
    if (m < 1) throw std::invalid_argument("gen_counterexample_m: m must be positive");
    if (!(t0 > 0)) throw std::invalid_argument("gen_counterexample_m: t0 must be positive");
    auto cls = phi::classify(p, pol);
    if (!cls.is_nondecreasing)
        throw std::invalid_argument("gen_counterexample_m: phi fails the nondecreasing check");
    if (!std::isfinite(cls.delta2_near_zero_constant))
        throw std::invalid_argument("gen_counterexample_m: phi is not doubling near zero");

    Rat r1 = rat_from_double(std::min(t0, p.L)) / 2;
    std::vector<Rat> radii;
    for (int k = 0; k < m; ++k) radii.push_back(r1 / rat_pow(Rat(2), k));
    return assemble(p, NormCase::m_phi, std::move(radii));
}

CounterexampleFamily gen_counterexample_M(const PhiSpec& p, int m, const NumericPolicy& pol) {
    if (m < 1) throw std::invalid_argument("gen_counterexample_M: m must be positive");
    auto cls = phi::classify(p, pol);
    if (!cls.is_quasiconcave)
        throw std::invalid_argument("gen_counterexample_M: phi fails the quasiconcavity check");
    if (cls.limit_t_over_phi != phi::LimitClass::zero)
        throw std::invalid_argument(
            "gen_counterexample_M: the limit of t/phi(t) at zero is positive and finite, the "
            "space is equivalent to the integral norm and the construction does not apply");

    Rat r1 = std::isinf(p.L) ? Rat(1, 4) : rat_from_double(p.L) / 4;
    std::vector<Rat> radii{r1};
    auto weight = [&p](const Rat& r) {  // r / phi(r)
        return to_double(r) / phi::eval(p, to_double(r));
    };
    for (int k = 1; k < m; ++k) {
        Rat next = radii.back() / 2;
        int guard = 200;
        // strict margin so the true rational inequality holds despite the
        // floating-point evaluation of phi
        while (weight(next) > weight(radii.back()) * 0.5 * (1.0 - 1e-9) && guard-- > 0) next /= 2;
        if (guard <= 0)
            throw std::runtime_error("gen_counterexample_M: radius search did not terminate");
        radii.push_back(next);
    }
    return assemble(p, NormCase::M_phi, std::move(radii));
}

DefectReport superadditivity_defect(const CounterexampleFamily& fam, const PhiSpec& p,
                                    double gamma, const NumericPolicy& pol) {
    if (!(gamma > 0)) throw std::invalid_argument("superadditivity_defect: gamma must be positive");
    DefectReport rep;
    rep.gamma = gamma;
    double acc = 0.0;
    for (const auto& f : fam.members) {
        double n = norms::norm(f, p, fam.which, pol).value;
        rep.member_norms.push_back(n);
        acc += std::pow(n, gamma);
    }
    rep.sum_norm = norms::norm(fam.sum, p, fam.which, pol).value;
    rep.defect = acc / std::pow(rep.sum_norm, gamma);
    return rep;
}

L1EquivalenceReport l1_equivalence_check(const PhiSpec& p, const std::vector<StepFunction>& fs,
                                         const NumericPolicy& pol) {
    auto cls = phi::classify(p, pol);
    if (cls.limit_t_over_phi != phi::LimitClass::positive_finite)
        throw std::invalid_argument(
            "l1_equivalence_check: t/phi(t) must have a positive finite limit at zero");
    L1EquivalenceReport rep;
    rep.kappa1 = kInf;
    for (const auto& f : fs) {
        double l1 = to_double(f.l1_norm());
        if (!(l1 > 0)) continue;
        double ratio = norms::norm_M_phi(f, p, pol).value / l1;
        rep.kappa1 = std::min(rep.kappa1, ratio);
        rep.kappa2 = std::max(rep.kappa2, ratio);
        ++rep.samples;
    }
    if (rep.samples == 0) rep.kappa1 = 0.0;
    return rep;
}

}  // namespace marclab::superadd
