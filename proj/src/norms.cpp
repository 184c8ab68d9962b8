#include "marclab/norms.hpp"

#include <algorithm>
#include <cmath>

namespace marclab::norms {

namespace {

using stepfn::DecreasingProfile;
using stepfn::MaximalProfile;

// Evaluation view over either phi itself or its least quasiconcave majorant.
struct View {
    const PhiSpec* spec;
    bool use_majorant;
    const NumericPolicy* pol;
    double at0, atL;
    std::vector<double> knots, ratio_knots;
    bool nondecreasing;  // known a priori only for the majorant

    double operator()(double t) const {
        return use_majorant ? phi::majorant(*spec, t, *pol) : phi::eval(*spec, t);
    }
    // closure evaluation: one-sided limits at 0 and L
    double closed(double t) const {
        if (t <= 0.0) return at0;
        if (t >= spec->L) return atL;
        return (*this)(t);
    }
};

View make_view(const PhiSpec& p, bool use_majorant, const NumericPolicy& pol) {
    View v{&p, use_majorant, &pol, 0, 0, {}, {}, use_majorant};
    if (use_majorant) {
        double tiny = std::isinf(p.L) ? 1e-15 : p.L * std::ldexp(1.0, -50);
        v.at0 = phi::majorant(p, tiny, pol);
        double nearL = std::isinf(p.L) ? pol.horizon : p.L * (1.0 - 1e-14);
        v.atL = phi::majorant(p, nearL, pol);
    } else {
        v.at0 = phi::limit_at_zero(p);
        v.atL = phi::limit_at_L(p);
        v.knots = phi::monotone_knots(p);
        v.ratio_knots = phi::ratio_monotone_knots(p);
    }
    return v;
}

void track(NormResult& r, double value, double t, AttainKind kind) {
    if (value > r.value) {
        r.value = value;
        r.attaining_t = t;
        r.kind = kind;
    }
}

NormResult norm_m_impl(const StepFunction& f, const View& view, const NumericPolicy& pol) {
    NormResult res;
    res.tolerance = pol.tol_rel;
    DecreasingProfile prof = stepfn::rearrangement(f);
    if (prof.values.empty()) return res;

    double a = 0.0;
    for (std::size_t k = 0; k < prof.values.size(); ++k) {
        double b = to_double(prof.breaks[k]);
        double v = to_double(prof.values[k]);
        if (a == 0.0) track(res, view.at0 * v, 0.0, AttainKind::limit_at_zero);
        track(res, view.closed(b) * v, b,
              b >= view.spec->L ? AttainKind::limit_at_end : AttainKind::at_point);
        if (!view.nondecreasing) {
            track(res, view.closed(a) * v, a, AttainKind::at_point);
            for (double kn : view.knots)
                if (kn > a && kn < b) track(res, view(kn) * v, kn, AttainKind::at_point);
        }
        a = b;
    }
    if (std::isinf(res.value)) res.finite = false;
    return res;
}

NormResult norm_M_impl(const StepFunction& f, const View& view, const NumericPolicy& pol) {
    NormResult res;
    res.method = "refined-sup";
    res.tolerance = pol.tol_rel;
    MaximalProfile m = stepfn::maximal_rearrangement(f);
    if (m.base.values.empty()) return res;
    const double L = view.spec->L;

    std::vector<double> knots = view.knots;
    knots.insert(knots.end(), view.ratio_knots.begin(), view.ratio_knots.end());

    double a = 0.0;
    for (std::size_t k = 0; k < m.base.values.size(); ++k) {
        double b = std::min(to_double(m.base.breaks[k]), L);
        double v = to_double(m.base.values[k]);
        double C = to_double(m.cums[k]);
        if (!(b > a)) break;
        auto h = [&](double t) { return view(t) * (C + v * (t - a)) / t; };
        if (a == 0.0) track(res, view.at0 * v, 0.0, AttainKind::limit_at_zero);
        else track(res, view.closed(a) * (C / a), a, AttainKind::at_point);
        track(res, view.closed(b) * (C + v * (b - a)) / b, b,
              b >= L ? AttainKind::limit_at_end : AttainKind::at_point);
        auto s = num::sup_refined(h, a, b, knots, pol);
        track(res, s.value, s.arg, AttainKind::at_point);
        a = b;
    }

    // tail past the support: f**(t) = total/t
    double T = to_double(m.base.total_measure());
    double total = to_double(m.cums.back());
    if (T < L && total > 0.0) {
        auto h = [&](double t) { return view(t) * total / t; };
        track(res, view.closed(T) * total / T, T, AttainKind::at_point);
        if (std::isinf(L)) {
            if (view.use_majorant || view.nondecreasing) {
                // majorant(t)/t is nonincreasing, the supremum sits at T
            } else {
                auto s = num::sup_refined(h, T, kInf, view.ratio_knots, pol);
                track(res, s.value, s.arg, AttainKind::at_point);
                if (h(pol.horizon) > h(pol.horizon / 2) * (1.0 + pol.tol_rel)) {
                    res.value = kInf;
                    res.finite = false;
                    res.kind = AttainKind::limit_at_end;
                }
            }
        } else {
            track(res, view.atL * total / L, L, AttainKind::limit_at_end);
            auto s = num::sup_refined(h, T, L, view.ratio_knots, pol);
            track(res, s.value, s.arg, AttainKind::at_point);
        }
    }
    if (std::isinf(res.value)) res.finite = false;
    return res;
}

}  // namespace

NormResult norm_m_phi(const StepFunction& f, const PhiSpec& p, const NumericPolicy& pol,
                      bool against_majorant) {
    return norm_m_impl(f, make_view(p, against_majorant, pol), pol);
}

NormResult norm_M_phi(const StepFunction& f, const PhiSpec& p, const NumericPolicy& pol,
                      bool against_majorant) {
    return norm_M_impl(f, make_view(p, against_majorant, pol), pol);
}

NormResult norm(const StepFunction& f, const PhiSpec& p, NormCase which, const NumericPolicy& pol,
                bool against_majorant) {
    return which == NormCase::m_phi ? norm_m_phi(f, p, pol, against_majorant)
                                    : norm_M_phi(f, p, pol, against_majorant);
}

double distance(const StepFunction& f, const StepFunction& g, const PhiSpec& p, NormCase which,
                const NumericPolicy& pol) {
    return norm(stepfn::subtract(f, g), p, which, pol).value;
}

double quasinorm_constant(const PhiSpec& p, NormCase which, const NumericPolicy& pol) {
    if (which == NormCase::M_phi) return 1.0;
    auto cls = phi::classify(p, pol);
    double c = cls.delta2_constant;
    if (cls.almost_quasiconcave_constant)
        c = std::min(c, 2.0 / *cls.almost_quasiconcave_constant);
    return c;
}

MajorantIdentityReport verify_majorant_identities(const StepFunction& f, const PhiSpec& p,
                                                  const NumericPolicy& pol) {
    MajorantIdentityReport rep;
    auto cls = phi::classify(p, pol);
    if (!cls.is_admissible)
        throw std::domain_error("verify_majorant_identities: phi is not admissible");
    const double rtol = 1e3 * pol.tol_rel;

    rep.M_phi = norm_M_phi(f, p, pol, false).value;
    rep.M_majorant = norm_M_phi(f, p, pol, true).value;
    double scale = std::max(rep.M_majorant, 1e-300);
    rep.M_identity_ok = std::fabs(rep.M_phi - rep.M_majorant) <= rtol * scale;

    if (cls.almost_quasiconcave_constant) {
        rep.m_sandwich_checked = true;
        rep.C_phi = *cls.almost_quasiconcave_constant;
        rep.m_phi = norm_m_phi(f, p, pol, false).value;
        rep.m_majorant = norm_m_phi(f, p, pol, true).value;
        rep.m_sandwich_ok = rep.C_phi * rep.m_majorant <= rep.m_phi * (1.0 + rtol) &&
                            rep.m_phi <= rep.m_majorant * (1.0 + rtol);
    }
    return rep;
}

}  // namespace marclab::norms
