#ifndef MARCLAB_NORMS_HPP
#define MARCLAB_NORMS_HPP

#include "marclab/phi.hpp"
#include "marclab/stepfn.hpp"

namespace marclab::norms {

using phi::NormCase;
using phi::PhiSpec;
using stepfn::StepFunction;

enum class AttainKind { at_point, limit_at_zero, limit_at_end };

struct NormResult {
    double value = 0.0;
    bool finite = true;
    double attaining_t = 0.0;
    AttainKind kind = AttainKind::at_point;
    const char* method = "exact-piece";
    double tolerance = 0.0;
};

// sup over (0, L) of phi(t) f*(t). Per piece f* is constant, so the supremum
// reduces to the supremum of phi there; with the monotonicity knots included
// this is an endpoint/knot evaluation. against_majorant swaps in the least
// quasiconcave majorant of phi.
NormResult norm_m_phi(const StepFunction& f, const PhiSpec& p, const NumericPolicy& pol = {},
                      bool against_majorant = false);

// sup over (0, L) of phi(t) f**(t), by per-piece refined supremum; the tail
// past the support is handled through the monotonicity of majorant(t)/t when
// applicable, and flagged non-finite when it genuinely diverges.
NormResult norm_M_phi(const StepFunction& f, const PhiSpec& p, const NumericPolicy& pol = {},
                      bool against_majorant = false);

NormResult norm(const StepFunction& f, const PhiSpec& p, NormCase which,
                const NumericPolicy& pol = {}, bool against_majorant = false);

double distance(const StepFunction& f, const StepFunction& g, const PhiSpec& p, NormCase which,
                const NumericPolicy& pol = {});

// Quasinorm constant of the chosen functional: 1 for the M case; for the m
// case the smaller of the grid Delta_2 constant and 2/C_phi when an
// almost-quasiconcave constant is available; +inf when phi fails Delta_2.
double quasinorm_constant(const PhiSpec& p, NormCase which, const NumericPolicy& pol = {});

struct MajorantIdentityReport {
    double M_phi = 0, M_majorant = 0, m_phi = 0, m_majorant = 0;
    bool M_identity_ok = false;
    bool m_sandwich_checked = false;
    bool m_sandwich_ok = false;
    double C_phi = 1.0;
};

// Checks that the M-norm is unchanged under the majorant and that the m-norm
// is sandwiched between C_phi and 1 times the majorant m-norm (the latter
// only when phi is almost quasiconcave).
MajorantIdentityReport verify_majorant_identities(const StepFunction& f, const PhiSpec& p,
                                                  const NumericPolicy& pol = {});

}  // namespace marclab::norms

#endif
