#ifndef MARCLAB_JSON_IO_HPP
#define MARCLAB_JSON_IO_HPP

#include "marclab/noncompact.hpp"
#include "marclab/superadd.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace marclab::io {

using Json = nlohmann::ordered_json;  // stable field ordering

inline constexpr int kSchemaVersion = 1;

Json phi_to_json(const phi::PhiSpec& p);
phi::PhiSpec phi_from_json(const Json& j);

// Also accepts the compact CLI form "power_log:alpha,beta,L".
phi::PhiSpec phi_from_cli(const std::string& text);

Json stepfn_to_json(const stepfn::StepFunction& f);
stepfn::StepFunction stepfn_from_json(const Json& j);

Json profile_to_json(const stepfn::DecreasingProfile& d);
Json maximal_profile_to_json(const stepfn::MaximalProfile& m);

Json classification_to_json(const phi::PhiClassification& c);
Json norm_result_to_json(const norms::NormResult& r);
Json packing_to_json(const noncompact::Packing& p);
Json packing_report_to_json(const noncompact::PackingReport& r);
Json verdict_to_json(const noncompact::Verdict& v);
Json witness_params_to_json(const noncompact::AltWitnessParams& w);
Json defect_to_json(const superadd::DefectReport& d);

noncompact::LinfCertificate linf_certificate_from_json(const Json& j);
noncompact::AltCertificate alt_certificate_from_json(const Json& j);

// Canned general certificate with the identity packing generator.
noncompact::GeneralLowerCertificate general_certificate_from_json(const Json& j,
                                                                  const NumericPolicy& pol = {});

// CSV with a schema-version comment header; one row per sweep entry.
std::string defect_sweep_csv(const std::vector<superadd::DefectReport>& rows,
                             const std::vector<int>& ms);

// per-round condition margins of a certificate verification
std::string verdict_margins_csv(const noncompact::Verdict& v);

// Minimal static polyline chart of defect against family size.
std::string defect_sparkline_svg(const std::vector<superadd::DefectReport>& rows,
                                 const std::vector<int>& ms);

}  // namespace marclab::io

#endif
