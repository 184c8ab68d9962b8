#include "marclab/json_io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace marclab::io {

namespace {

Json length_to_json(double L) {
    if (std::isinf(L)) return "inf";
    return L;
}

double length_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        throw std::invalid_argument("bad length value: " + j.get<std::string>());
    }
    return j.get<double>();
}

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    return rat_from_double(j.get<double>());
}

Json rat_to_json(const Rat& r) { return rat_to_string(r); }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

Json phi_to_json(const phi::PhiSpec& p) {
    Json j;
    if (p.family == phi::Family::power_log) {
        j["family"] = "power_log";
        j["alpha"] = p.alpha;
        j["beta"] = p.beta;
    } else {
        j["family"] = "tabulated";
        j["grid"] = p.grid;
        j["values"] = p.values;
    }
    j["L"] = length_to_json(p.L);
    return j;
}

phi::PhiSpec phi_from_json(const Json& j) {
    std::string fam = j.at("family").get<std::string>();
    double L = length_from_json(j.at("L"));
    if (fam == "power_log")
        return phi::PhiSpec::power_log(j.at("alpha").get<double>(), j.at("beta").get<double>(), L);
    if (fam == "tabulated")
        return phi::PhiSpec::tabulated(j.at("grid").get<std::vector<double>>(),
                                       j.at("values").get<std::vector<double>>(), L);
    throw std::invalid_argument("unknown phi family: " + fam);
}

phi::PhiSpec phi_from_cli(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad phi spec: " + text);
    std::string fam = text.substr(0, colon);
    if (fam != "power_log") throw std::invalid_argument("unsupported inline phi family: " + fam);
    std::istringstream in(text.substr(colon + 1));
    std::string tok;
    std::vector<std::string> parts;
    while (std::getline(in, tok, ',')) parts.push_back(tok);
    if (parts.size() != 3) throw std::invalid_argument("phi spec needs alpha,beta,L");
    double L = parts[2] == "inf" ? kInf : std::stod(parts[2]);
    return phi::PhiSpec::power_log(std::stod(parts[0]), std::stod(parts[1]), L);
}

Json stepfn_to_json(const stepfn::StepFunction& f) {
    Json j;
    j["pieces"] = Json::array();
    for (const auto& p : f.pieces()) {
        Json pj;
        pj["value"] = rat_to_json(p.value);
        pj["measure"] = rat_to_json(p.measure);
        if (p.at) pj["at"] = Json::array({rat_to_json(p.at->lo), rat_to_json(p.at->hi)});
        j["pieces"].push_back(pj);
    }
    j["L"] = length_to_json(f.ambient_length());
    return j;
}

stepfn::StepFunction stepfn_from_json(const Json& j) {
    std::vector<stepfn::Piece> ps;
    for (const auto& pj : j.at("pieces")) {
        stepfn::Piece p;
        p.value = rat_from_json(pj.at("value"));
        p.measure = rat_from_json(pj.at("measure"));
        if (pj.contains("at"))
            p.at = stepfn::Interval{rat_from_json(pj.at("at").at(0)),
                                    rat_from_json(pj.at("at").at(1))};
        ps.push_back(std::move(p));
    }
    return stepfn::StepFunction(std::move(ps), length_from_json(j.at("L")));
}

Json profile_to_json(const stepfn::DecreasingProfile& d) {
    Json j;
    j["breaks"] = Json::array();
    j["values"] = Json::array();
    for (const auto& b : d.breaks) j["breaks"].push_back(rat_to_json(b));
    for (const auto& v : d.values) j["values"].push_back(rat_to_json(v));
    return j;
}

Json maximal_profile_to_json(const stepfn::MaximalProfile& m) {
    Json j = profile_to_json(m.base);
    j["cumulative_integrals"] = Json::array();
    for (const auto& c : m.cums) j["cumulative_integrals"].push_back(rat_to_json(c));
    return j;
}

Json classification_to_json(const phi::PhiClassification& c) {
    Json j;
    j["is_nondecreasing"] = c.is_nondecreasing;
    j["is_quasiconcave"] = c.is_quasiconcave;
    j["is_admissible"] = c.is_admissible;
    j["inconclusive"] = c.inconclusive;
    j["delta2_constant"] = std::isfinite(c.delta2_constant) ? Json(c.delta2_constant) : Json("inf");
    j["delta2_near_zero_constant"] = std::isfinite(c.delta2_near_zero_constant)
                                         ? Json(c.delta2_near_zero_constant)
                                         : Json("inf");
    if (c.almost_quasiconcave_constant)
        j["almost_quasiconcave_constant"] = *c.almost_quasiconcave_constant;
    switch (c.limit_t_over_phi) {
        case phi::LimitClass::zero: j["limit_t_over_phi"] = "zero"; break;
        case phi::LimitClass::positive_finite: j["limit_t_over_phi"] = "positive_finite"; break;
        case phi::LimitClass::infinite: j["limit_t_over_phi"] = "infinite"; break;
    }
    return j;
}

Json norm_result_to_json(const norms::NormResult& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["value"] = r.finite ? Json(r.value) : Json("inf");
    j["finite"] = r.finite;
    switch (r.kind) {
        case norms::AttainKind::at_point: j["attaining_t"] = r.attaining_t; break;
        case norms::AttainKind::limit_at_zero: j["attaining_t"] = "t->0+"; break;
        case norms::AttainKind::limit_at_end: j["attaining_t"] = "t->L-"; break;
    }
    j["method"] = r.method;
    j["tolerance"] = r.tolerance;
    return j;
}

Json packing_to_json(const noncompact::Packing& p) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = p.n;
    Json q;
    q["center"] = Json::array();
    for (const auto& c : p.Q.center) q["center"].push_back(rat_to_json(c));
    q["side"] = rat_to_json(p.Q.side);
    j["Q"] = q;
    j["level"] = p.level;
    j["count"] = p.count;
    j["t1"] = rat_to_json(p.t1);
    j["inscribed_ball_measure"] = p.b0.approx();
    j["tau"] = p.tau.approx();
    j["centers_complete"] = p.centers_complete;
    j["centers"] = Json::array();
    for (const auto& c : p.centers) {
        Json cj = Json::array();
        for (const auto& x : c) cj.push_back(rat_to_json(x));
        j["centers"].push_back(cj);
    }
    return j;
}

Json packing_report_to_json(const noncompact::PackingReport& r) {
    Json j;
    j["ok"] = r.ok;
    j["failures"] = r.failures;
    return j;
}

Json verdict_to_json(const noncompact::Verdict& v) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["verdict"] = v.pass ? "PASS" : "FAIL";
    j["bound"] = v.bound;
    if (!v.failed_condition.empty()) j["failed_condition"] = v.failed_condition;
    j["trace"] = v.trace;
    return j;
}

Json witness_params_to_json(const noncompact::AltWitnessParams& w) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["r"] = w.r;
    j["eps"] = w.eps;
    j["theta"] = w.theta;
    j["N"] = w.N;
    j["a"] = w.a;
    j["M"] = w.M;
    switch (w.proof_case) {
        case noncompact::AltCase::C1: j["case"] = "C1"; break;
        case noncompact::AltCase::C2: j["case"] = "C2"; break;
        case noncompact::AltCase::C3: j["case"] = "C3"; break;
    }
    j["gamma"] = w.gamma;
    if (w.beta0) j["beta0"] = *w.beta0;
    if (w.alpha0) j["alpha0"] = *w.alpha0;
    j["checks"] = w.checks;
    j["all_verified"] = w.all_verified;
    return j;
}

Json defect_to_json(const superadd::DefectReport& d) {
    Json j;
    j["gamma"] = d.gamma;
    j["member_norms"] = d.member_norms;
    j["sum_norm"] = d.sum_norm;
    j["defect"] = d.defect;
    return j;
}

noncompact::LinfCertificate linf_certificate_from_json(const Json& j) {
    noncompact::LinfCertificate c;
    c.r = rat_from_json(j.at("r"));
    c.pairwise_x_bound = j.value("pairwise_x_bound", 1.0);
    for (const auto& m : j.at("members")) c.members.push_back(stepfn_from_json(m));
    return c;
}

noncompact::AltCertificate alt_certificate_from_json(const Json& j) {
    noncompact::AltCertificate c;
    c.lambda = j.at("lambda").get<double>();
    c.normT = j.at("normT").get<double>();
    c.a = j.at("a").get<double>();
    c.which = j.at("which").get<std::string>() == "M_phi" ? phi::NormCase::M_phi
                                                          : phi::NormCase::m_phi;
    c.phi = phi_from_json(j.at("phi"));
    for (const auto& m : j.at("images")) c.images.push_back(stepfn_from_json(m));
    return c;
}

noncompact::GeneralLowerCertificate general_certificate_from_json(const Json& j,
                                                                  const NumericPolicy& pol) {
    noncompact::GeneralLowerCertificate c;
    c.which = j.at("which").get<std::string>() == "M_phi" ? phi::NormCase::M_phi
                                                          : phi::NormCase::m_phi;
    c.phi = phi_from_json(j.at("phi"));
    c.tau = j.at("tau").get<double>();
    c.muS = j.at("muS").get<double>();
    if (j.contains("t0")) c.t0 = length_from_json(j.at("t0"));
    c.r = j.at("r").get<double>();
    c.normT = j.at("normT").get<double>();
    if (j.contains("C_phi")) c.C_phi = j.at("C_phi").get<double>();
    const auto& gen = j.at("generator");
    if (gen.at("type").get<std::string>() != "identity_packing")
        throw std::invalid_argument("unknown generator type");
    stepfn::Interval S{rat_from_json(gen.at("S").at(0)), rat_from_json(gen.at("S").at(1))};
    c.generator = noncompact::make_identity_packing_generator(c.phi, S, c.which, c.t0, pol);
    return c;
}

std::string verdict_margins_csv(const noncompact::Verdict& v) {
    std::ostringstream os;
    os << "# marclab csv " << kSchemaVersion << "\n";
    os << "eps,k,sigma,mass_ratio,s_slack,marc_slack\n";
    for (const auto& m : v.margins)
        os << fmt(m.eps) << ',' << m.k << ',' << fmt(m.sigma) << ',' << fmt(m.mass_ratio) << ','
           << fmt(m.s_slack) << ',' << fmt(m.marc_slack) << "\n";
    return os.str();
}

std::string defect_sweep_csv(const std::vector<superadd::DefectReport>& rows,
                             const std::vector<int>& ms) {
    std::ostringstream os;
    os << "# marclab csv " << kSchemaVersion << "\n";
    os << "m,gamma,sum_norm,defect\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        os << ms[i] << ',' << fmt(rows[i].gamma) << ',' << fmt(rows[i].sum_norm) << ','
           << fmt(rows[i].defect) << "\n";
    return os.str();
}

std::string defect_sparkline_svg(const std::vector<superadd::DefectReport>& rows,
                                 const std::vector<int>& ms) {
    const int w = 240, h = 60, pad = 4;
    double dmax = 1e-12;
    for (const auto& r : rows) dmax = std::max(dmax, r.defect);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\"><polyline fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double x = rows.size() < 2 ? pad : pad + (w - 2 * pad) * double(i) / (rows.size() - 1);
        double y = h - pad - (h - 2 * pad) * rows[i].defect / dmax;
        os << fmt(x) << ',' << fmt(y) << ' ';
    }
    os << "\"/></svg>\n";
    (void)ms;
    return os.str();
}

}  // namespace marclab::io
