// marclab: rearrangements, Marcinkiewicz quasinorms, superadditivity defect
// sweeps, and noncompactness certificate verification from the command line.
//
// Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or input
// error.

#include "marclab/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace marclab;
using io::Json;

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

NumericPolicy policy_from_env() {
    NumericPolicy pol;
    if (const char* tol = std::getenv("MARCLAB_TOL")) pol.tol_rel = std::atof(tol);
    pol.validate();
    return pol;
}

phi::NormCase parse_case(const std::string& s) {
    if (s == "m" || s == "m_phi") return phi::NormCase::m_phi;
    if (s == "M" || s == "M_phi") return phi::NormCase::M_phi;
    throw CLI::ValidationError("--which/--case must be m or M");
}

std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"marclab: Marcinkiewicz-space laboratory"};
    app.require_subcommand(1);
    NumericPolicy pol = policy_from_env();

    std::string phi_arg, f_path, out_path, cert_path, case_arg = "m";
    std::uint64_t seed = 1;

    // phi: classification and majorant evaluation
    auto* sc_phi = app.add_subcommand("phi", "classify a weight and evaluate its majorant");
    sc_phi->add_option("--phi", phi_arg, "power_log:alpha,beta,L or a JSON file")->required();
    std::vector<double> majorant_at;
    sc_phi->add_option("--majorant-at", majorant_at, "points to evaluate the majorant at");
    sc_phi->add_option("--out", out_path, "output path (default stdout)");

    // rearrange
    auto* sc_re = app.add_subcommand("rearrange", "rearrangement profiles of a step function");
    sc_re->add_option("--f", f_path, "step function JSON")->required();
    bool maximal = false;
    sc_re->add_flag("--maximal", maximal, "emit the running-average profile too");
    sc_re->add_option("--out", out_path, "output path (default stdout)");

    // norm
    auto* sc_norm = app.add_subcommand("norm", "Marcinkiewicz norm of a step function");
    sc_norm->add_option("--phi", phi_arg)->required();
    sc_norm->add_option("--f", f_path)->required();
    sc_norm->add_option("--which", case_arg, "m or M (default m)");
    sc_norm->add_option("--out", out_path);

    // superadd
    auto* sc_sup = app.add_subcommand("superadd", "superadditivity defect sweep; CSV columns: "
                                                  "m, gamma, sum_norm, defect");
    std::string m_range = "2..12", case_sup = "m";
    double gamma = 1.0, t0 = 1.0;
    std::string csv_path, svg_path, dump_path;
    sc_sup->add_option("--phi", phi_arg)->required();
    sc_sup->add_option("--case", case_sup, "m or M");
    sc_sup->add_option("--m", m_range, "family size or range lo..hi");
    sc_sup->add_option("--gamma", gamma, "defect exponent");
    sc_sup->add_option("--t0", t0, "doubling threshold for the m case");
    sc_sup->add_option("--csv", csv_path, "CSV output path");
    sc_sup->add_option("--svg", svg_path, "optional defect sparkline");
    sc_sup->add_option("--dump", dump_path, "JSON dump of the largest family");

    // pack
    auto* sc_pack = app.add_subcommand("pack", "dyadic ball packing of a cube");
    int dim = 1;
    std::vector<double> center{0.5};
    double side = 1.0;
    std::string t1_str = "1/5";
    sc_pack->add_option("--n", dim, "dimension");
    sc_pack->add_option("--center", center, "cube center coordinates");
    sc_pack->add_option("--side", side, "cube side");
    sc_pack->add_option("--t1", t1_str, "ball measure (rational like 1/5)");
    sc_pack->add_option("--out", out_path);

    // certify
    auto* sc_cert = app.add_subcommand("certify", "verify a noncompactness certificate");
    sc_cert->require_subcommand(1);
    auto* sc_gen = sc_cert->add_subcommand("general", "general lower-bound certificate");
    int kmax = 4;
    std::vector<double> eps_list{0.5, 0.1, 0.01};
    sc_gen->add_option("--cert", cert_path)->required();
    sc_gen->add_option("--kmax", kmax, "largest center count");
    sc_gen->add_option("--eps", eps_list, "epsilon grid");
    sc_gen->add_option("--seed", seed, "seed for the simulated centers");
    sc_gen->add_option("--out", out_path);
    std::string margins_path;
    sc_gen->add_option("--margins-csv", margins_path, "per-condition margin trace; columns: "
                                                      "eps, k, sigma, mass_ratio, s_slack, "
                                                      "marc_slack");
    auto* sc_alt = sc_cert->add_subcommand("alt", "equimeasurable-family certificate");
    sc_alt->add_option("--cert", cert_path)->required();
    sc_alt->add_option("--out", out_path);
    auto* sc_linf = sc_cert->add_subcommand("linf", "essential-supremum certificate");
    sc_linf->add_option("--cert", cert_path)->required();
    sc_linf->add_option("--out", out_path);

    // witness-params
    auto* sc_wp = app.add_subcommand("witness-params", "parameter tuple for the "
                                                       "equimeasurable-family bound");
    double normT = 1.0, lambda = 0.9;
    int centers_n = 3;
    sc_wp->add_option("--phi", phi_arg)->required();
    sc_wp->add_option("--case", case_arg, "m or M");
    sc_wp->add_option("--normT", normT);
    sc_wp->add_option("--lambda", lambda);
    sc_wp->add_option("--centers", centers_n);
    sc_wp->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto load_phi = [&]() {
            if (phi_arg.find(".json") != std::string::npos)
                return io::phi_from_json(load_json(phi_arg));
            return io::phi_from_cli(phi_arg);
        };

        if (*sc_phi) {
            auto p = load_phi();
            Json out;
            out["schema_version"] = io::kSchemaVersion;
            out["phi"] = io::phi_to_json(p);
            out["classification"] = io::classification_to_json(phi::classify(p, pol));
            if (!majorant_at.empty()) {
                Json m = Json::array();
                for (double t : majorant_at)
                    m.push_back(Json::array({t, phi::majorant(p, t, pol)}));
                out["majorant"] = m;
            }
            write_json(out_path, out);
            return 0;
        }

        if (*sc_re) {
            auto f = io::stepfn_from_json(load_json(f_path));
            Json out;
            out["schema_version"] = io::kSchemaVersion;
            out["profile"] = io::profile_to_json(stepfn::rearrangement(f));
            if (maximal)
                out["maximal_profile"] =
                    io::maximal_profile_to_json(stepfn::maximal_rearrangement(f));
            write_json(out_path, out);
            return 0;
        }

        if (*sc_norm) {
            auto p = load_phi();
            auto f = io::stepfn_from_json(load_json(f_path));
            auto res = norms::norm(f, p, parse_case(case_arg), pol);
            write_json(out_path, io::norm_result_to_json(res));
            return 0;
        }

        if (*sc_sup) {
            auto p = load_phi();
            auto which = parse_case(case_sup);
            auto [lo, hi] = parse_range(m_range);
            std::vector<superadd::DefectReport> rows;
            std::vector<int> ms;
            superadd::CounterexampleFamily last;
            for (int m = lo; m <= hi; ++m) {
                auto fam = which == phi::NormCase::m_phi
                               ? superadd::gen_counterexample_m(p, m, t0, pol)
                               : superadd::gen_counterexample_M(p, m, pol);
                rows.push_back(superadd::superadditivity_defect(fam, p, gamma, pol));
                ms.push_back(m);
                last = std::move(fam);
            }
            write_text(csv_path.empty() ? out_path : csv_path, io::defect_sweep_csv(rows, ms));
            if (!svg_path.empty()) write_text(svg_path, io::defect_sparkline_svg(rows, ms));
            if (!dump_path.empty()) {
                Json dump;
                dump["schema_version"] = io::kSchemaVersion;
                dump["m"] = last.m;
                dump["sum"] = io::stepfn_to_json(last.sum);
                Json members = Json::array();
                for (const auto& f : last.members) members.push_back(io::stepfn_to_json(f));
                dump["members"] = members;
                write_json(dump_path, dump);
            }
            return 0;
        }

        if (*sc_pack) {
            std::vector<Rat> c;
            for (double x : center) c.push_back(rat_from_double(x));
            noncompact::Cube Q{c, rat_from_double(side)};
            auto pk = noncompact::build_packing(dim, Q, rat_from_string(t1_str));
            auto report = noncompact::verify_packing(pk);
            Json out = io::packing_to_json(pk);
            out["verification"] = io::packing_report_to_json(report);
            write_json(out_path, out);
            return report.ok ? 0 : 1;
        }

        if (*sc_gen) {
            auto cert = io::general_certificate_from_json(load_json(cert_path), pol);
            auto v = noncompact::verify_general_lower_certificate(cert, kmax, eps_list, pol, seed);
            write_json(out_path, io::verdict_to_json(v));
            if (!margins_path.empty()) write_text(margins_path, io::verdict_margins_csv(v));
            return v.pass ? 0 : 1;
        }
        if (*sc_alt) {
            auto cert = io::alt_certificate_from_json(load_json(cert_path));
            auto v = noncompact::alt_certificate_check(cert, pol);
            write_json(out_path, io::verdict_to_json(v));
            return v.pass ? 0 : 1;
        }
        if (*sc_linf) {
            auto cert = io::linf_certificate_from_json(load_json(cert_path));
            auto v = noncompact::linf_lower_certificate(cert);
            write_json(out_path, io::verdict_to_json(v));
            return v.pass ? 0 : 1;
        }

        if (*sc_wp) {
            auto p = load_phi();
            auto w = noncompact::alt_witness_params(p, parse_case(case_arg), normT, lambda,
                                                    centers_n, pol);
            write_json(out_path, io::witness_params_to_json(w));
            return w.all_verified ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
