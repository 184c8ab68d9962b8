// Acceptance suite: one verdict line per criterion, exit code counts the
// failures. The CLI binary path is taken from argv[1] (used by the
// determinism criterion).

#include "marclab/json_io.hpp"
#include "testutil.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace marclab;
using phi::NormCase;
using phi::PhiSpec;
using stepfn::Interval;
using stepfn::StepFunction;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("criterion %2d [%s]: %s%s\n", idx, name.c_str(), pass ? "PASS" : "FAIL",
                detail.empty() ? "" : ("  (" + detail + ")").c_str());
    if (!pass) ++g_failures;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// 1: disjointly supported unit families keep the plain norm bounded while
//    the defect grows linearly
void criterion1() {
    auto sq = PhiSpec::power_log(0.5, 0, 1);
    bool ok = true;
    std::string detail;
    double prev_defect = 0.0;
    for (int m = 2; m <= 12; ++m) {
        auto fam = superadd::gen_counterexample_m(sq, m, 1.0);
        for (const auto& f : fam.members) {
            double n = norms::norm_m_phi(f, sq).value;
            if (std::fabs(n - 1.0) > 1e-9) {
                ok = false;
                detail = "member norm " + std::to_string(n) + " at m=" + std::to_string(m);
            }
        }
        double sum_norm = norms::norm_m_phi(fam.sum, sq).value;
        if (sum_norm > std::sqrt(2.0) + 1e-9) {
            ok = false;
            detail = "sum norm " + std::to_string(sum_norm);
        }
        double defect = superadd::superadditivity_defect(fam, sq, 1.0).defect;
        if (defect < m / std::sqrt(2.0) - 1e-6 || defect <= prev_defect) {
            ok = false;
            detail = "defect " + std::to_string(defect) + " at m=" + std::to_string(m);
        }
        prev_defect = defect;
    }
    report(1, "plain-norm family reproduction", ok, detail);
}

// 2: the running-average variant calibrates to one with sum norm at most
//    four, and refuses the identity weight
void criterion2() {
    auto sq = PhiSpec::power_log(0.5, 0, 1);
    bool ok = true;
    std::string detail;
    for (int m = 2; m <= 12; ++m) {
        auto fam = superadd::gen_counterexample_M(sq, m);
        for (const auto& f : fam.members) {
            double n = norms::norm_M_phi(f, sq).value;
            if (std::fabs(n - 1.0) > 1e-9) {
                ok = false;
                detail = "member norm " + std::to_string(n);
            }
        }
        double sum_norm = norms::norm_M_phi(fam.sum, sq).value;
        if (sum_norm > 4.0 + 1e-9) {
            ok = false;
            detail = "sum norm " + std::to_string(sum_norm);
        }
    }
    bool refused = false;
    try {
        superadd::gen_counterexample_M(PhiSpec::power_log(1, 0, 1), 3);
    } catch (const std::invalid_argument& e) {
        refused = std::string(e.what()).find("positive and finite") != std::string::npos;
    }
    if (!refused) {
        ok = false;
        detail = "identity weight was not refused with the limit diagnosis";
    }
    report(2, "running-average family reproduction", ok, detail);
}

// 3: majorant norm identities across the admissible catalogue
void criterion3() {
    std::uint64_t rng = 0xC3;
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        auto p = testutil::random_phi(rng);
        auto f = testutil::random_stepfn(rng);
        auto rep = norms::verify_majorant_identities(f, p);
        if (std::fabs(rep.M_phi - rep.M_majorant) > 1e-6 * rep.M_majorant) {
            ok = false;
            detail = "M identity off at trial " + std::to_string(trial);
        }
        if (rep.m_sandwich_checked) {
            if (!(rep.C_phi * rep.m_majorant <= rep.m_phi) ||
                !(rep.m_phi <= rep.m_majorant * (1 + 1e-6))) {
                ok = false;
                detail = "m sandwich off at trial " + std::to_string(trial);
            }
        }
    }
    report(3, "majorant norm identities", ok, detail);
}

// 4: rearrangement inequality suite on random pairs and disjoint families
void criterion4() {
    std::uint64_t rng = 0xC4;
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        auto f = testutil::random_stepfn(rng);
        auto g = testutil::random_stepfn(rng);
        std::vector<Rat> ts;
        for (int i = 0; i < 50; ++i)
            ts.push_back(Rat(testutil::uniform_int(rng, 1, 400), 256));
        auto rep = stepfn::verify_rearrangement_inequalities(f, g, ts);
        if (rep.failures != 0) {
            ok = false;
            detail = rep.notes.front();
        }
    }
    for (int N : {2, 3, 5}) {
        std::vector<StepFunction> fs;
        for (int j = 0; j < N; ++j) {
            auto base = testutil::random_stepfn(rng, 1.0, 2);
            // translate onto the slot [j/N, (j+1)/N)
            std::vector<stepfn::Piece> ps;
            Rat offset(j, N);
            for (const auto& pc : base.pieces()) {
                Interval at{offset + pc.at->lo / N, offset + pc.at->hi / N};
                ps.push_back({pc.value, at.length(), at});
            }
            fs.emplace_back(std::move(ps), 1.0);
        }
        std::vector<Rat> ts;
        for (int i = 1; i <= 50; ++i) ts.push_back(Rat(i, 100));
        auto rep = stepfn::verify_disjoint_lower_bound(fs, ts);
        if (rep.failures != 0) {
            ok = false;
            detail = "disjoint bound failed for N=" + std::to_string(N);
        }
    }
    report(4, "rearrangement inequality suite", ok, detail);
}

// 5: exhaustive-subset oracles agree exactly with the direct algorithms
void criterion5() {
    std::uint64_t rng = 0xC5;
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        int n = testutil::uniform_int(rng, 1, 12);
        Rat w(1, testutil::uniform_int(rng, 1, 12));
        std::vector<Rat> vals;
        std::vector<stepfn::Piece> ps;
        Rat cursor = 0;
        for (int i = 0; i < n; ++i) {
            Rat v(testutil::uniform_int(rng, -12, 12), testutil::uniform_int(rng, 1, 6));
            vals.push_back(v);
            ps.push_back({v, w, Interval{cursor, cursor + w}});
            cursor += w;
        }
        StepFunction f(std::move(ps), to_double(cursor) + 1.0);
        auto prof = stepfn::rearrangement(f);
        auto maxi = stepfn::maximal_rearrangement(f);
        for (int t = 1; t <= n; ++t) {
            auto oracle = stepfn::fstar_alt_oracle(vals, w, t);
            Rat tw = w * t;
            if (oracle.essinf_sup != prof.left_limit_rat(tw) ||
                oracle.integral_sup != maxi.eval_rat(tw) * tw) {
                ok = false;
                detail = "mismatch at trial " + std::to_string(trial) + " t=" + std::to_string(t);
            }
        }
    }
    report(5, "exhaustive subset oracles", ok, detail);
}

// 6: packing invariants, exactly, across dimensions and measures
void criterion6() {
    std::uint64_t rng = 0xC6;
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 3 && ok; ++n) {
        noncompact::Cube Q{std::vector<Rat>(n, Rat(1, 2)), Rat(1)};
        noncompact::PiVol b0 = noncompact::unit_ball_volume(n);
        b0.coef /= rat_pow(Rat(2), n);
        int done = 0;
        while (done < 50) {
            Rat t1(1 + static_cast<long long>(testutil::mix(rng) % (1 << 20)),
                   static_cast<long long>(1) << 21);
            if (noncompact::pivol_compare({t1, 0}, b0) >= 0) continue;
            ++done;
            auto p = noncompact::build_packing(n, Q, t1);
            auto rep = noncompact::verify_packing(p);
            if (!rep.ok || p.count != (std::uint64_t(1) << (n * p.level))) {
                ok = false;
                detail = "n=" + std::to_string(n) + ": " +
                         (rep.failures.empty() ? "count mismatch" : rep.failures.front());
                break;
            }
        }
    }
    report(6, "packing exactness", ok, detail);
}

// 7: the general lower-bound certificate passes, and each single-condition
//    mutation fails with the right label
void criterion7() {
    auto sq = PhiSpec::power_log(0.5, 0, 1);
    bool ok = true;
    std::string detail;
    auto make_cert = [&sq](NormCase which) {
        noncompact::GeneralLowerCertificate cert;
        cert.which = which;
        cert.phi = sq;
        cert.tau = 0.5;
        cert.muS = 1.0;
        cert.t0 = 0.125;
        cert.r = 1.0;
        cert.normT = 1.0;
        cert.generator = noncompact::make_identity_packing_generator(
            sq, Interval{Rat(0), Rat(1)}, which, which == NormCase::m_phi ? 0.125 : kInf);
        return cert;
    };
    std::vector<double> eps{0.5, 0.1, 0.01};
    for (auto which : {NormCase::m_phi, NormCase::M_phi}) {
        auto v = noncompact::verify_general_lower_certificate(make_cert(which), 8, eps);
        if (!v.pass) {
            ok = false;
            detail = "base certificate failed: " + v.failed_condition;
        }
    }

    auto expect_fail = [&](const char* label, noncompact::GeneralLowerCertificate cert) {
        auto v = noncompact::verify_general_lower_certificate(cert, 8, eps);
        if (v.pass || v.failed_condition.find(label) != 0) {
            ok = false;
            detail = std::string("mutation for ") + label + " reported '" + v.failed_condition +
                     "'";
        }
    };

    {
        auto cert = make_cert(NormCase::m_phi);
        auto inner = cert.generator;
        cert.generator = [inner](double s, double e) {
            auto fam = inner(s, e);
            fam.records.front().x_norm_attested = 1.1;
            return fam;
        };
        expect_fail("(i)", std::move(cert));
    }
    {
        auto cert = make_cert(NormCase::m_phi);
        auto inner = cert.generator;
        cert.generator = [inner](double s, double e) {
            auto fam = inner(s, e);
            if (fam.compact) {
                fam.compact->family_size /= 2;
                fam.compact->mass_total =
                    Rat(fam.compact->family_size) * fam.compact->piece_measure;
            } else {
                fam.records.resize((fam.records.size() + 1) / 2);
            }
            return fam;
        };
        expect_fail("(ii)", std::move(cert));
    }
    {
        auto cert = make_cert(NormCase::m_phi);
        auto inner = cert.generator;
        cert.generator = [inner](double, double e) { return inner(70.0, e); };
        expect_fail("(iii)", std::move(cert));
    }
    {
        auto cert = make_cert(NormCase::m_phi);
        cert.r = 1.5;
        cert.normT = 2.0;
        expect_fail("(iv)", std::move(cert));
    }
    report(7, "certificate soundness and mutations", ok, detail);
}

// 8: witness parameter tuples re-satisfy their defining inequalities
void criterion8() {
    std::uint64_t rng = 0xC8;
    bool ok = true;
    std::string detail;
    bool saw_c3 = false;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        PhiSpec p = trial % 5 == 4
                        ? PhiSpec::power_log(1.0 + 0.5 * testutil::uniform(rng), 0, 1)  // C3 path
                        : PhiSpec::power_log(0.3 + 0.7 * testutil::uniform(rng),
                                             -1.0 + 2.0 * testutil::uniform(rng), 1);
        NormCase which = trial % 2 == 0 ? NormCase::m_phi : NormCase::M_phi;
        if (trial % 5 == 4) which = NormCase::M_phi;
        double normT = 0.5 + testutil::uniform(rng);
        double lambda = normT * (0.3 + 0.6 * testutil::uniform(rng));
        int m = testutil::uniform_int(rng, 1, 5);
        try {
            auto w = noncompact::alt_witness_params(p, which, normT, lambda, m);
            if (!w.all_verified) {
                ok = false;
                detail = "plug-back failed at trial " + std::to_string(trial);
                for (const auto& c : w.checks)
                    if (c.rfind("FAILED", 0) == 0) detail += ": " + c;
            }
            if (w.proof_case == noncompact::AltCase::C3) {
                saw_c3 = true;
                double Nd = static_cast<double>(w.N);
                if (!(1.0 / Nd < *w.alpha0) || !(Nd > 2.0 * normT / w.eps)) {
                    ok = false;
                    detail = "pinned-rule bounds violated at trial " + std::to_string(trial);
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception at trial ") + std::to_string(trial) + ": " + e.what();
        }
    }
    if (!saw_c3) {
        ok = false;
        detail = "the constant-ratio case never triggered";
    }
    report(8, "witness parameter plug-back", ok, detail);
}

// 9: essential-supremum pigeonhole counts and certificate strictness
void criterion9() {
    bool ok = true;
    std::string detail;
    std::uint64_t expect = 2;
    for (int m = 1; m <= 20; ++m, expect *= 2)
        if (noncompact::ell_for_centers(m) != expect) {
            ok = false;
            detail = "family size wrong at m=" + std::to_string(m);
        }

    noncompact::LinfCertificate cert;
    cert.r = Rat(9, 10);
    cert.pairwise_x_bound = 1.0;
    for (int j = 0; j < 8; ++j)
        cert.members.push_back(
            StepFunction::indicator({Rat(j, 8), Rat(j, 8) + Rat(1, 16)}, Rat(19, 20), 1.0));
    if (!noncompact::linf_lower_certificate(cert).pass) {
        ok = false;
        detail = "disjoint-indicator family rejected at r=0.9";
    }
    cert.r = Rat(19, 20);  // exactly the essential supremum: strictness
    if (noncompact::linf_lower_certificate(cert).pass) {
        ok = false;
        detail = "boundary certificate accepted despite the strict inequality";
    }
    report(9, "essential-supremum pigeonhole", ok, detail);
}

// 10: repeated CLI runs with a fixed seed produce identical bytes
void criterion10(const char* cli) {
    if (!cli) {
        report(10, "command-line determinism", false, "CLI path missing (argv[1])");
        return;
    }
    bool ok = true;
    std::string detail;
    std::string bin(cli);

    std::string cert_path = "/tmp/marclab_acc_cert.json";
    {
        std::ofstream out(cert_path);
        out << R"({"which":"m_phi","phi":{"family":"power_log","alpha":0.5,"beta":0.0,"L":1.0},)"
            << R"("tau":0.5,"muS":1.0,"t0":0.125,"r":1.0,"normT":1.0,)"
            << R"("generator":{"type":"identity_packing","S":["0","1"]}})";
    }
    struct Run {
        std::string cmd, out1, out2;
    };
    std::vector<Run> runs = {
        {" superadd --phi power_log:0.5,0,1 --case M --m 2..8 --gamma 1 --csv ",
         "/tmp/marclab_acc_sweep1.csv", "/tmp/marclab_acc_sweep2.csv"},
        {" certify general --cert " + cert_path + " --kmax 3 --eps 0.5 0.1 --seed 7 --out ",
         "/tmp/marclab_acc_verdict1.json", "/tmp/marclab_acc_verdict2.json"},
    };
    for (const auto& r : runs) {
        int rc1 = std::system((bin + r.cmd + r.out1).c_str());
        int rc2 = std::system((bin + r.cmd + r.out2).c_str());
        if (rc1 != rc2 || slurp(r.out1).empty() || slurp(r.out1) != slurp(r.out2)) {
            ok = false;
            detail = "outputs diverge for:" + r.cmd;
        }
    }
    report(10, "command-line determinism", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10(argc > 1 ? argv[1] : nullptr);
    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures);
    return g_failures;
}
