#include "testutil.hpp"

#include <doctest.h>

#include <cmath>

using namespace marclab;
using norms::NormCase;
using phi::PhiSpec;
using stepfn::Interval;
using stepfn::StepFunction;

namespace {

StepFunction calibrated_indicator(const PhiSpec& p, double r, double offset = 0.0) {
    Rat rr = rat_from_double(r);
    Rat lo = rat_from_double(offset);
    Rat h = rat_from_double(1.0 / phi::eval(p, r));
    return StepFunction::indicator({lo, lo + rr}, h, p.L);
}

}  // namespace

TEST_CASE("plain norm of calibrated indicators is one") {
    auto sq = PhiSpec::power_log(0.5, 0, 1);
    for (double r : {0.5, 0.1, 0.003}) {
        auto res = norms::norm_m_phi(calibrated_indicator(sq, r), sq);
        CHECK(res.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(res.finite);
    }
}

TEST_CASE("plain norm of an indicator is phi at its measure") {
    auto sq = PhiSpec::power_log(0.5, 0, 1);
    auto f = StepFunction::indicator({Rat(0), Rat(1, 4)}, Rat(1), 1.0);
    CHECK(norms::norm_m_phi(f, sq).value == doctest::Approx(0.5).epsilon(1e-12));

    // fundamental-function calibration for continuous nondecreasing weights
    std::uint64_t rng = 4;
    int done = 0;
    while (done < 20) {
        auto p = testutil::random_phi(rng, true);
        if (!phi::classify(p).is_nondecreasing) continue;
        ++done;
        double mu = 0.05 + 0.9 * testutil::uniform(rng);
        auto chi = StepFunction::indicator({Rat(0), rat_from_double(mu)}, Rat(1), p.L);
        CHECK(norms::norm_m_phi(chi, p).value ==
              doctest::Approx(phi::eval(p, mu)).epsilon(1e-9));
    }
}

TEST_CASE("running-average norm of calibrated indicators is one for quasiconcave weights") {
    auto sq = PhiSpec::power_log(0.5, 0, 1);
    for (double r : {0.5, 0.02}) {
        auto res = norms::norm_M_phi(calibrated_indicator(sq, r), sq);
        CHECK(res.value == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("weight t collapses the running-average norm to the integral") {
    auto lin = PhiSpec::power_log(1, 0, 1);
    std::uint64_t rng = 10;
    for (int trial = 0; trial < 30; ++trial) {
        auto f = testutil::random_stepfn(rng);
        double l1 = to_double(f.l1_norm());
        CHECK(norms::norm_M_phi(f, lin).value == doctest::Approx(l1).epsilon(1e-9));
    }
}

TEST_CASE("constant weight recovers the essential supremum in both norms") {
    auto one = PhiSpec::power_log(0, 0, 1);
    std::uint64_t rng = 20;
    for (int trial = 0; trial < 20; ++trial) {
        auto f = testutil::random_stepfn(rng);
        double sup = to_double(f.sup_norm());
        CHECK(norms::norm_m_phi(f, one).value == doctest::Approx(sup).epsilon(1e-9));
        CHECK(norms::norm_M_phi(f, one).value == doctest::Approx(sup).epsilon(1e-9));
    }
}

TEST_CASE("norms against the dense-grid oracle") {
    std::uint64_t rng = 60;
    for (int trial = 0; trial < 25; ++trial) {
        auto p = testutil::random_phi(rng);
        auto f = testutil::random_stepfn(rng);
        for (auto which : {NormCase::m_phi, NormCase::M_phi}) {
            double impl = norms::norm(f, p, which).value;
            double oracle = testutil::norm_oracle(f, p, which, 20000);
            CHECK(impl >= oracle * (1 - 1e-9));
            CHECK(impl == doctest::Approx(oracle).epsilon(5e-4));
        }
    }
}

TEST_CASE("running-average norm dominates the plain norm") {
    std::uint64_t rng = 8;
    for (int trial = 0; trial < 40; ++trial) {
        auto p = testutil::random_phi(rng);
        auto f = testutil::random_stepfn(rng);
        CHECK(norms::norm_M_phi(f, p).value >= norms::norm_m_phi(f, p).value * (1 - 1e-9));
    }
}

TEST_CASE("positive homogeneity and the quasi-triangle inequality") {
    std::uint64_t rng = 16;
    for (int trial = 0; trial < 40; ++trial) {
        auto p = testutil::random_phi(rng, true);
        auto f = testutil::random_stepfn(rng);
        auto g = testutil::random_stepfn(rng);
        for (auto which : {NormCase::m_phi, NormCase::M_phi}) {
            double nf = norms::norm(f, p, which).value;
            CHECK(norms::norm(f.scaled(Rat(-5, 2)), p, which).value ==
                  doctest::Approx(2.5 * nf).epsilon(1e-9));
            double C = norms::quasinorm_constant(p, which);
            double ng = norms::norm(g, p, which).value;
            double nsum = norms::norm(stepfn::add(f, g), p, which).value;
            CHECK(nsum <= C * (nf + ng) * (1 + 1e-9));
        }
    }
}

TEST_CASE("quasinorm constants") {
    CHECK(norms::quasinorm_constant(PhiSpec::power_log(2, 0, 1), NormCase::M_phi) == 1.0);
    CHECK(norms::quasinorm_constant(PhiSpec::power_log(0.5, 0, 1), NormCase::m_phi) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    std::uint64_t rng = 3;
    for (int trial = 0; trial < 10; ++trial) {
        auto p = testutil::random_phi(rng, true);
        if (phi::classify(p).is_quasiconcave)
            CHECK(norms::quasinorm_constant(p, NormCase::m_phi) <= 2.0 + 1e-9);
    }
}

TEST_CASE("majorant identities for a quasiconcave weight are equalities") {
    auto sq = PhiSpec::power_log(0.5, 0, 1);
    std::uint64_t rng = 14;
    for (int trial = 0; trial < 10; ++trial) {
        auto f = testutil::random_stepfn(rng);
        auto rep = norms::verify_majorant_identities(f, sq);
        CHECK(rep.M_identity_ok);
        CHECK(rep.m_sandwich_checked);
        CHECK(rep.m_sandwich_ok);
        CHECK(rep.m_phi == doctest::Approx(rep.m_majorant).epsilon(1e-8));
    }
}

TEST_CASE("majorant identity for t^2 holds while the sandwich is skipped") {
    auto f2 = PhiSpec::power_log(2, 0, 1);
    std::uint64_t rng = 21;
    for (int trial = 0; trial < 10; ++trial) {
        auto f = testutil::random_stepfn(rng);
        auto rep = norms::verify_majorant_identities(f, f2);
        CHECK(rep.M_identity_ok);
        CHECK_FALSE(rep.m_sandwich_checked);
    }
}

TEST_CASE("majorant sandwich across the almost-quasiconcave catalogue") {
    std::uint64_t rng = 30;
    for (int trial = 0; trial < 60; ++trial) {
        auto p = testutil::random_phi(rng, true);
        auto f = testutil::random_stepfn(rng);
        auto rep = norms::verify_majorant_identities(f, p);
        CHECK(rep.M_identity_ok);
        CHECK(rep.m_sandwich_checked);
        CHECK(rep.m_sandwich_ok);
    }
}

TEST_CASE("majorant identities hold for tabulated weights") {
    std::uint64_t rng = 62;
    auto rising = PhiSpec::tabulated({0.2, 0.6}, {0.5, 1.5}, 1.0);
    auto bumpy = PhiSpec::tabulated({0.1, 0.3, 0.7}, {1.2, 0.8, 1.0}, 1.0);
    for (const auto& p : {rising, bumpy}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto f = testutil::random_stepfn(rng);
            auto rep = norms::verify_majorant_identities(f, p);
            CHECK(rep.M_identity_ok);
            if (rep.m_sandwich_checked) CHECK(rep.m_sandwich_ok);
        }
    }
}

TEST_CASE("infinite-domain tails terminate at the support edge") {
    auto sq = PhiSpec::power_log(0.5, 0, kInf);
    auto f = StepFunction::indicator({Rat(0), Rat(1)}, Rat(1), kInf);
    CHECK(norms::norm_m_phi(f, sq).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(norms::norm_M_phi(f, sq).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(norms::norm_M_phi(f, sq, {}, true).value == doctest::Approx(1.0).epsilon(1e-9));

    // weight t on an infinite domain: the tail of the running average is
    // constant and the norm is the full integral
    auto lin = PhiSpec::power_log(1, 0, kInf);
    auto g = StepFunction::indicator({Rat(0), Rat(1, 2)}, Rat(3), kInf);
    CHECK(norms::norm_M_phi(g, lin).value == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("an unbounded weight against a nonvanishing profile is flagged non-finite") {
    auto lg = PhiSpec::power_log(0, 1, 1);  // log(2/t), unbounded at zero
    auto f = StepFunction::indicator({Rat(0), Rat(1, 2)}, Rat(1), 1.0);
    auto res = norms::norm_m_phi(f, lg);
    CHECK_FALSE(res.finite);
    auto resM = norms::norm_M_phi(f, lg);
    CHECK_FALSE(resM.finite);
}

TEST_CASE("norm results report limit attainment descriptors") {
    // decreasing weight against an indicator: the supremum sits at zero
    auto dec = PhiSpec::tabulated({0.125, 0.5}, {2.0, 1.0}, 1.0);
    auto f = StepFunction::indicator({Rat(0), Rat(1, 2)}, Rat(1), 1.0);
    auto res = norms::norm_m_phi(f, dec);
    CHECK(res.value == doctest::Approx(2.0).epsilon(1e-9));
}
