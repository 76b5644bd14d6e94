#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "fixtures.hpp"
#include "turinglab/errors.hpp"
#include "turinglab/reduced.hpp"

using namespace turinglab;
using fixtures::setup;

TEST_CASE("realification represents complex multiplication") {
  const cplx z(0.3, -1.7);
  const Mat2c m = realified(z);
  const Eigen::Vector2cd v(0.4, -2.0);  // 0.4 - 2i as (re, im)
  const cplx prod = z * cplx(0.4, -2.0);
  const Eigen::Vector2cd out = m * v;
  CHECK(out(0).real() == doctest::Approx(prod.real()));
  CHECK(out(1).real() == doctest::Approx(prod.imag()));
  const Eigen::Vector2cd ev = Eigen::ComplexEigenSolver<Mat2c>(m).eigenvalues();
  const bool order = std::abs(ev(0) - z) < std::abs(ev(0) - std::conj(z));
  CHECK(std::abs(ev(order ? 0 : 1) - z) < 1e-14);
  CHECK(std::abs(ev(order ? 1 : 0) - std::conj(z)) < 1e-14);
}

TEST_CASE("reduced matrix at sigma = 0") {
  const fixtures::Setup& s = setup("hadamard-burgers");
  const double eps = 0.03;
  const double kappa = 0.12;
  for (ReducedConvention c : {ReducedConvention::lemma, ReducedConvention::display}) {
    const ReducedPrediction r = reduced_prediction(s.cgl, s.crit, eps, kappa, c);
    const SidebandEigenvalues e = r.eigenvalues(0.0);
    const double l1 = 2 * eps * eps * s.cgl.alpha_sq(kappa) * s.cgl.c.real();
    CHECK(std::abs(e.lambda1 - l1) <= 1e-15);
    CHECK(std::abs(e.lambda2) <= 1e-15);
    CHECK(r.lambda1_0.real() == doctest::Approx(l1));
  }
  CHECK(coefficient(ReducedConvention::lemma) == -1.0);
  CHECK(coefficient(ReducedConvention::display) == 2.0);
}

TEST_CASE("zero-eigenvalue expansion matches the eigensolve") {
  for (const std::string name : {"swift-hohenberg", "hadamard-burgers", "keller-segel"}) {
    const fixtures::Setup& s = setup(name);
    const ReducedPrediction r =
        reduced_prediction(s.cgl, s.crit, 0.04, 0.15, ReducedConvention::lemma);
    CHECK_MESSAGE(std::abs(r.C1 - r.C1_closed) <= 1e-12 * std::max(1.0, std::abs(r.C1)), name);
    double err[2];
    int i = 0;
    for (double sigma : {2e-4, 1e-4}) {
      err[i++] = std::abs(r.Lambda(sigma) - (r.C1 * sigma + r.C2 * sigma * sigma));
    }
    // remainder is cubic in sigma
    CHECK_MESSAGE(err[1] <= 0.2 * err[0] + 1e-18, name);
  }
}

TEST_CASE("lemma convention reproduces the cGL sideband series") {
  // the lemma matrix is the cGL sideband matrix in rescaled variables
  for (const std::string name : fixtures::kSupercritical) {
    const fixtures::Setup& s = setup(name);
    const double eps = 0.03;
    const double kappa = 0.1;
    const ReducedPrediction r = reduced_prediction(s.cgl, s.crit, eps, kappa,
                                                   ReducedConvention::lemma);
    const SidebandSeries series = cgl_sideband_series(s.cgl, kappa);
    const double scale = s.crit.k_star / eps;  // tau = eps^2 t, sigma_cgl = k_* sigma / eps
    CHECK_MESSAGE(std::abs(r.C2 - eps * eps * series.quadratic * scale * scale) <=
                      1e-9 * std::abs(r.C2),
                  name);
    CHECK_MESSAGE(std::abs(r.lambda1_0 - eps * eps * series.lambda1_0) <= 1e-12, name);
  }
}

TEST_CASE("the Eckhaus crossing is reproduced by the real reduced model") {
  const fixtures::Setup& s = setup("swift-hohenberg");
  const double kS = std::sqrt(s.cgl.kappaS_sq);
  const ReducedPrediction inside =
      reduced_prediction(s.cgl, s.crit, 0.02, 0.9 * kS, ReducedConvention::lemma);
  const ReducedPrediction outside =
      reduced_prediction(s.cgl, s.crit, 0.02, 1.1 * kS, ReducedConvention::lemma);
  CHECK(inside.C2.real() < 0.0);
  CHECK(outside.C2.real() > 0.0);
  CHECK(inside.C1 == cplx(0.0, 0.0));
  CHECK_THROWS_AS(reduced_prediction(s.cgl, s.crit, 0.0, 0.1, ReducedConvention::lemma),
                  PreconditionError);
  CHECK_THROWS_AS(reduced_prediction(s.cgl, s.crit, 0.02, 0.6, ReducedConvention::lemma),
                  PreconditionError);
}

TEST_CASE("first-order scaling check") {
  CHECK(first_order_check("x", 0.04, 0.1, 0.02, 0.05).pass);
  CHECK_FALSE(first_order_check("x", 0.04, 0.1, 0.02, 0.051).pass);
  CHECK(first_order_check("x", 0.04, 0.1, 0.02, 0.07, 1.5).pass);
  CHECK(first_order_check("x", 0.04, 1e-12, 0.02, 1e-10).pass);  // below the floor
  const ScalingCheck c = first_order_check("x", 0.04, 0.2, 0.02, 0.05);
  CHECK(c.K == doctest::Approx(5.0));
}

namespace {

AgreementReport fake(double eps, double l1, double d1_lemma, double d1_display, double d2_lemma,
                     double d2_display) {
  AgreementReport r;
  r.eps = eps;
  r.lambda1_defect = l1;
  ConventionAgreement a;
  a.convention = ReducedConvention::lemma;
  a.c1_defect = d1_lemma;
  a.c2_defect = d2_lemma;
  ConventionAgreement b;
  b.convention = ReducedConvention::display;
  b.c1_defect = d1_display;
  b.c2_defect = d2_display;
  r.conventions = {a, b};
  return r;
}

}  // namespace

TEST_CASE("agreement study picks the passing convention") {
  const AgreementReport big = fake(0.04, 0.01, 0.2, 0.2, 0.03, 2.9);
  const AgreementReport small = fake(0.02, 0.005, 0.15, 0.09, 0.015, 2.9);
  const auto checks = agreement_study(small, big, 1.0);  // order does not matter
  REQUIRE(checks.size() == 3);
  CHECK(checks[0].name == "lambda1(0)");
  CHECK(checks[0].pass);
  CHECK(checks[1].name == "Im c1 [display]");
  CHECK(checks[1].pass);
  CHECK(checks[2].name == "Re c2 [lemma]");
  CHECK(checks[2].pass);
  const auto fail = agreement_study(big, fake(0.02, 0.008, 0.15, 0.15, 0.02, 2.9), 1.0);
  CHECK_FALSE(fail[0].pass);
  CHECK_FALSE(fail[1].pass);
  CHECK(fail[1].name == "Im c1 [lemma]");
  CHECK_FALSE(fail[2].pass);
}

TEST_CASE("Swift-Hohenberg agreement at two amplitudes") {
  const fixtures::Setup& s = setup("swift-hohenberg");
  std::vector<AgreementReport> reps;
  for (double eps : {0.04, 0.02}) {
    const WaveProfile p = fixtures::wave("swift-hohenberg", eps, 0.15);
    SweepOptions o;
    o.delta = 0.5 * s.crit.spectral_gap;
    const SpectralCurves c = bloch_sweep(s.model, s.crit, p, sweep_grid(eps, o), o);
    reps.push_back(verify_agreement(fit_expansion(c, eps), s.cgl, s.crit, eps, 0.15));
  }
  for (const ScalingCheck& c : agreement_study(reps[0], reps[1], 1.0)) {
    CHECK_MESSAGE(c.pass, c.name);
  }
  CHECK(reps[1].of(ReducedConvention::lemma).c2_defect < 0.03);
  CHECK(reps[1].of(ReducedConvention::display).c2_defect > 1.0);
}
