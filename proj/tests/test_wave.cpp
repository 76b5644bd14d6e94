#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "turinglab/errors.hpp"
#include "turinglab/reduced.hpp"

using namespace turinglab;
using fixtures::setup;

TEST_CASE("converged waves are real, phase-fixed and small in residual") {
  for (const std::string name : fixtures::kSupercritical) {
    const WaveProfile p = fixtures::wave(name, 0.03, 0.1);
    const CriticalData& crit = setup(name).crit;
    CHECK_MESSAGE(p.residual <= 1e-10, name);
    for (int eta = 0; eta <= p.M; ++eta) {
      CHECK((p.mode(-eta) - p.mode(eta).conjugate()).norm() == 0.0);
    }
    const cplx anchor = pair(crit.ell, p.mode(1));
    CHECK_MESSAGE(std::abs(anchor.imag()) <= 1e-14, name);
    CHECK_MESSAGE(anchor.real() > 0.0, name);
    CHECK(p.alpha_measured == doctest::Approx(2.0 * anchor.real() / p.eps));
  }
}

TEST_CASE("amplitude and frequency laws hold to leading order") {
  for (const std::string name : fixtures::kSupercritical) {
    const fixtures::Setup& s = setup(name);
    const double kappa = 0.1;
    double err[2];
    double freq[2];
    int i = 0;
    for (double eps : {0.02, 0.01}) {
      const WaveProfile p = fixtures::wave(name, eps, kappa);
      err[i] = std::abs(p.alpha_measured - s.cgl.alpha(kappa)) / s.cgl.alpha(kappa);
      const double guess = s.crit.lambda.imag() + eps * kappa * s.crit.d_lambda_dk.imag() -
                           eps * eps * s.cgl.omega(kappa);
      freq[i] = std::abs(p.lab_omega() - guess);
      ++i;
    }
    // amplitude error O(eps), frequency error O(eps^3)
    CHECK_MESSAGE(err[1] <= 0.75 * err[0] + 1e-9, name);
    CHECK_MESSAGE(freq[1] <= 0.25 * freq[0] + 1e-12, name);
    CHECK_MESSAGE(err[1] < 0.05, name);
  }
}

TEST_CASE("Swift-Hohenberg waves are standing and even") {
  const WaveProfile p = fixtures::wave("swift-hohenberg", 0.05, 0.1);
  CHECK(std::abs(p.Omega) < 1e-12);
  for (int eta = 0; eta <= p.M; ++eta) CHECK(std::abs(p.mode(eta)(0).imag()) < 1e-14);
  // only odd harmonics for a cubic nonlinearity
  CHECK(p.mode(2).norm() < 1e-14);
  CHECK(p.mode(3).norm() > 1e-8);
}

TEST_CASE("second-order modes converge") {
  // at kappa = 0 the defect of a reflection-symmetric model is even in eps,
  // so the strict halving law holds with room to spare
  SUBCASE("band centre, strict halving") {
    for (const std::string name : {"brusselator", "hadamard-diffusive"}) {
      const fixtures::Setup& s = setup(name);
      const SecondOrderModes big =
          second_order_modes(s.model, s.crit, s.cgl, fixtures::wave(name, 0.04, 0.0));
      const SecondOrderModes small =
          second_order_modes(s.model, s.crit, s.cgl, fixtures::wave(name, 0.02, 0.0));
      CHECK_MESSAGE(first_order_check("m2", 0.04, big.err2, 0.02, small.err2).pass, name);
      if (s.crit.r.size() && big.m0.norm() > 0.0) {
        CHECK_MESSAGE(first_order_check("m0", 0.04, big.err0, 0.02, small.err0).pass, name);
      }
    }
  }
  // off centre the defect is first order; the eps^2 term may have either sign
  SUBCASE("off centre, first order") {
    for (const std::string name : {"brusselator", "hadamard-burgers", "keller-segel"}) {
      const fixtures::Setup& s = setup(name);
      double e0[2], e2[2];
      int i = 0;
      for (double eps : {0.02, 0.01}) {
        const SecondOrderModes m =
            second_order_modes(s.model, s.crit, s.cgl, fixtures::wave(name, eps, 0.1));
        e0[i] = m.err0;
        e2[i] = m.err2;
        ++i;
      }
      CHECK_MESSAGE(e0[1] <= 0.6 * e0[0], name);
      CHECK_MESSAGE(e2[1] <= 0.6 * e2[0], name);
    }
  }
}

TEST_CASE("hadamard-diffusive second-order modes in closed form") {
  const fixtures::Setup& s = setup("hadamard-diffusive");
  const WaveProfile p = fixtures::wave("hadamard-diffusive", 0.02, 0.1);
  const SecondOrderModes m = second_order_modes(s.model, s.crit, s.cgl, p);
  CHECK(m.m0.norm() < 1e-14);
  // m2 = k_*^2 alpha^2 [S(2 k_*, 0)]^{-1} (r o r)
  const double k = s.crit.k_star;
  const CVec expected = k * k * s.cgl.alpha_sq(0.1) *
                        (eval_symbol(s.model, 2 * k, 0.0).inverse() *
                         s.crit.r.cwiseProduct(s.crit.r));
  CHECK((m.m2 - expected).norm() <= 1e-12 * expected.norm());
}

TEST_CASE("critical frame only relabels Omega") {
  const fixtures::Setup& s = setup("hadamard-burgers");
  WaveOptions o;
  o.frame = Frame::critical;
  const WaveProfile moving = solve_wave(s.model, s.crit, s.cgl, 0.03, 0.1, o);
  const WaveProfile lab = fixtures::wave("hadamard-burgers", 0.03, 0.1);
  CHECK(moving.frame_shift == doctest::Approx(moving.k * s.crit.d_star));
  CHECK(moving.lab_omega() == doctest::Approx(lab.lab_omega()).epsilon(1e-12));
  CHECK((moving.stacked() - lab.stacked()).norm() < 1e-12);
}

TEST_CASE("translation mode is i eta U(eta)") {
  const WaveProfile p = fixtures::wave("brusselator", 0.03, 0.0);
  const CVec t = p.translation_mode();
  for (int eta = -p.M; eta <= p.M; ++eta) {
    CHECK((t.segment((eta + p.M) * p.n, p.n) - (I * double(eta)) * p.mode(eta)).norm() < 1e-15);
  }
}

TEST_CASE("truncation: more modes change nothing visible") {
  const WaveProfile a = fixtures::wave("hadamard-burgers", 0.04, 0.1, 16);
  const WaveProfile b = fixtures::wave("hadamard-burgers", 0.04, 0.1, 24);
  CHECK(b.Omega == doctest::Approx(a.Omega).epsilon(1e-10));
  for (int eta = 0; eta <= 8; ++eta) CHECK((a.mode(eta) - b.mode(eta)).norm() < 1e-12);
}

TEST_CASE("residual is zero at eps = 0 and the guess is close") {
  const fixtures::Setup& s = setup("swift-hohenberg");
  WaveOptions o;
  const WaveProfile g = wave_guess(s.model, s.crit, s.cgl, 0.02, 0.1, o);
  const WaveProfile p = fixtures::wave("swift-hohenberg", 0.02, 0.1);
  CHECK(residual_norm(wave_residual(s.model, g)) < 1e-4);
  CHECK(residual_norm(wave_residual(s.model, p)) < 1e-12);
  const WaveProfile flat = solve_wave(s.model, s.crit, s.cgl, 0.0, 0.0, o);
  CHECK(flat.residual == 0.0);
}

TEST_CASE("wave preconditions") {
  const fixtures::Setup& s = setup("swift-hohenberg");
  WaveOptions o;
  o.M = 4;
  CHECK_THROWS_AS(solve_wave(s.model, s.crit, s.cgl, 0.02, 0.0, o), PreconditionError);
  CHECK_THROWS_AS(solve_wave(s.model, s.crit, s.cgl, 0.2, 0.0), PreconditionError);
  CHECK_THROWS_AS(solve_wave(s.model, s.crit, s.cgl, 0.02, 0.49), PreconditionError);
  CHECK_THROWS_AS(solve_wave(s.model, s.crit, s.cgl, -0.01, 0.0), PreconditionError);
}
