#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "turinglab/errors.hpp"
#include "turinglab/verdict.hpp"

using namespace turinglab;
using fixtures::setup;

namespace {

StabilityVerdict verdict_of(const std::string& name, double eps, double kappa,
                            VerdictOptions o = {}, int M = 16) {
  const fixtures::Setup& s = setup(name);
  return stability_verdict(s.model, s.crit, s.cgl, fixtures::wave(name, eps, kappa, M), o);
}

}  // namespace

TEST_CASE("Swift-Hohenberg inside the Eckhaus band is diffusively stable") {
  const StabilityVerdict v = verdict_of("swift-hohenberg", 0.02, 0.2);
  CHECK(v.verdict == Verdict::diffusively_stable);
  CHECK(v.theta > 0.0);
  CHECK(v.region1.ok);
  CHECK(v.region2.ok);
  CHECK(v.region3.ok);
  CHECK_FALSE(v.in_dead_band);
  CHECK(v.zero_tol > 0.0);
}

TEST_CASE("Swift-Hohenberg outside the Eckhaus band is unstable with a witness") {
  const StabilityVerdict v = verdict_of("swift-hohenberg", 0.02, std::sqrt(0.11));
  CHECK(v.verdict == Verdict::unstable);
  CHECK(v.witness_sigma != 0.0);
  CHECK(v.witness_re > 0.0);
  CHECK(v.fit.c2.real() > 0.0);
}

TEST_CASE("the dead band around kappa_S is inconclusive") {
  const double kS = std::sqrt(setup("swift-hohenberg").cgl.kappaS_sq);
  const StabilityVerdict v = verdict_of("swift-hohenberg", 0.02, kS);
  CHECK(v.in_dead_band);
  CHECK(v.verdict == Verdict::inconclusive);
}

TEST_CASE("the verdict does not depend on the frame convention") {
  for (const std::string name : {"swift-hohenberg", "hadamard-burgers"}) {
    VerdictOptions a;
    a.sweep.convention = Convention::standard;
    VerdictOptions b;
    b.sweep.convention = Convention::modified;
    const StabilityVerdict x = verdict_of(name, 0.04, 0.1, a);
    const StabilityVerdict y = verdict_of(name, 0.04, 0.1, b);
    CHECK_MESSAGE(x.verdict == y.verdict, name);
    CHECK_MESSAGE(std::abs(x.fit.c2.real() - y.fit.c2.real()) <= 1e-6 * std::abs(x.fit.c2.real()),
                  name);
    CHECK_MESSAGE(x.theta == doctest::Approx(y.theta).epsilon(1e-6), name);
  }
}

TEST_CASE("truncation does not move the sideband curvature") {
  const StabilityVerdict v16 = verdict_of("swift-hohenberg", 0.04, 0.15, {}, 16);
  const StabilityVerdict v24 = verdict_of("swift-hohenberg", 0.04, 0.15, {}, 24);
  CHECK(v16.verdict == v24.verdict);
  CHECK(std::abs(v24.fit.c2.real() - v16.fit.c2.real()) <= 0.01 * std::abs(v16.fit.c2.real()));
}

TEST_CASE("verdict preconditions") {
  const fixtures::Setup& s = setup("swift-hohenberg");
  WaveProfile p = fixtures::wave("swift-hohenberg", 0.04, 0.1);
  p.residual = 1e-6;
  CHECK_THROWS_AS(stability_verdict(s.model, s.crit, s.cgl, p), PreconditionError);
  p.residual = 0.0;
  p.eps = 0.0;
  CHECK_THROWS_AS(stability_verdict(s.model, s.crit, s.cgl, p), PreconditionError);
  CHECK(std::string(to_string(Verdict::diffusively_stable)) == "diffusively-stable");
}
